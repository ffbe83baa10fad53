#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "edgechain/ledger/bytes.hpp"
#include "edgechain/ledger/transaction.hpp"

namespace edgechain::ledger {

struct PowProof {
  std::uint64_t nonce = 0;
  bool operator==(const PowProof&) const = default;
};

struct PosProof {
  Bytes signature;
  bool operator==(const PosProof&) const = default;
};

using ConsensusProof = std::variant<PowProof, PosProof>;

struct BlockHeader {
  std::uint64_t height = 0;
  Digest256 prev_hash;
  Digest256 tx_root;
  std::uint64_t timestamp = 0;
  Address producer;
  ConsensusProof consensus_proof = PowProof{};

  bool operator==(const BlockHeader&) const = default;
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> transactions;

  bool operator==(const Block&) const = default;
};

/// Header encoding including the consensus proof (tag 0 = PoW nonce,
/// tag 1 = length-prefixed PoS signature).
Bytes canonical_encode(const BlockHeader& header);
/// Header encoding without the consensus proof; what a PoS producer signs.
Bytes sealing_preimage(const BlockHeader& header);

Digest256 hash_block(const BlockHeader& header);

/// SHA-256 over the concatenated sealed-transaction digests, in order.
Digest256 compute_tx_root(const std::vector<Transaction>& txs);

/// All-zero header at height 0 with an empty transaction list.
Block genesis_block();

}  // namespace edgechain::ledger
