#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "edgechain/ledger/block.hpp"
#include "edgechain/result.hpp"

namespace edgechain::ledger {

enum class ChainErrorCode { BrokenLink, BadHeight, BadTxRoot, BadProof };

struct ChainError {
  ChainErrorCode code;
  std::uint64_t height = 0;
};

std::string_view to_string(ChainErrorCode c);

/// Consensus hook: given the accepted prefix (genesis .. parent) decide
/// whether the header's consensus proof is valid.
using ProofCheck = std::function<bool(std::span<const Block> prefix, const BlockHeader& header)>;

/// Accepts every proof. Useful where only linkage is of interest.
bool accept_any_proof(std::span<const Block>, const BlockHeader&);

/// Append-only, hash-linked sequence of blocks starting at genesis.
class Chain {
 public:
  Chain();
  explicit Chain(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  std::span<const Block> blocks() const { return blocks_; }
  const Block& tip() const { return blocks_.back(); }
  Digest256 tip_hash() const { return hash_block(tip().header); }
  std::uint64_t height() const { return tip().header.height; }
  std::size_t length() const { return blocks_.size(); }

  const Block& at(std::uint64_t height) const { return blocks_.at(height); }

  bool operator==(const Chain&) const = default;

 private:
  friend Result<void, ChainError> append_block(Chain&, Block, const ProofCheck&);
  std::vector<Block> blocks_;
};

/// Checks the candidate against the tip; on success the chain grows by
/// one block, on failure it is left untouched.
Result<void, ChainError> append_block(Chain& chain, Block block, const ProofCheck& proof_ok);

/// Replays the append checks from genesis.
Result<void, ChainError> validate_chain(std::span<const Block> blocks, const ProofCheck& proof_ok);

}  // namespace edgechain::ledger
