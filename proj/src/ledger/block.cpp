#include "edgechain/ledger/block.hpp"

#include "edgechain/ledger/hash.hpp"

namespace edgechain::ledger {

namespace {

Encoder encode_sealing_fields(const BlockHeader& h) {
  Encoder enc;
  enc.u64(h.height).fixed(h.prev_hash).fixed(h.tx_root).u64(h.timestamp).fixed(h.producer);
  return enc;
}

}  // namespace

Bytes sealing_preimage(const BlockHeader& header) { return encode_sealing_fields(header).bytes(); }

Bytes canonical_encode(const BlockHeader& header) {
  auto enc = encode_sealing_fields(header);
  enc.u8(static_cast<std::uint8_t>(header.consensus_proof.index()));
  if (const auto* pow = std::get_if<PowProof>(&header.consensus_proof)) {
    enc.u64(pow->nonce);
  } else {
    enc.var(std::get<PosProof>(header.consensus_proof).signature);
  }
  return std::move(enc).bytes();
}

Digest256 hash_block(const BlockHeader& header) { return sha256(canonical_encode(header)); }

Digest256 compute_tx_root(const std::vector<Transaction>& txs) {
  // An empty list maps to the zero digest so the all-zero genesis header
  // is self-consistent.
  if (txs.empty()) return Digest256{};
  Bytes concatenated;
  concatenated.reserve(txs.size() * Digest256::size());
  for (const auto& tx : txs) {
    auto d = tx_hash(tx);
    concatenated.insert(concatenated.end(), d.bytes.begin(), d.bytes.end());
  }
  return sha256(concatenated);
}

Block genesis_block() { return Block{}; }

}  // namespace edgechain::ledger
