#include "edgechain/ledger/chain.hpp"

namespace edgechain::ledger {

std::string_view to_string(ChainErrorCode c) {
  switch (c) {
    case ChainErrorCode::BrokenLink: return "BrokenLink";
    case ChainErrorCode::BadHeight: return "BadHeight";
    case ChainErrorCode::BadTxRoot: return "BadTxRoot";
    case ChainErrorCode::BadProof: return "BadProof";
  }
  return "Unknown";
}

bool accept_any_proof(std::span<const Block>, const BlockHeader&) { return true; }

Chain::Chain() : blocks_{genesis_block()} {}

namespace {

Result<void, ChainError> check_genesis(const Block& g) {
  const auto& h = g.header;
  if (h.height != 0 || h.timestamp != 0) return ChainError{ChainErrorCode::BadHeight, h.height};
  if (!h.prev_hash.is_zero()) return ChainError{ChainErrorCode::BrokenLink, 0};
  if (compute_tx_root(g.transactions) != h.tx_root) return ChainError{ChainErrorCode::BadTxRoot, 0};
  return outcome::success();
}

Result<void, ChainError> check_link(std::span<const Block> prefix, const Block& block,
                                    const ProofCheck& proof_ok) {
  const auto& parent = prefix.back().header;
  const auto& h = block.header;
  if (h.prev_hash != hash_block(parent)) return ChainError{ChainErrorCode::BrokenLink, h.height};
  if (h.height != parent.height + 1) return ChainError{ChainErrorCode::BadHeight, h.height};
  if (compute_tx_root(block.transactions) != h.tx_root) return ChainError{ChainErrorCode::BadTxRoot, h.height};
  if (!proof_ok(prefix, h)) return ChainError{ChainErrorCode::BadProof, h.height};
  return outcome::success();
}

}  // namespace

Result<void, ChainError> append_block(Chain& chain, Block block, const ProofCheck& proof_ok) {
  auto checked = check_link(chain.blocks(), block, proof_ok);
  if (!checked) return checked;
  chain.blocks_.push_back(std::move(block));
  return outcome::success();
}

Result<void, ChainError> validate_chain(std::span<const Block> blocks, const ProofCheck& proof_ok) {
  if (blocks.empty()) return ChainError{ChainErrorCode::BadHeight, 0};
  if (auto g = check_genesis(blocks.front()); !g) return g;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (auto r = check_link(blocks.first(i), blocks[i], proof_ok); !r) return r;
  }
  return outcome::success();
}

}  // namespace edgechain::ledger
