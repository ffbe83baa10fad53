#include "edgechain/consensus/pow.hpp"

namespace edgechain::consensus {

Result<Uint512, PowError> pow_target(std::uint64_t difficulty) {
  if (difficulty == 0) return outcome::failure(PowError::DifficultyZero);
  return outcome::success(Uint512((Uint512(1) << 256) / difficulty));
}

Uint512 digest_value(const Digest256& d) {
  Uint512 v;
  boost::multiprecision::import_bits(v, d.bytes.begin(), d.bytes.end());
  return v;
}

Result<MinedSeal, PowError> pow_mine(ledger::BlockHeader header, std::uint64_t difficulty,
                                     std::uint64_t max_iterations) {
  auto target = pow_target(difficulty);
  if (!target) return outcome::failure(target.error());
  for (std::uint64_t nonce = 0; nonce < max_iterations; ++nonce) {
    header.consensus_proof = ledger::PowProof{nonce};
    auto digest = ledger::hash_block(header);
    if (digest_value(digest) < target.value()) return MinedSeal{nonce, digest};
  }
  return PowError::NoSolution;
}

bool pow_verify(const ledger::BlockHeader& header, std::uint64_t difficulty) {
  if (!std::holds_alternative<ledger::PowProof>(header.consensus_proof)) return false;
  auto target = pow_target(difficulty);
  if (!target) return false;
  return digest_value(ledger::hash_block(header)) < target.value();
}

}  // namespace edgechain::consensus
