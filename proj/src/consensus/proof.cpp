#include "edgechain/consensus/proof.hpp"

#include "edgechain/consensus/pow.hpp"

namespace edgechain::consensus {

ledger::ProofCheck make_proof_check(const ConsensusConfig& config, StakeSet genesis_stakes,
                                    std::uint64_t seed, const ledger::SignatureScheme& scheme) {
  if (config.mode == Mode::PoW) {
    return [difficulty = config.difficulty](std::span<const ledger::Block>, const ledger::BlockHeader& h) {
      return pow_verify(h, difficulty);
    };
  }
  return [stakes = std::move(genesis_stakes), seed, &scheme](std::span<const ledger::Block> prefix,
                                                             const ledger::BlockHeader& h) {
    const auto* proof = std::get_if<ledger::PosProof>(&h.consensus_proof);
    if (!proof) return false;
    auto selected = pos_select(stake_set_after(stakes, prefix), seed, h.height);
    if (!selected || selected.value() != h.producer) return false;
    return scheme.verify(h.producer, ledger::sealing_preimage(h), proof->signature);
  };
}

void pos_seal(ledger::BlockHeader& header, ByteView producer_secret, const ledger::SignatureScheme& scheme) {
  header.consensus_proof = ledger::PosProof{scheme.sign(producer_secret, ledger::sealing_preimage(header))};
}

}  // namespace edgechain::consensus
