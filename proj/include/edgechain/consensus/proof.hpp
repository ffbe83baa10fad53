#pragma once

#include <cstdint>

#include "edgechain/consensus/config.hpp"
#include "edgechain/consensus/pos.hpp"
#include "edgechain/ledger/chain.hpp"
#include "edgechain/ledger/signature.hpp"

namespace edgechain::consensus {

/// Proof validation for append_block / validate_chain.
///
/// PoW: the header digest must be below the difficulty target.
/// PoS: the producer must be the validator drawn for this height from the
/// stake set implied by the prefix, and the PoS signature must verify
/// over the header's sealing pre-image.
///
/// The scheme is captured by reference and must outlive the check.
ledger::ProofCheck make_proof_check(const ConsensusConfig& config, StakeSet genesis_stakes,
                                    std::uint64_t seed, const ledger::SignatureScheme& scheme);

/// Seals a PoS header in place.
void pos_seal(ledger::BlockHeader& header, ByteView producer_secret, const ledger::SignatureScheme& scheme);

}  // namespace edgechain::consensus
