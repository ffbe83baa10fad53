#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "edgechain/ledger/chain.hpp"
#include "edgechain/result.hpp"

namespace edgechain::consensus {

struct ChainSummary {
  std::uint64_t length = 0;
  Digest256 tip;
};

enum class ForkChoiceError { NoCandidates };

/// Strict preference: longer wins; equal length prefers the
/// lexicographically smaller tip digest.
bool better_chain(const ChainSummary& a, const ChainSummary& b);

/// Index of the preferred candidate.
Result<std::size_t, ForkChoiceError> fork_choice(std::span<const ChainSummary> candidates);
Result<std::size_t, ForkChoiceError> fork_choice(std::span<const ledger::Chain> candidates);

}  // namespace edgechain::consensus
