#include "edgechain/consensus/fork_choice.hpp"

#include <vector>

namespace edgechain::consensus {

bool better_chain(const ChainSummary& a, const ChainSummary& b) {
  if (a.length != b.length) return a.length > b.length;
  return a.tip < b.tip;
}

Result<std::size_t, ForkChoiceError> fork_choice(std::span<const ChainSummary> candidates) {
  if (candidates.empty()) return ForkChoiceError::NoCandidates;
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (better_chain(candidates[i], candidates[best])) best = i;
  }
  return best;
}

Result<std::size_t, ForkChoiceError> fork_choice(std::span<const ledger::Chain> candidates) {
  std::vector<ChainSummary> summaries;
  summaries.reserve(candidates.size());
  for (const auto& c : candidates) summaries.push_back({c.length(), c.tip_hash()});
  return fork_choice(std::span<const ChainSummary>(summaries));
}

}  // namespace edgechain::consensus
