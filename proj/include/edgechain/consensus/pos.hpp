#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgechain/ledger/block.hpp"
#include "edgechain/result.hpp"

namespace edgechain::consensus {

struct Staker {
  Address address;
  std::uint64_t stake = 0;
  std::uint64_t age = 0;

  bool operator==(const Staker&) const = default;
};

/// Order matters: selection walks cumulative weights in list order.
using StakeSet = std::vector<Staker>;

enum class PosError { EmptyStakeSet, DuplicateStaker };

/// Weighted draw with weight = stake * (1 + age). The draw is
/// SHA-256(seed || epoch) as a big-endian integer, reduced modulo the
/// total weight; the first staker whose cumulative weight exceeds it wins.
Result<Address, PosError> pos_select(const StakeSet& stakes, std::uint64_t seed, std::uint64_t epoch);

/// Ages as seen by the producer of the block after `prefix`: every block
/// ages all stakers by one, then resets its producer's age to zero.
StakeSet stake_set_after(const StakeSet& genesis, std::span<const ledger::Block> prefix);

}  // namespace edgechain::consensus
