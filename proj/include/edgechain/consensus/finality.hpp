#pragma once

#include <cstdint>

#include "edgechain/result.hpp"

namespace edgechain::consensus {

enum class Finality { Final, NotFinal };
enum class FinalityError { VotesExceedNodes, NoNodes };

/// Final iff votes > 2n/3, strictly, in exact arithmetic.
Result<Finality, FinalityError> finality_check(std::uint64_t votes, std::uint64_t nodes);

}  // namespace edgechain::consensus
