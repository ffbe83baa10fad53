#pragma once

#include <cstdint>
#include <string_view>

#include "edgechain/ledger/bytes.hpp"

namespace edgechain::consensus {

enum class Mode { PoW, PoS };

std::string_view to_string(Mode m);

struct ConsensusConfig {
  Mode mode = Mode::PoW;
  std::uint64_t difficulty = 16;
  Amount block_reward = 50;
  std::uint64_t target_block_interval = 10;

  bool operator==(const ConsensusConfig&) const = default;
};

}  // namespace edgechain::consensus
