#include "edgechain/consensus/config.hpp"

namespace edgechain::consensus {

std::string_view to_string(Mode m) { return m == Mode::PoW ? "PoW" : "PoS"; }

}  // namespace edgechain::consensus
