#pragma once

#include <boost/outcome.hpp>

namespace edgechain {

namespace outcome = BOOST_OUTCOME_V2_NAMESPACE;

// Error types in this project are plain enums or small structs, so the
// terminate policy is used instead of std::error_code interop.
template <class T, class E>
using Result = outcome::result<T, E, outcome::policy::terminate>;

}  // namespace edgechain
