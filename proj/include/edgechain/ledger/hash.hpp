#pragma once

#include "edgechain/ledger/bytes.hpp"

namespace edgechain {

Digest256 sha256(ByteView data);
/// SHA-256 of the concatenation a || b.
Digest256 sha256(ByteView a, ByteView b);

}  // namespace edgechain
