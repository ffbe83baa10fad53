#pragma once

#include <cstdint>

#include "edgechain/ledger/bytes.hpp"

namespace edgechain::ledger {

struct Account {
  Address address;
  Amount balance = 0;
  std::uint64_t nonce = 0;
  std::uint64_t stake = 0;
  /// Blocks since the stake last changed (or its holder last produced).
  std::uint64_t stake_age = 0;

  bool operator==(const Account&) const = default;
};

}  // namespace edgechain::ledger
