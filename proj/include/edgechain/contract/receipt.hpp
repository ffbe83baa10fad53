#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "edgechain/ledger/bytes.hpp"

namespace edgechain::contract {

enum class RevertReason {
  OutOfGas,
  Unauthorized,
  VersionRegression,
  AlreadyRegistered,
  NotRegistered,
  OutdatedVersion,
  NoViolation,
  SelfReport,
  NotEpochBoundary,
  UnknownMethod,
  BadArguments,
};

std::string_view to_string(RevertReason r);
std::optional<RevertReason> revert_reason_from_string(std::string_view s);

struct UpdateRequired {
  std::string url;
  bool operator==(const UpdateRequired&) const = default;
};
struct PenaltyApplied {
  Address offender;
  Amount amount = 0;
  bool operator==(const PenaltyApplied&) const = default;
};
struct Reimbursed {
  Address to;
  Amount amount = 0;
  bool operator==(const Reimbursed&) const = default;
};
struct Granted {
  Address to;
  Amount amount = 0;
  bool operator==(const Granted&) const = default;
};

using Event = std::variant<UpdateRequired, PenaltyApplied, Reimbursed, Granted>;

struct Receipt {
  Digest256 tx_hash;
  /// Empty on success.
  std::optional<RevertReason> revert;
  std::uint64_t gas_used = 0;
  Amount fee = 0;
  std::vector<Event> events;

  bool success() const { return !revert.has_value(); }
  bool operator==(const Receipt&) const = default;
};

nlohmann::json to_json(const Receipt& r);
Receipt receipt_from_json(const nlohmann::json& j);

}  // namespace edgechain::contract
