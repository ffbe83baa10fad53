#include "edgechain/contract/receipt.hpp"

#include <array>

#include "edgechain/ledger/json.hpp"

namespace edgechain::contract {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<RevertReason, std::string_view>, 11> kReasons{{
    {RevertReason::OutOfGas, "OutOfGas"},
    {RevertReason::Unauthorized, "Unauthorized"},
    {RevertReason::VersionRegression, "VersionRegression"},
    {RevertReason::AlreadyRegistered, "AlreadyRegistered"},
    {RevertReason::NotRegistered, "NotRegistered"},
    {RevertReason::OutdatedVersion, "OutdatedVersion"},
    {RevertReason::NoViolation, "NoViolation"},
    {RevertReason::SelfReport, "SelfReport"},
    {RevertReason::NotEpochBoundary, "NotEpochBoundary"},
    {RevertReason::UnknownMethod, "UnknownMethod"},
    {RevertReason::BadArguments, "BadArguments"},
}};

json event_to_json(const Event& e) {
  if (const auto* u = std::get_if<UpdateRequired>(&e)) return {{"type", "UpdateRequired"}, {"url", u->url}};
  if (const auto* p = std::get_if<PenaltyApplied>(&e)) {
    return {{"type", "PenaltyApplied"}, {"offender", p->offender.hex()}, {"amount", amount_to_string(p->amount)}};
  }
  if (const auto* r = std::get_if<Reimbursed>(&e)) {
    return {{"type", "Reimbursed"}, {"to", r->to.hex()}, {"amount", amount_to_string(r->amount)}};
  }
  const auto& g = std::get<Granted>(e);
  return {{"type", "Granted"}, {"to", g.to.hex()}, {"amount", amount_to_string(g.amount)}};
}

Event event_from_json(const json& j) {
  using ledger::FormatError;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw FormatError("event needs a type");
  auto type = j["type"].get<std::string>();
  if (type == "UpdateRequired") {
    ledger::require_keys(j, {"type", "url"}, "UpdateRequired");
    if (!j["url"].is_string()) throw FormatError("url must be a string");
    return UpdateRequired{j["url"].get<std::string>()};
  }
  if (type == "PenaltyApplied") {
    ledger::require_keys(j, {"type", "offender", "amount"}, "PenaltyApplied");
    return PenaltyApplied{ledger::fixed_field<Address>(j, "offender"), ledger::amount_field(j, "amount")};
  }
  if (type == "Reimbursed") {
    ledger::require_keys(j, {"type", "to", "amount"}, "Reimbursed");
    return Reimbursed{ledger::fixed_field<Address>(j, "to"), ledger::amount_field(j, "amount")};
  }
  if (type == "Granted") {
    ledger::require_keys(j, {"type", "to", "amount"}, "Granted");
    return Granted{ledger::fixed_field<Address>(j, "to"), ledger::amount_field(j, "amount")};
  }
  throw FormatError("unknown event type '" + type + "'");
}

}  // namespace

std::string_view to_string(RevertReason r) {
  for (const auto& [reason, name] : kReasons) {
    if (reason == r) return name;
  }
  return "Unknown";
}

std::optional<RevertReason> revert_reason_from_string(std::string_view s) {
  for (const auto& [reason, name] : kReasons) {
    if (name == s) return reason;
  }
  return std::nullopt;
}

json to_json(const Receipt& r) {
  auto events = json::array();
  for (const auto& e : r.events) events.push_back(event_to_json(e));
  return {{"tx_hash", r.tx_hash.hex()},
          {"status", r.success() ? std::string("Success") : "Reverted(" + std::string(to_string(*r.revert)) + ")"},
          {"gas_used", r.gas_used},
          {"fee", amount_to_string(r.fee)},
          {"events", std::move(events)}};
}

Receipt receipt_from_json(const json& j) {
  using ledger::FormatError;
  ledger::require_keys(j, {"tx_hash", "status", "gas_used", "fee", "events"}, "receipt");
  Receipt r;
  r.tx_hash = ledger::fixed_field<Digest256>(j, "tx_hash");
  if (!j["status"].is_string()) throw FormatError("status must be a string");
  auto status = j["status"].get<std::string>();
  if (status != "Success") {
    constexpr std::string_view prefix = "Reverted(";
    if (!status.starts_with(prefix) || !status.ends_with(")")) throw FormatError("bad receipt status");
    auto reason = revert_reason_from_string(
        std::string_view(status).substr(prefix.size(), status.size() - prefix.size() - 1));
    if (!reason) throw FormatError("unknown revert reason in '" + status + "'");
    r.revert = *reason;
  }
  r.gas_used = ledger::u64_field(j, "gas_used");
  r.fee = ledger::amount_field(j, "fee");
  if (!j["events"].is_array()) throw FormatError("events must be an array");
  for (const auto& e : j["events"]) r.events.push_back(event_from_json(e));
  return r;
}

}  // namespace edgechain::contract
