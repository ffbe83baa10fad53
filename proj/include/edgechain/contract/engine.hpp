#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgechain/contract/gas_schedule.hpp"
#include "edgechain/contract/receipt.hpp"
#include "edgechain/contract/state.hpp"
#include "edgechain/ledger/transaction.hpp"
#include "edgechain/result.hpp"

namespace edgechain::contract {

/// ContractCall method ids.
namespace method {
inline constexpr std::uint32_t register_device = 1;
inline constexpr std::uint32_t submit_data = 2;
inline constexpr std::uint32_t apply_update = 3;
inline constexpr std::uint32_t report_malicious = 4;
inline constexpr std::uint32_t distribute = 5;
}  // namespace method

struct ExecContext {
  std::uint64_t height = 0;
  Address producer;
};

struct MigrateParams {
  std::uint32_t version = 0;
  std::string update_url;
  std::uint64_t block_interval = 0;

  bool operator==(const MigrateParams&) const = default;
};

/// u32 version, u64 block interval, length-prefixed URL.
Bytes encode_migrate_params(const MigrateParams& p);
std::optional<MigrateParams> decode_migrate_params(ByteView raw);

/// Gas the transaction will consume if it runs to completion.
std::uint64_t required_gas(const ledger::Transaction& tx, const ContractState& state, const GasSchedule& schedule);

// Contract operations. Each validates before mutating, so an error result
// leaves the state untouched. `gas` is the metered cost recorded in the log.

Result<void, RevertReason> migrate(ContractState& state, const Address& caller, const MigrateParams& params,
                                   std::uint64_t height, std::uint64_t gas);
Result<void, RevertReason> register_device(ContractState& state, const Address& caller,
                                           std::uint32_t firmware_version, std::uint64_t height, std::uint64_t gas);
/// OutdatedVersion is the one rejection that leaves a trace: a Rejected
/// log entry, so the device's history shows the refused submission.
Result<void, RevertReason> submit_data(ContractState& state, const Address& caller, std::uint64_t height,
                                       std::uint64_t gas);
Result<void, RevertReason> apply_update(ContractState& state, const Address& caller, std::uint64_t height,
                                        std::uint64_t gas);

struct QuotaStatus {
  bool exceeded = false;
  std::uint64_t excess = 0;
  std::uint64_t device_count = 0;
  std::uint64_t window_total = 0;
  std::uint64_t allowed = 0;
  std::uint64_t active_senders = 0;
};

/// SubmitData shares over blocks (h - W, h].
Result<QuotaStatus, RevertReason> check_quota(const ContractState& state, const Address& device, std::uint64_t height);

Result<std::vector<Event>, RevertReason> report_malicious(WorldState& world, const Address& reporter,
                                                          const Address& offender, std::uint64_t height,
                                                          std::uint64_t gas);
Result<std::vector<Event>, RevertReason> distribute_resources(WorldState& world, const Address& caller,
                                                              std::uint64_t height, std::uint64_t gas);

/// Read-only; no gas.
std::vector<ActivityEntry> get_activity(const ContractState& state, const Address& device);

/// Runs one verified transaction in place: escrow, dispatch, refund and
/// producer payment. Throws std::logic_error if the sender cannot cover
/// the escrow, since verification must have rejected it earlier.
Receipt apply_transaction(WorldState& world, const ledger::Transaction& tx, const GasSchedule& schedule,
                          const ExecContext& ctx);

/// Pure form of apply_transaction.
std::pair<WorldState, Receipt> execute(WorldState world, const ledger::Transaction& tx, const GasSchedule& schedule,
                                       const ExecContext& ctx);

}  // namespace edgechain::contract
