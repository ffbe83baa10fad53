#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgechain/ledger/account.hpp"
#include "edgechain/ledger/bytes.hpp"

namespace edgechain::contract {

/// What a log entry records. ApplyUpdate marks the on-chain firmware
/// acknowledgement so that per-device gas totals can be rebuilt from the log.
enum class Action : std::uint8_t { Register, SubmitData, Report, Distribute, Migrate, Rejected, ApplyUpdate };

std::string_view to_string(Action a);

struct DeviceRecord {
  Address address;
  std::uint32_t firmware_version = 0;
  std::uint64_t registered_at = 0;
  /// SubmitData count in the quota window ending at the device's latest submit.
  std::uint64_t window_tx_count = 0;
  /// Gas units across every logged action of the device.
  std::uint64_t total_gas_spent = 0;
  bool flagged = false;
  /// Penalty that could not be collected; withheld from future grants.
  Amount penalty_debt = 0;

  bool operator==(const DeviceRecord&) const = default;
};

struct ActivityEntry {
  std::uint64_t height = 0;
  Address device;
  Action action = Action::Register;
  std::uint64_t gas_used = 0;

  bool operator==(const ActivityEntry&) const = default;
};

struct QuotaConfig {
  std::uint64_t window_blocks = 10;
  std::uint32_t max_share_percent = 40;
  std::uint64_t min_active_senders = 2;
  /// Currency per excess transaction; 2 * base_tx at gas price 1.
  Amount penalty_rate = 42;
  std::uint32_t reporter_share_percent = 50;

  bool operator==(const QuotaConfig&) const = default;
  bool valid() const {
    return max_share_percent > 0 && max_share_percent <= 100 && window_blocks >= 1 && reporter_share_percent <= 100;
  }
};

struct ContractState {
  Address admin;
  std::uint32_t current_version = 0;
  std::string update_url;
  std::uint64_t block_interval = 0;
  bool initialized = false;
  std::map<Address, DeviceRecord> devices;
  std::vector<ActivityEntry> activity_log;
  QuotaConfig quota;
  std::map<Address, Amount> pending_reimbursements;
  Amount penalty_pool = 0;

  // Distribution epochs.
  std::uint64_t epoch_length = 20;
  Amount epoch_mint = 0;
  std::uint64_t epochs_distributed = 0;
  std::uint64_t last_distribution_height = 0;

  // Lifetime totals, reported in run summaries.
  Amount total_penalties = 0;
  Amount total_reimbursed = 0;

  bool operator==(const ContractState&) const = default;

  const DeviceRecord* device(const Address& a) const {
    auto it = devices.find(a);
    return it == devices.end() ? nullptr : &it->second;
  }
};

/// SHA-256 over a canonical encoding of every field.
Digest256 state_digest(const ContractState& state);

/// Network admission list maintained by the admin through PermissionUpdate.
struct Allowlist {
  bool allow_all = false;
  std::set<Address> allowed;
  std::set<Address> denied;

  bool permits(const Address& a) const {
    if (denied.contains(a)) return false;
    return allow_all || allowed.contains(a);
  }
  void set(const Address& a, bool allow);

  bool operator==(const Allowlist&) const = default;
};

/// Everything a block transition reads or writes.
struct WorldState {
  std::map<Address, ledger::Account> accounts;
  ContractState contract;
  Allowlist allowlist;
  /// Sum of genesis balances; the base of the conservation identity.
  Amount genesis_supply = 0;

  bool operator==(const WorldState&) const = default;

  /// Existing account or a zero account for the address.
  ledger::Account account(const Address& a) const;
  /// Mutable account, created on first touch.
  ledger::Account& account_mut(const Address& a);
};

Digest256 world_digest(const WorldState& state);

/// Balances plus the contract's pool and pending reimbursements.
Amount circulating_supply(const WorldState& state);

/// What circulating_supply must equal after a block at `height`.
Amount expected_supply(const WorldState& state, const Amount& block_reward, std::uint64_t height);

}  // namespace edgechain::contract
