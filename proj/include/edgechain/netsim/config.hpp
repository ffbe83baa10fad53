#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgechain/consensus/config.hpp"
#include "edgechain/contract/gas_schedule.hpp"
#include "edgechain/contract/state.hpp"

namespace edgechain::netsim {

enum class NodeKind { Customer, EdgeServer, UpdateRepository, Admin };

std::string_view to_string(NodeKind k);
std::optional<NodeKind> node_kind_from_string(std::string_view s);

/// A customer that watches another device's quota share and reports it.
struct ReportBehavior {
  std::string offender;
  std::uint64_t period = 10;
  /// 0 means unlimited.
  std::uint64_t max_reports = 0;

  bool operator==(const ReportBehavior&) const = default;
};

struct CustomerBehavior {
  std::uint64_t submit_period = 10;
  /// 0 means unlimited.
  std::uint64_t max_submits = 0;
  std::uint64_t start_tick = 0;
  /// Unset: the contract version the scenario deploys.
  std::optional<std::uint32_t> firmware_version;
  std::uint64_t payload_bytes = 4;
  std::uint64_t gas_limit = 100;
  std::uint64_t gas_price = 1;
  std::optional<ReportBehavior> report;

  bool operator==(const CustomerBehavior&) const = default;
};

struct MigrationStep {
  std::uint64_t tick = 0;
  std::uint32_t version = 0;
  std::string update_url;
  std::uint64_t block_interval = 0;

  bool operator==(const MigrationStep&) const = default;
};

struct PermissionStep {
  std::uint64_t tick = 0;
  /// Node name or 40-digit hex address.
  std::string target;
  bool allow = false;

  bool operator==(const PermissionStep&) const = default;
};

/// The node's name doubles as its key seed, so the address is derived.
struct NodeSpec {
  std::string name;
  NodeKind kind = NodeKind::Customer;
  Amount balance = 0;
  std::uint64_t stake = 0;
  /// Edge servers only.
  bool mining = true;
  /// Edge server name for client traffic; unset binds to the first one.
  std::optional<std::string> bound_to;
  CustomerBehavior customer;
  /// Admin only; run after the initial deployment.
  std::vector<MigrationStep> migrations;
  std::vector<PermissionStep> permission_updates;

  bool operator==(const NodeSpec&) const = default;
};

struct LinkDelay {
  std::string from;
  std::string to;
  std::uint64_t ticks = 1;

  bool operator==(const LinkDelay&) const = default;
};

/// During [start, end) messages between different groups are lost.
/// Nodes in no group reach everyone.
struct Partition {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  std::vector<std::vector<std::string>> groups;

  bool operator==(const Partition&) const = default;
};

struct LatencyConfig {
  std::uint64_t default_ticks = 1;
  /// Symmetric overrides.
  std::vector<LinkDelay> links;
  std::vector<Partition> partitions;

  bool operator==(const LatencyConfig&) const = default;
};

struct ContractConfig {
  std::uint32_t version = 1;
  std::string update_url = "repo://firmware/v1";
  std::uint64_t block_interval = 10;
  std::uint64_t epoch_length = 20;
  Amount epoch_mint = 0;
  contract::QuotaConfig quota;

  bool operator==(const ContractConfig&) const = default;
};

struct RunConfig {
  std::uint64_t max_blocks = 100;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

struct SimConfig {
  std::string name = "custom";
  consensus::ConsensusConfig consensus;
  ContractConfig contract;
  contract::GasSchedule gas;
  std::vector<NodeSpec> nodes;
  /// Empty with allow_all unset admits only infrastructure nodes.
  bool allow_all = true;
  std::vector<std::string> allowlist;
  LatencyConfig latency;
  RunConfig run;
  std::uint64_t max_block_txs = 100;

  bool operator==(const SimConfig&) const = default;
};

struct InvalidScenario {
  std::string rule;
};

/// Address of the mock key seeded with the node name.
Address address_for(std::string_view name);

/// A node name from the config, or a 40-digit hex address.
std::optional<Address> resolve_address(const SimConfig& config, std::string_view name_or_hex);

/// First violated rule, if any.
std::optional<InvalidScenario> check_config(const SimConfig& config);

}  // namespace edgechain::netsim
