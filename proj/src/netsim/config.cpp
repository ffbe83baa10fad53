#include "edgechain/netsim/config.hpp"

#include <set>

#include "edgechain/ledger/hash.hpp"
#include "edgechain/ledger/signature.hpp"

namespace edgechain::netsim {

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Customer: return "Customer";
    case NodeKind::EdgeServer: return "EdgeServer";
    case NodeKind::UpdateRepository: return "UpdateRepository";
    case NodeKind::Admin: return "Admin";
  }
  return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
  for (auto k : {NodeKind::Customer, NodeKind::EdgeServer, NodeKind::UpdateRepository, NodeKind::Admin}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Address address_for(std::string_view name) {
  ledger::MockSignatureScheme scheme;
  return ledger::address_of(scheme.derive_public_key(as_bytes(name)));
}

namespace {

const NodeSpec* find_node(const SimConfig& c, std::string_view name) {
  for (const auto& n : c.nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

}  // namespace

std::optional<Address> resolve_address(const SimConfig& config, std::string_view name_or_hex) {
  if (find_node(config, name_or_hex)) return address_for(name_or_hex);
  if (name_or_hex.size() == 40) return Address::from_hex(name_or_hex);
  return std::nullopt;
}

std::optional<InvalidScenario> check_config(const SimConfig& c) {
  auto fail = [](std::string rule) { return std::optional<InvalidScenario>{InvalidScenario{std::move(rule)}}; };

  if (c.nodes.empty()) return fail("scenario has no nodes");
  std::set<Address> seen;
  std::size_t admins = 0, miners = 0, customers = 0, repos = 0;
  for (const auto& n : c.nodes) {
    if (n.name.empty()) return fail("node name must be non-empty");
    if (!seen.insert(address_for(n.name)).second) return fail("duplicate address for node '" + n.name + "'");
    admins += n.kind == NodeKind::Admin;
    repos += n.kind == NodeKind::UpdateRepository;
    customers += n.kind == NodeKind::Customer;
    miners += n.kind == NodeKind::EdgeServer && n.mining;
  }
  if (admins != 1) return fail("exactly one Admin node is required");
  if (repos > 1) return fail("at most one UpdateRepository node is allowed");
  if (customers > 0 && miners == 0) return fail("customers submit transactions but no EdgeServer is mining");
  if (c.run.max_blocks > 0 && miners == 0) return fail("blocks requested but no EdgeServer is mining");

  if (c.consensus.target_block_interval == 0) return fail("consensus.target_block_interval must be >= 1");
  if (c.consensus.mode == consensus::Mode::PoW && c.consensus.difficulty == 0) {
    return fail("consensus.difficulty must be >= 1");
  }
  if (c.contract.block_interval == 0) return fail("contract.block_interval must be >= 1");
  if (c.contract.epoch_length == 0) return fail("contract.epoch_length must be >= 1");
  if (!c.contract.quota.valid()) return fail("contract.quota is out of range");
  if (!c.gas.valid()) return fail("gas_schedule.base_tx must be >= 1");
  if (c.max_block_txs == 0) return fail("max_block_txs must be >= 1");

  bool staked_miner = false;
  for (const auto& n : c.nodes) {
    bool miner = n.kind == NodeKind::EdgeServer && n.mining;
    if (n.stake > 0 && !miner) return fail("only mining EdgeServers may stake ('" + n.name + "')");
    staked_miner |= miner && n.stake > 0;
    if (n.bound_to) {
      const auto* target = find_node(c, *n.bound_to);
      if (!target || target->kind != NodeKind::EdgeServer) {
        return fail("node '" + n.name + "' is bound to unknown edge server '" + *n.bound_to + "'");
      }
    }
    if (n.kind == NodeKind::Customer) {
      if (n.customer.submit_period == 0) return fail("customer '" + n.name + "' has submit_period 0");
      if (n.customer.report) {
        const auto& r = *n.customer.report;
        const auto* off = find_node(c, r.offender);
        if (!off || off->kind != NodeKind::Customer) return fail("report offender '" + r.offender + "' is not a customer");
        if (r.offender == n.name) return fail("customer '" + n.name + "' cannot report itself");
        if (r.period == 0) return fail("customer '" + n.name + "' has report period 0");
      }
    }
    if (n.kind != NodeKind::Admin && (!n.migrations.empty() || !n.permission_updates.empty())) {
      return fail("only the Admin schedules migrations and permission updates");
    }
    for (const auto& p : n.permission_updates) {
      if (!resolve_address(c, p.target)) return fail("permission update targets unknown node '" + p.target + "'");
    }
  }
  if (c.consensus.mode == consensus::Mode::PoS && miners > 0 && !staked_miner) {
    return fail("PoS needs at least one mining EdgeServer with stake");
  }
  for (const auto& a : c.allowlist) {
    if (!resolve_address(c, a)) return fail("allowlist entry '" + a + "' is neither a node nor an address");
  }
  for (const auto& l : c.latency.links) {
    if (!find_node(c, l.from) || !find_node(c, l.to)) return fail("latency link names an unknown node");
  }
  for (const auto& p : c.latency.partitions) {
    if (p.start >= p.end) return fail("partition start must precede its end");
    for (const auto& g : p.groups) {
      for (const auto& name : g) {
        if (!find_node(c, name)) return fail("partition names unknown node '" + name + "'");
      }
    }
  }
  return std::nullopt;
}

}  // namespace edgechain::netsim
