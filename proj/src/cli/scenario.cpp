#include "edgechain/cli/scenario.hpp"

#include "edgechain/ledger/json.hpp"

namespace edgechain::cli {

using nlohmann::json;
using ledger::FormatError;
using ledger::require_keys;

namespace {

std::uint64_t opt_u64(const json& j, const char* key, std::uint64_t fallback) {
  return j.contains(key) ? ledger::u64_field(j, key) : fallback;
}

std::uint32_t opt_u32(const json& j, const char* key, std::uint32_t fallback) {
  auto v = opt_u64(j, key, fallback);
  if (v > 0xffffffffu) throw FormatError(std::string("field '") + key + "' out of range");
  return static_cast<std::uint32_t>(v);
}

Amount opt_amount(const json& j, const char* key, const Amount& fallback) {
  return j.contains(key) ? ledger::amount_field(j, key) : fallback;
}

std::string opt_string(const json& j, const char* key, std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

bool opt_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw FormatError(std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

const json& opt_array(const json& j, const char* key) {
  static const json empty = json::array();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw FormatError(std::string(what) + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

consensus::ConsensusConfig read_consensus(const json& j) {
  require_keys(j, {"mode", "difficulty", "block_reward", "target_block_interval"}, "consensus");
  consensus::ConsensusConfig c;
  auto mode = opt_string(j, "mode", "PoW");
  if (mode == "PoW") {
    c.mode = consensus::Mode::PoW;
  } else if (mode == "PoS") {
    c.mode = consensus::Mode::PoS;
  } else {
    throw FormatError("consensus.mode must be PoW or PoS");
  }
  c.difficulty = opt_u64(j, "difficulty", c.difficulty);
  c.block_reward = opt_amount(j, "block_reward", c.block_reward);
  c.target_block_interval = opt_u64(j, "target_block_interval", c.target_block_interval);
  return c;
}

contract::QuotaConfig read_quota(const json& j) {
  require_keys(j, {"window_blocks", "max_share_percent", "min_active_senders", "penalty_rate", "reporter_share_percent"},
               "contract.quota");
  contract::QuotaConfig q;
  q.window_blocks = opt_u64(j, "window_blocks", q.window_blocks);
  q.max_share_percent = opt_u32(j, "max_share_percent", q.max_share_percent);
  q.min_active_senders = opt_u64(j, "min_active_senders", q.min_active_senders);
  q.penalty_rate = opt_amount(j, "penalty_rate", q.penalty_rate);
  q.reporter_share_percent = opt_u32(j, "reporter_share_percent", q.reporter_share_percent);
  return q;
}

netsim::ContractConfig read_contract(const json& j) {
  require_keys(j, {"version", "update_url", "block_interval", "epoch_length", "epoch_mint", "quota"}, "contract");
  netsim::ContractConfig c;
  c.version = opt_u32(j, "version", c.version);
  c.update_url = opt_string(j, "update_url", c.update_url);
  c.block_interval = opt_u64(j, "block_interval", c.block_interval);
  c.epoch_length = opt_u64(j, "epoch_length", c.epoch_length);
  c.epoch_mint = opt_amount(j, "epoch_mint", c.epoch_mint);
  if (j.contains("quota")) c.quota = read_quota(j.at("quota"));
  return c;
}

contract::GasSchedule read_gas(const json& j) {
  require_keys(j,
               {"base_tx", "per_payload_byte", "register_device", "submit_data", "report_malicious", "distribute",
                "migrate", "init_surcharge", "permission_update"},
               "gas_schedule");
  contract::GasSchedule g;
  g.base_tx = opt_u64(j, "base_tx", g.base_tx);
  g.per_payload_byte = opt_u64(j, "per_payload_byte", g.per_payload_byte);
  g.register_device = opt_u64(j, "register_device", g.register_device);
  g.submit_data = opt_u64(j, "submit_data", g.submit_data);
  g.report_malicious = opt_u64(j, "report_malicious", g.report_malicious);
  g.distribute = opt_u64(j, "distribute", g.distribute);
  g.migrate = opt_u64(j, "migrate", g.migrate);
  g.init_surcharge = opt_u64(j, "init_surcharge", g.init_surcharge);
  g.permission_update = opt_u64(j, "permission_update", g.permission_update);
  return g;
}

netsim::CustomerBehavior read_customer(const json& j) {
  require_keys(j,
               {"submit_period", "max_submits", "start_tick", "firmware_version", "payload_bytes", "gas_limit",
                "gas_price", "report"},
               "customer");
  netsim::CustomerBehavior b;
  b.submit_period = opt_u64(j, "submit_period", b.submit_period);
  b.max_submits = opt_u64(j, "max_submits", b.max_submits);
  b.start_tick = opt_u64(j, "start_tick", b.start_tick);
  if (j.contains("firmware_version")) b.firmware_version = opt_u32(j, "firmware_version", 0);
  b.payload_bytes = opt_u64(j, "payload_bytes", b.payload_bytes);
  b.gas_limit = opt_u64(j, "gas_limit", b.gas_limit);
  b.gas_price = opt_u64(j, "gas_price", b.gas_price);
  if (j.contains("report")) {
    const auto& r = j.at("report");
    require_keys(r, {"offender", "period", "max_reports"}, "customer.report");
    netsim::ReportBehavior rb;
    if (!r.contains("offender")) throw FormatError("customer.report.offender is required");
    rb.offender = opt_string(r, "offender", "");
    rb.period = opt_u64(r, "period", rb.period);
    rb.max_reports = opt_u64(r, "max_reports", rb.max_reports);
    b.report = rb;
  }
  return b;
}

netsim::NodeSpec read_node(const json& j) {
  require_keys(j,
               {"name", "kind", "balance", "stake", "mining", "bound_to", "customer", "migrations",
                "permission_updates"},
               "node");
  netsim::NodeSpec n;
  if (!j.contains("name") || !j.contains("kind")) throw FormatError("node: name and kind are required");
  n.name = opt_string(j, "name", "");
  auto kind = netsim::node_kind_from_string(opt_string(j, "kind", ""));
  if (!kind) throw FormatError("node '" + n.name + "': unknown kind");
  n.kind = *kind;
  n.balance = opt_amount(j, "balance", 0);
  n.stake = opt_u64(j, "stake", 0);
  n.mining = opt_bool(j, "mining", true);
  if (j.contains("bound_to")) n.bound_to = opt_string(j, "bound_to", "");
  if (j.contains("customer")) {
    if (n.kind != netsim::NodeKind::Customer) throw FormatError("node '" + n.name + "': customer block on non-customer");
    n.customer = read_customer(j.at("customer"));
  }
  for (const auto& m : opt_array(j, "migrations")) {
    require_keys(m, {"tick", "version", "update_url", "block_interval"}, "migration");
    netsim::MigrationStep s;
    s.tick = ledger::u64_field(m, "tick");
    s.version = opt_u32(m, "version", 0);
    if (!m.contains("version")) throw FormatError("migration.version is required");
    s.update_url = opt_string(m, "update_url", "");
    s.block_interval = opt_u64(m, "block_interval", 10);
    n.migrations.push_back(s);
  }
  for (const auto& p : opt_array(j, "permission_updates")) {
    require_keys(p, {"tick", "target", "allow"}, "permission_update");
    netsim::PermissionStep s;
    s.tick = ledger::u64_field(p, "tick");
    if (!p.contains("target") || !p.contains("allow")) throw FormatError("permission_update needs target and allow");
    s.target = opt_string(p, "target", "");
    s.allow = opt_bool(p, "allow", false);
    n.permission_updates.push_back(s);
  }
  return n;
}

netsim::LatencyConfig read_latency(const json& j) {
  require_keys(j, {"default", "links", "partitions"}, "latency");
  netsim::LatencyConfig l;
  l.default_ticks = opt_u64(j, "default", l.default_ticks);
  for (const auto& link : opt_array(j, "links")) {
    require_keys(link, {"from", "to", "ticks"}, "latency.links");
    l.links.push_back({opt_string(link, "from", ""), opt_string(link, "to", ""), ledger::u64_field(link, "ticks")});
  }
  for (const auto& p : opt_array(j, "partitions")) {
    require_keys(p, {"start", "end", "groups"}, "latency.partitions");
    netsim::Partition part;
    part.start = ledger::u64_field(p, "start");
    part.end = ledger::u64_field(p, "end");
    for (const auto& g : opt_array(p, "groups")) part.groups.push_back(string_list(g, "partition group"));
    l.partitions.push_back(std::move(part));
  }
  return l;
}

}  // namespace

netsim::SimConfig scenario_from_json(const json& j) {
  require_keys(j,
               {"name", "consensus", "contract", "gas_schedule", "nodes", "allowlist", "latency", "run",
                "max_block_txs"},
               "scenario");
  netsim::SimConfig c;
  c.name = opt_string(j, "name", c.name);
  if (j.contains("consensus")) c.consensus = read_consensus(j.at("consensus"));
  if (j.contains("contract")) c.contract = read_contract(j.at("contract"));
  if (j.contains("gas_schedule")) c.gas = read_gas(j.at("gas_schedule"));
  if (!j.contains("nodes")) throw FormatError("scenario: nodes is required");
  for (const auto& n : opt_array(j, "nodes")) c.nodes.push_back(read_node(n));
  if (j.contains("allowlist")) {
    const auto& a = j.at("allowlist");
    if (a.is_string()) {
      if (a.get<std::string>() != "all") throw FormatError("allowlist must be \"all\" or a list");
      c.allow_all = true;
    } else {
      c.allow_all = false;
      c.allowlist = string_list(a, "allowlist");
    }
  }
  if (j.contains("latency")) c.latency = read_latency(j.at("latency"));
  if (j.contains("run")) {
    const auto& r = j.at("run");
    require_keys(r, {"max_blocks", "seed"}, "run");
    c.run.max_blocks = opt_u64(r, "max_blocks", c.run.max_blocks);
    c.run.seed = opt_u64(r, "seed", c.run.seed);
  }
  c.max_block_txs = opt_u64(j, "max_block_txs", c.max_block_txs);
  return c;
}

json scenario_to_json(const netsim::SimConfig& c) {
  const auto& q = c.contract.quota;
  const auto& g = c.gas;
  json nodes = json::array();
  for (const auto& n : c.nodes) {
    json node{{"name", n.name},
              {"kind", std::string(netsim::to_string(n.kind))},
              {"balance", amount_to_string(n.balance)},
              {"stake", n.stake}};
    if (n.kind == netsim::NodeKind::EdgeServer) node["mining"] = n.mining;
    if (n.bound_to) node["bound_to"] = *n.bound_to;
    if (n.kind == netsim::NodeKind::Customer) {
      const auto& b = n.customer;
      json cust{{"submit_period", b.submit_period}, {"max_submits", b.max_submits}, {"start_tick", b.start_tick},
                {"payload_bytes", b.payload_bytes}, {"gas_limit", b.gas_limit},     {"gas_price", b.gas_price}};
      if (b.firmware_version) cust["firmware_version"] = *b.firmware_version;
      if (b.report) {
        cust["report"] = {
            {"offender", b.report->offender}, {"period", b.report->period}, {"max_reports", b.report->max_reports}};
      }
      node["customer"] = std::move(cust);
    }
    if (!n.migrations.empty()) {
      node["migrations"] = json::array();
      for (const auto& m : n.migrations) {
        node["migrations"].push_back(
            {{"tick", m.tick}, {"version", m.version}, {"update_url", m.update_url}, {"block_interval", m.block_interval}});
      }
    }
    if (!n.permission_updates.empty()) {
      node["permission_updates"] = json::array();
      for (const auto& p : n.permission_updates) {
        node["permission_updates"].push_back({{"tick", p.tick}, {"target", p.target}, {"allow", p.allow}});
      }
    }
    nodes.push_back(std::move(node));
  }
  json links = json::array();
  for (const auto& l : c.latency.links) links.push_back({{"from", l.from}, {"to", l.to}, {"ticks", l.ticks}});
  json partitions = json::array();
  for (const auto& p : c.latency.partitions) {
    partitions.push_back({{"start", p.start}, {"end", p.end}, {"groups", p.groups}});
  }
  return {
      {"name", c.name},
      {"consensus",
       {{"mode", std::string(consensus::to_string(c.consensus.mode))},
        {"difficulty", c.consensus.difficulty},
        {"block_reward", amount_to_string(c.consensus.block_reward)},
        {"target_block_interval", c.consensus.target_block_interval}}},
      {"contract",
       {{"version", c.contract.version},
        {"update_url", c.contract.update_url},
        {"block_interval", c.contract.block_interval},
        {"epoch_length", c.contract.epoch_length},
        {"epoch_mint", amount_to_string(c.contract.epoch_mint)},
        {"quota",
         {{"window_blocks", q.window_blocks},
          {"max_share_percent", q.max_share_percent},
          {"min_active_senders", q.min_active_senders},
          {"penalty_rate", amount_to_string(q.penalty_rate)},
          {"reporter_share_percent", q.reporter_share_percent}}}}},
      {"gas_schedule",
       {{"base_tx", g.base_tx},
        {"per_payload_byte", g.per_payload_byte},
        {"register_device", g.register_device},
        {"submit_data", g.submit_data},
        {"report_malicious", g.report_malicious},
        {"distribute", g.distribute},
        {"migrate", g.migrate},
        {"init_surcharge", g.init_surcharge},
        {"permission_update", g.permission_update}}},
      {"nodes", std::move(nodes)},
      {"allowlist", c.allow_all ? json("all") : json(c.allowlist)},
      {"latency", {{"default", c.latency.default_ticks}, {"links", links}, {"partitions", partitions}}},
      {"run", {{"max_blocks", c.run.max_blocks}, {"seed", c.run.seed}}},
      {"max_block_txs", c.max_block_txs},
  };
}

std::string scenario_help() {
  return R"(Scenario file (JSON, strict: unknown keys are errors). Defaults in brackets.
  name                      [custom]
  consensus.mode            PoW | PoS [PoW]
  consensus.difficulty      [16]
  consensus.block_reward    [50]
  consensus.target_block_interval  ticks between blocks before deployment [10]
  contract.version          deployed at tick 0 by the admin [1]
  contract.update_url       [repo://firmware/v1]
  contract.block_interval   [10]
  contract.epoch_length     blocks per distribution epoch [20]
  contract.epoch_mint       minted into the pool per distribution [0]
  contract.quota            window_blocks [10], max_share_percent [40],
                            min_active_senders [2], penalty_rate [42],
                            reporter_share_percent [50]
  gas_schedule              base_tx [21], per_payload_byte [1], register_device [50],
                            submit_data [10], report_malicious [30], distribute [100],
                            migrate [500], init_surcharge [200], permission_update [15]
  nodes[]                   name (required, also the key seed), kind (required:
                            Admin | EdgeServer | Customer | UpdateRepository),
                            balance [0], stake [0], mining [true], bound_to [first EdgeServer]
  nodes[].customer          submit_period [10], max_submits [0 = unlimited], start_tick [0],
                            firmware_version [contract.version], payload_bytes [4],
                            gas_limit [100], gas_price [1],
                            report {offender, period [10], max_reports [0 = unlimited]}
  nodes[].migrations[]      Admin only: tick, version, update_url, block_interval [10]
  nodes[].permission_updates[]  Admin only: tick, target (name or hex address), allow
  allowlist                 "all" or a list of names/addresses ["all"]; infrastructure
                            nodes are always admitted
  latency                   default [1], links [{from, to, ticks}],
                            partitions [{start, end, groups: [[names]]}]
  run                       max_blocks [100], seed [0]
  max_block_txs             [100]
)";
}

namespace {

netsim::NodeSpec spec(std::string name, netsim::NodeKind kind, Amount balance) {
  netsim::NodeSpec n;
  n.name = std::move(name);
  n.kind = kind;
  n.balance = balance;
  return n;
}

netsim::NodeSpec device(std::string name, Amount balance, std::uint64_t period, std::uint64_t max_submits) {
  auto n = spec(std::move(name), netsim::NodeKind::Customer, balance);
  n.customer.submit_period = period;
  n.customer.max_submits = max_submits;
  return n;
}

std::vector<BuiltinScenario> make_builtins() {
  using netsim::NodeKind;
  std::vector<BuiltinScenario> out;

  netsim::SimConfig fig3;
  fig3.name = "fig3";
  fig3.contract.epoch_mint = 100;
  fig3.nodes = {spec("admin", NodeKind::Admin, 100000), spec("edge-1", NodeKind::EdgeServer, 1000),
                device("device-1", 10000, 10, 50)};
  fig3.run.max_blocks = 60;
  out.push_back({"fig3", "gas consumption of a single device across distribution epochs", fig3});

  netsim::SimConfig fig4;
  fig4.name = "fig4";
  auto offender = device("offender", 20000, 2, 100);
  auto reporter = device("reporter", 10000, 8, 40);
  reporter.customer.report = netsim::ReportBehavior{"offender", 10, 0};
  fig4.nodes = {spec("admin", NodeKind::Admin, 100000), spec("edge-1", NodeKind::EdgeServer, 1000), offender,
                reporter};
  fig4.run.max_blocks = 60;
  out.push_back({"fig4", "quota penalty on a 4x-rate device and deferred reporter reimbursement", fig4});

  netsim::SimConfig gating;
  gating.name = "version-gating";
  auto admin = spec("admin", NodeKind::Admin, 100000);
  admin.migrations.push_back({150, 2, "repo://firmware/v2", 10});
  auto far = device("device-far", 10000, 5, 40);
  gating.nodes = {admin, spec("edge-1", NodeKind::EdgeServer, 1000), spec("repository", NodeKind::UpdateRepository, 0),
                  device("device-1", 10000, 5, 40), far};
  gating.latency.links.push_back({"device-far", "repository", 12});
  gating.run.max_blocks = 40;
  out.push_back({"version-gating", "mid-run firmware migration, rejection, download and update", gating});

  netsim::SimConfig partition;
  partition.name = "partition";
  partition.nodes = {spec("admin", NodeKind::Admin, 100000), spec("east", NodeKind::EdgeServer, 1000),
                     spec("west", NodeKind::EdgeServer, 1000), device("device-1", 10000, 5, 0)};
  partition.latency.partitions.push_back({95, 255, {{"admin", "east", "device-1"}, {"west"}}});
  partition.run.max_blocks = 40;
  out.push_back({"partition", "two PoW miners split and healed", partition});

  for (auto mode : {consensus::Mode::PoW, consensus::Mode::PoS}) {
    netsim::SimConfig c;
    c.consensus.mode = mode;
    c.name = mode == consensus::Mode::PoW ? "conservation-pow" : "conservation-pos";
    c.contract.epoch_mint = 30;
    auto m1 = spec("edge-1", NodeKind::EdgeServer, 1000);
    auto m2 = spec("edge-2", NodeKind::EdgeServer, 1000);
    m1.stake = 1;
    m2.stake = 3;
    auto heavy = device("device-1", 1000000, 2, 0);
    auto light = device("device-2", 1000000, 7, 0);
    light.customer.report = netsim::ReportBehavior{"device-1", 10, 0};
    c.nodes = {spec("admin", NodeKind::Admin, 100000), m1, m2, heavy, light, device("device-3", 1000000, 9, 0)};
    c.run.max_blocks = 200;
    out.push_back({c.name, std::string("200-block supply audit under ") + std::string(consensus::to_string(mode)), c});
  }
  return out;
}

}  // namespace

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> all = make_builtins();
  return all;
}

std::optional<netsim::SimConfig> find_builtin(std::string_view name) {
  for (const auto& b : builtin_scenarios()) {
    if (b.name == name) return b.config;
  }
  return std::nullopt;
}

}  // namespace edgechain::cli
