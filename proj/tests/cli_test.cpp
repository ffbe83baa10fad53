#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "edgechain/cli/artifacts.hpp"
#include "edgechain/cli/commands.hpp"
#include "edgechain/cli/scenario.hpp"
#include "edgechain/ledger/json.hpp"

using namespace edgechain;
using namespace edgechain::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("edgechain-cli-" + tag + "-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int run(const std::string& scenario, const fs::path& out, std::optional<std::uint64_t> blocks = {}) {
  std::ostringstream o, e;
  return run_command({scenario, 1, out.string(), blocks}, o, e);
}

int validate(const fs::path& p) {
  std::ostringstream o, e;
  return validate_command(p.string(), o, e);
}

int replay(const fs::path& p) {
  std::ostringstream o, e;
  return replay_command(p.string(), o, e);
}

const char* minimal_json = R"({"nodes":[{"name":"a","kind":"Admin","balance":1000},
  {"name":"m","kind":"EdgeServer"},{"name":"d","kind":"Customer","balance":"500","customer":{"max_submits":3}}],
  "run":{"max_blocks":5}})";

}  // namespace

TEST_CASE("scenario parsing") {
  SUBCASE("defaults") {
    auto c = scenario_from_json(json::parse(minimal_json));
    CHECK(c.nodes.size() == 3);
    CHECK(c.nodes[2].balance == 500);
    CHECK(c.nodes[2].customer.max_submits == 3);
    CHECK(c.nodes[2].customer.submit_period == 10);
    CHECK(c.contract.epoch_length == 20);
    CHECK(c.gas == contract::GasSchedule{});
    CHECK(c.allow_all);
    CHECK(c.run.max_blocks == 5);
  }
  SUBCASE("unknown keys are rejected at every level") {
    for (const char* bad : {R"({"nodes":[],"extra":1})", R"({"nodes":[{"name":"a","kind":"Admin","colour":1}]})",
                            R"({"nodes":[],"contract":{"quota":{"window":3}}})",
                            R"({"nodes":[],"gas_schedule":{"submit":3}})"}) {
      CHECK_THROWS_AS(scenario_from_json(json::parse(bad)), ledger::FormatError);
    }
  }
  SUBCASE("type errors") {
    CHECK_THROWS(scenario_from_json(json::parse(R"({"nodes":[],"run":{"max_blocks":-1}})")));
    CHECK_THROWS(scenario_from_json(json::parse(R"({"nodes":[],"consensus":{"mode":"PoA"}})")));
    CHECK_THROWS(scenario_from_json(json::parse(R"({"nodes":[{"name":"a","kind":"Miner"}]})")));
    CHECK_THROWS(scenario_from_json(json::parse(R"({"consensus":{}})")));
  }
  SUBCASE("built-ins survive a round trip") {
    for (const auto& b : builtin_scenarios()) {
      CHECK(scenario_from_json(scenario_to_json(b.config)) == b.config);
      CHECK_FALSE(netsim::check_config(b.config).has_value());
    }
  }
}

TEST_CASE("property: random scenarios round-trip through JSON") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    netsim::SimConfig c;
    c.name = "r" + std::to_string(i);
    c.consensus.mode = rng() % 2 ? consensus::Mode::PoW : consensus::Mode::PoS;
    c.consensus.block_reward = Amount(rng()) << 40;
    c.contract.quota.penalty_rate = rng() % 1000;
    c.gas.migrate = rng() % 1000;
    c.allow_all = rng() % 2;
    for (int n = 0; n < 1 + static_cast<int>(rng() % 5); ++n) {
      netsim::NodeSpec s;
      s.name = "n" + std::to_string(n);
      s.kind = static_cast<netsim::NodeKind>(rng() % 4);
      s.balance = rng() % 100000;
      if (s.kind == netsim::NodeKind::Customer) {
        s.customer.max_submits = rng() % 9;
        if (rng() % 2) s.customer.firmware_version = rng() % 3;
        if (rng() % 2) s.customer.report = netsim::ReportBehavior{"n0", 1 + rng() % 5, rng() % 3};
      }
      if (s.kind == netsim::NodeKind::EdgeServer) s.mining = rng() % 2;
      if (s.kind == netsim::NodeKind::Admin) s.migrations.push_back({rng() % 50, 2, "u", 7});
      if (!c.allow_all) c.allowlist.push_back(s.name);
      c.nodes.push_back(s);
    }
    if (rng() % 2) c.latency.partitions.push_back({1, 9, {{"n0"}, {"n1", "n2"}}});
    CHECK(scenario_from_json(scenario_to_json(c)) == c);
  }
}

TEST_CASE("seed precedence") {
  CHECK(resolve_seed(3, "9", 1) == 3);
  CHECK(resolve_seed({}, "9", 1) == 9);
  CHECK(resolve_seed({}, nullptr, 1) == 1);
  CHECK(resolve_seed({}, "", 1) == 1);
  CHECK(resolve_seed({}, "x9", 1) == 1);
}

TEST_CASE("run writes the three artifacts") {
  TempDir dir("run");
  write(dir.path / "s.json", minimal_json);
  REQUIRE(run((dir.path / "s.json").string(), dir.path / "out") == 0);
  auto csv = read(dir.path / "out" / "metrics.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "tick,height,node,event,tx_hash,gas_used,fee,balance_after,detail");
  auto summary = json::parse(read(dir.path / "out" / "summary.json"));
  CHECK(summary.at("height") == 5);
  CHECK(summary.at("nodes").at("d").at("transactions") == 4);
  auto chain = json::parse(read(dir.path / "out" / "chain.json"));
  CHECK(chain.at("blocks").size() == 6);
  CHECK(scenario_from_json(chain.at("scenario")).run.seed == 1);
}

TEST_CASE("invalid scenarios exit 2 without output") {
  TempDir dir("bad");
  for (std::string text : {std::string("{not json"), std::string(""), std::string(R"({"nodes":[]})"),
                           std::string(R"({"nodes":[{"name":"a","kind":"Admin"},{"name":"a","kind":"Admin"}]})")}) {
    write(dir.path / "s.json", text);
    CHECK(run((dir.path / "s.json").string(), dir.path / "out") == 2);
    CHECK_FALSE(fs::exists(dir.path / "out"));
  }
  CHECK(run("no-such-scenario", dir.path / "out") == 2);
}

TEST_CASE("validate and replay") {
  TempDir dir("chain");
  REQUIRE(run("fig3", dir.path / "out", 25) == 0);
  const auto chain_path = dir.path / "out" / "chain.json";
  const auto original = read(chain_path);
  CHECK(validate(chain_path) == 0);
  CHECK(replay(chain_path) == 0);
  CHECK(replay(chain_path) == 0);

  SUBCASE("empty file") {
    write(chain_path, "");
    CHECK(validate(chain_path) == 2);
  }
  SUBCASE("missing file") { CHECK(validate(dir.path / "nope.json") == 2); }
  SUBCASE("altered hex digit") {
    auto text = original;
    auto at = text.find("\"tx_root\"", text.find("\"height\": 7"));
    at = text.find('"', at + 10) + 5;
    text[at] = text[at] == '0' ? '1' : '0';
    write(chain_path, text);
    std::ostringstream o, e;
    CHECK(validate_command(chain_path.string(), o, e) == 4);
    CHECK(e.str().find("height 7") != std::string::npos);
  }
  SUBCASE("gas schedule changed under a valid chain") {
    auto j = json::parse(original);
    j["scenario"]["gas_schedule"]["submit_data"] = 11;
    write(chain_path, j.dump(1));
    CHECK(validate(chain_path) == 0);
    CHECK(replay(chain_path) == 5);
  }
  SUBCASE("footer digest tampered") {
    auto j = json::parse(original);
    j["footer"]["contract_state_digest"] = std::string(64, '0');
    write(chain_path, j.dump(1));
    CHECK(validate(chain_path) == 0);
    CHECK(replay(chain_path) == 5);
  }
  SUBCASE("footer tip tampered") {
    auto j = json::parse(original);
    j["footer"]["tip"] = std::string(64, '1');
    write(chain_path, j.dump(1));
    CHECK(validate(chain_path) == 4);
  }
}

TEST_CASE("list-scenarios") {
  std::ostringstream out;
  CHECK(list_scenarios_command(out) == 0);
  for (const char* name : {"fig3", "fig4", "version-gating", "partition", "conservation-pow", "conservation-pos"}) {
    CHECK(out.str().find(name) != std::string::npos);
  }
}

TEST_CASE("csv quoting") {
  MetricRow r;
  r.node = "a,b";
  r.detail = "say \"hi\"";
  auto csv = metrics_csv({r});
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
}
