#include "edgechain/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgechain/cli/artifacts.hpp"
#include "edgechain/cli/scenario.hpp"
#include "edgechain/ledger/chain.hpp"
#include "edgechain/ledger/json.hpp"
#include "edgechain/netsim/sim.hpp"

namespace edgechain::cli {

using nlohmann::json;

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t scenario_seed) {
  if (flag) return *flag;
  if (env && *env) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return scenario_seed;
}

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int run_command(const RunOptions& o, std::ostream& out, std::ostream& err) {
  netsim::SimConfig config;
  if (auto text = slurp(o.scenario)) {
    try {
      config = scenario_from_json(json::parse(*text));
    } catch (const std::exception& e) {
      err << "invalid scenario: " << e.what() << '\n';
      return exit_code::invalid_input;
    }
  } else if (auto builtin = find_builtin(o.scenario)) {
    config = *builtin;
  } else {
    err << "invalid scenario: no file or built-in named '" << o.scenario << "'\n";
    return exit_code::invalid_input;
  }
  if (o.blocks) config.run.max_blocks = *o.blocks;
  config.run.seed = resolve_seed(o.seed, std::getenv("EDGECHAIN_SEED"), config.run.seed);

  auto sim = netsim::init_sim(config, config.run.seed);
  if (!sim) {
    err << "invalid scenario: " << sim.error().rule << '\n';
    return exit_code::invalid_input;
  }
  std::string csv, chain, summary;
  try {
    netsim::run_until(*sim.value(), {});
    auto report = analyse(*sim.value());
    csv = metrics_csv(report.rows);
    chain = chain_json(*sim.value()).dump(1) + "\n";
    summary = summary_json(*sim.value(), report).dump(2) + "\n";
  } catch (const contract::InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return exit_code::invariant_violation;
  }

  std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !write_file(dir / "metrics.csv", csv) || !write_file(dir / "chain.json", chain) ||
      !write_file(dir / "summary.json", summary)) {
    err << "cannot write outputs to " << dir << '\n';
    return exit_code::usage;
  }
  const auto& observer = sim.value()->observer();
  out << config.name << ": height " << observer.height() << " tip " << observer.tip().hex() << " seed "
      << config.run.seed << '\n';
  return exit_code::ok;
}

ChainFile read_chain_file(const std::string& text) {
  auto j = json::parse(text);
  ledger::require_keys(j, {"scenario", "seed", "blocks", "receipts", "footer"}, "chain");
  ChainFile f;
  if (!j.contains("scenario")) throw ledger::FormatError("chain: scenario is required");
  f.config = scenario_from_json(j.at("scenario"));
  f.seed = ledger::u64_field(j, "seed");
  if (!j.contains("blocks") || !j.at("blocks").is_array()) throw ledger::FormatError("chain: blocks must be an array");
  for (const auto& b : j.at("blocks")) f.blocks.push_back(ledger::block_from_json(b));
  if (!j.contains("receipts") || !j.at("receipts").is_array()) {
    throw ledger::FormatError("chain: receipts must be an array");
  }
  for (const auto& rs : j.at("receipts")) {
    if (!rs.is_array()) throw ledger::FormatError("chain: receipts entries must be arrays");
    auto& list = f.receipts.emplace_back();
    for (const auto& r : rs) list.push_back(contract::receipt_from_json(r));
  }
  if (!j.contains("footer")) throw ledger::FormatError("chain: footer is required");
  const auto& footer = j.at("footer");
  ledger::require_keys(footer, {"height", "tip", "contract_state_digest", "world_state_digest"}, "footer");
  f.footer_height = ledger::u64_field(footer, "height");
  f.footer_tip = ledger::fixed_field<Digest256>(footer, "tip");
  f.footer_contract_digest = ledger::fixed_field<Digest256>(footer, "contract_state_digest");
  f.footer_world_digest = ledger::fixed_field<Digest256>(footer, "world_state_digest");
  return f;
}

namespace {

struct Loaded {
  ChainFile file;
  std::unique_ptr<netsim::Sim> sim;
};

/// Parses and validates; on failure returns the exit code.
std::variant<Loaded, int> load_and_validate(const std::string& path, std::ostream& err) {
  auto text = slurp(path);
  if (!text) {
    err << "cannot read " << path << '\n';
    return exit_code::invalid_input;
  }
  Loaded l;
  try {
    l.file = read_chain_file(*text);
  } catch (const std::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  // The embedded scenario rebuilds the keys, stakes and proof rules.
  auto sim = netsim::init_sim(l.file.config, l.file.seed);
  if (!sim) {
    err << "parse error: embedded scenario is invalid: " << sim.error().rule << '\n';
    return exit_code::invalid_input;
  }
  l.sim = std::move(sim).value();
  const auto& blocks = l.file.blocks;

  auto fail = [&](std::uint64_t height, std::string_view why) {
    err << "invalid chain at height " << height << ": " << why << '\n';
    return exit_code::validation_failed;
  };
  if (auto bad = ledger::validate_chain(blocks, l.sim->context().proof_check); !bad) {
    return fail(bad.error().height, ledger::to_string(bad.error().code));
  }
  for (const auto& b : blocks) {
    for (const auto& tx : b.transactions) {
      if (!l.sim->scheme().verify(tx.sender, ledger::signing_preimage(tx), tx.signature)) {
        return fail(b.header.height, "bad transaction signature");
      }
    }
  }
  const auto last = blocks.back().header.height;
  if (l.file.footer_height != last) return fail(last, "footer height does not match the last block");
  if (l.file.footer_tip != ledger::hash_block(blocks.back().header)) {
    return fail(last, "footer tip does not match the last block");
  }
  if (l.file.receipts.size() != blocks.size()) return fail(last, "receipt lists do not match the blocks");
  return l;
}

}  // namespace

int validate_command(const std::string& path, std::ostream& out, std::ostream& err) {
  auto loaded = load_and_validate(path, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const auto& l = std::get<Loaded>(loaded);
  out << "valid: height " << l.file.footer_height << " tip " << l.file.footer_tip.hex() << '\n';
  return exit_code::ok;
}

int replay_command(const std::string& path, std::ostream& out, std::ostream& err) {
  auto loaded = load_and_validate(path, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  auto& l = std::get<Loaded>(loaded);
  const auto& blocks = l.file.blocks;
  auto state = l.sim->genesis();
  try {
    for (std::size_t h = 1; h < blocks.size(); ++h) {
      auto outcome = contract::apply_block(state, blocks[h], l.sim->context().params, &l.sim->scheme());
      if (!outcome) {
        err << "replay diverged at height " << h << ": transaction " << outcome.error().tx_index
            << " is not executable\n";
        return exit_code::replay_mismatch;
      }
      if (outcome.value().receipts != l.file.receipts[h]) {
        err << "replay diverged at height " << h << ": receipts differ\n";
        return exit_code::replay_mismatch;
      }
      state = std::move(outcome.value().state);
    }
  } catch (const contract::InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return exit_code::invariant_violation;
  }
  auto contract_digest = contract::state_digest(state.contract);
  auto world_digest = contract::world_digest(state);
  if (contract_digest != l.file.footer_contract_digest || world_digest != l.file.footer_world_digest) {
    err << "replay digest mismatch: contract " << contract_digest.hex() << " recorded "
        << l.file.footer_contract_digest.hex() << '\n';
    return exit_code::replay_mismatch;
  }
  out << "replayed " << blocks.size() - 1 << " blocks: contract_state_digest " << contract_digest.hex()
      << " world_state_digest " << world_digest.hex() << '\n';
  return exit_code::ok;
}

int list_scenarios_command(std::ostream& out) {
  for (const auto& b : builtin_scenarios()) out << b.name << "\t" << b.description << '\n';
  return exit_code::ok;
}

}  // namespace edgechain::cli
