#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgechain/contract/receipt.hpp"
#include "edgechain/ledger/block.hpp"
#include "edgechain/netsim/config.hpp"

namespace edgechain::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int invalid_input = 2;
inline constexpr int invariant_violation = 3;
inline constexpr int validation_failed = 4;
inline constexpr int replay_mismatch = 5;
}  // namespace exit_code

/// The flag wins; EDGECHAIN_SEED is the fallback; then the scenario's own.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t scenario_seed);

struct RunOptions {
  /// File path, or the name of a built-in scenario.
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<std::uint64_t> blocks;
};

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);
int validate_command(const std::string& chain_path, std::ostream& out, std::ostream& err);
int replay_command(const std::string& chain_path, std::ostream& out, std::ostream& err);
int list_scenarios_command(std::ostream& out);

/// Parsed chain.json.
struct ChainFile {
  netsim::SimConfig config;
  std::uint64_t seed = 0;
  std::vector<ledger::Block> blocks;
  std::vector<std::vector<contract::Receipt>> receipts;
  std::uint64_t footer_height = 0;
  Digest256 footer_tip;
  Digest256 footer_contract_digest;
  Digest256 footer_world_digest;
};

/// Throws ledger::FormatError or nlohmann::json::exception.
ChainFile read_chain_file(const std::string& text);

}  // namespace edgechain::cli
