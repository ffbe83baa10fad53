#include <CLI11.hpp>
#include <iostream>

#include "edgechain/cli/commands.hpp"
#include "edgechain/cli/scenario.hpp"

int main(int argc, char** argv) {
  using namespace edgechain::cli;

  CLI::App app{"Edge-computing blockchain simulator"};
  app.footer(scenario_help() + "\nEDGECHAIN_SEED supplies the seed when --seed is absent.");
  app.require_subcommand(1);

  RunOptions run;
  std::optional<std::uint64_t> seed, blocks;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write metrics.csv, chain.json and summary.json");
  run_cmd->add_option("--scenario", run.scenario, "scenario file or built-in name")->required();
  run_cmd->add_option("--seed", seed, "simulation seed [EDGECHAIN_SEED, then run.seed]");
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();
  run_cmd->add_option("--blocks", blocks, "override run.max_blocks");

  std::string chain_path;
  auto* validate_cmd = app.add_subcommand("validate", "check links, roots, proofs and signatures of a chain.json");
  validate_cmd->add_option("--chain", chain_path, "chain.json path")->required();
  auto* replay_cmd = app.add_subcommand("replay", "re-execute a chain.json and compare state digests");
  replay_cmd->add_option("--chain", chain_path, "chain.json path")->required();
  auto* list_cmd = app.add_subcommand("list-scenarios", "print the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*run_cmd) {
    run.seed = seed;
    run.blocks = blocks;
    return run_command(run, std::cout, std::cerr);
  }
  if (*validate_cmd) return validate_command(chain_path, std::cout, std::cerr);
  if (*replay_cmd) return replay_command(chain_path, std::cout, std::cerr);
  if (*list_cmd) return list_scenarios_command(std::cout);
  return exit_code::usage;
}
