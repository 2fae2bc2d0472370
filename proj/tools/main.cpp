#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "nhqsim/types.hpp"

namespace {

using nhqsim::cli::CommonOptions;
using nhqsim::cli::RunConfig;

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_path, "Run configuration (JSON)")
      ->required();
  cmd->add_option("--out", common.out_override,
                  "Output directory (overrides the config; NHQSIM_OUT "
                  "overrides this flag)");
  cmd->add_option("--threads", common.threads,
                  "Worker threads (default: all cores)");
  cmd->add_option("--seed", common.seed,
                  "Reserved; all computations are deterministic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nhqsim - driven dissipative qubit simulator: exceptional points, "
      "normalized non-unitary dynamics, multipartite entanglement"};
  app.require_subcommand(1);

  CommonOptions common;
  using Runner = std::function<int(const RunConfig&, const CommonOptions&)>;
  std::vector<std::pair<CLI::App*, Runner>> commands = {
      {app.add_subcommand("spectrum", "Eigenvalue sweep and EP scan"),
       nhqsim::cli::run_spectrum},
      {app.add_subcommand("evolve", "Trajectory and entanglement reports"),
       nhqsim::cli::run_evolve},
      {app.add_subcommand("map", "Entanglement map over (t, J)"),
       nhqsim::cli::run_map},
      {app.add_subcommand("optimize", "Locate an entanglement optimum"),
       nhqsim::cli::run_optimize},
      {app.add_subcommand("fidelity", "GHZ fidelity traces"),
       nhqsim::cli::run_fidelity},
      {app.add_subcommand("reproduce", "Regenerate a figure scenario"),
       nhqsim::cli::run_reproduce},
      {app.add_subcommand("show-config", "Echo the parsed configuration"),
       nhqsim::cli::run_show_config},
  };
  for (auto& [cmd, runner] : commands) add_common(cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nhqsim::cli::kExitUsage;
  }

  try {
    const RunConfig config = nhqsim::cli::load_config(common.config_path);
    for (auto& [cmd, runner] : commands) {
      if (cmd->parsed()) return runner(config, common);
    }
    return nhqsim::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nhqsim::cli::kExitUsage;
  } catch (const nhqsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return nhqsim::cli::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nhqsim::cli::kExitNumerical;
  }
}
