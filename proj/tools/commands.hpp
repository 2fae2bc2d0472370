#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace nhqsim::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // usage or config error
inline constexpr int kExitNumerical = 2;  // eigensolver / propagation failure
inline constexpr int kExitManifest = 3;   // reproduce manifest check failed

struct CommonOptions {
  std::string config_path;
  std::string out_override;  // --out; empty means unset
  int threads = 0;           // 0 = all cores
  long seed = 0;             // reserved, unused
};

// Resolved output directory: NHQSIM_OUT env > --out > config value.
std::filesystem::path resolve_outdir(const RunConfig& config,
                                     const CommonOptions& common);

int run_spectrum(const RunConfig& config, const CommonOptions& common);
int run_evolve(const RunConfig& config, const CommonOptions& common);
int run_map(const RunConfig& config, const CommonOptions& common);
int run_optimize(const RunConfig& config, const CommonOptions& common);
int run_fidelity(const RunConfig& config, const CommonOptions& common);
int run_reproduce(const RunConfig& config, const CommonOptions& common);
int run_show_config(const RunConfig& config, const CommonOptions& common);

}  // namespace nhqsim::cli
