#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nhqsim/table.hpp"

namespace nhqsim {

// One expected-vs-observed check. pass == (lo <= observed <= hi); one-sided
// bounds use +-infinity.
struct ManifestEntry {
  std::string name;
  double observed = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

ManifestEntry check_range(std::string name, double observed, double lo,
                          double hi);
ManifestEntry check_near(std::string name, double observed, double expected,
                         double tolerance);
ManifestEntry check_at_least(std::string name, double observed, double bound);
ManifestEntry check_at_most(std::string name, double observed, double bound);

struct ScenarioResult {
  std::string label;
  std::vector<ManifestEntry> manifest;
  std::vector<std::filesystem::path> files;
  bool all_pass = false;
};

// Labels understood by run_scenario, in canonical order.
const std::vector<std::string>& scenario_labels();

// Regenerates the data files behind one figure into `outdir` and
// evaluates its expected-values manifest (written as manifest.csv).
ScenarioResult run_scenario(const std::string& label,
                            const std::filesystem::path& outdir,
                            int threads = 0);

}  // namespace nhqsim
