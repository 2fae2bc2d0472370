#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <numbers>

#include "nhqsim/entanglement.hpp"
#include "nhqsim/experiments.hpp"
#include "nhqsim/scenarios.hpp"
#include "nhqsim/spectral.hpp"
#include "nhqsim/table.hpp"

namespace nhqsim::cli {

namespace {

double task_number_or(const Json& task, const char* key, double fallback) {
  if (!task.contains(key)) return fallback;
  if (!task.at(key).is_number()) {
    throw std::invalid_argument(std::string("task.") + key + ": expected a number");
  }
  return task.at(key).get<double>();
}

std::array<double, 2> task_bounds(const Json& task, const char* key) {
  if (!task.contains(key)) {
    throw std::invalid_argument(std::string("task: missing '") + key + "'");
  }
  const Json& v = task.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw std::invalid_argument(std::string("task.") + key + ": expected [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void note_file(const std::filesystem::path& path) {
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

std::filesystem::path resolve_outdir(const RunConfig& config,
                                     const CommonOptions& common) {
  if (const char* env = std::getenv("NHQSIM_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  if (!common.out_override.empty()) return common.out_override;
  return config.output_directory;
}

int run_spectrum(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"parameter", "grid", "eig_tol", "vec_tol"}, "task");
  if (!config.task.contains("parameter") || !config.task.at("parameter").is_string()) {
    throw std::invalid_argument("task: missing string 'parameter'");
  }
  const SweepParameter param =
      parse_sweep_parameter(config.task.at("parameter").get<std::string>());
  if (!config.task.contains("grid")) {
    throw std::invalid_argument("task: missing 'grid'");
  }
  const std::vector<double> grid = parse_grid(config.task.at("grid"), "task.grid");
  const double eig_tol = task_number_or(config.task, "eig_tol", kDefaultEigTol);
  const double vec_tol = task_number_or(config.task, "vec_tol", kDefaultVecTol);

  const auto outdir = resolve_outdir(config, common);
  const SpectrumSweep sweep = spectrum_sweep(config.system, param, grid);
  const auto sweep_path = outdir / ("spectrum_" + to_string(param) + ".csv");
  write_csv(spectrum_sweep_table(sweep), sweep_path, config.precision);
  note_file(sweep_path);

  const auto scan = ep_scan(config.system, param, grid, eig_tol, vec_tol);
  const auto scan_path = outdir / ("ep_scan_" + to_string(param) + ".csv");
  write_csv(ep_scan_table(scan), scan_path, config.precision);
  note_file(scan_path);

  std::size_t clusters = 0;
  for (const auto& point : scan) clusters += point.clusters.size();
  std::cout << "grid points: " << grid.size() << ", EP clusters: " << clusters
            << "\n";
  for (bool ok : sweep.converged) {
    if (!ok) {
      std::cerr << "eigensolver failed at one or more grid points\n";
      return kExitNumerical;
    }
  }
  return kExitOk;
}

int run_evolve(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"times"}, "task");
  if (!config.task.contains("times")) {
    throw std::invalid_argument("task: missing 'times'");
  }
  const std::vector<double> times = parse_grid(config.task.at("times"), "task.times");
  const QuantumState psi0 = config.make_initial_state();
  const auto outdir = resolve_outdir(config, common);

  const auto traj_path = outdir / "trajectory.csv";
  write_csv(amplitude_traces(config.system, psi0, times), traj_path,
            config.precision);
  note_file(traj_path);

  const auto rep_path = outdir / "reports.csv";
  write_csv(report_table(config.system, psi0, times, common.threads), rep_path,
            config.precision);
  note_file(rep_path);
  return kExitOk;
}

int run_map(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"times", "couplings"}, "task");
  if (!config.task.contains("times") || !config.task.contains("couplings")) {
    throw std::invalid_argument("task: map needs 'times' and 'couplings'");
  }
  const std::vector<double> times = parse_grid(config.task.at("times"), "task.times");
  const std::vector<double> couplings =
      parse_grid(config.task.at("couplings"), "task.couplings");
  const QuantumState psi0 = config.make_initial_state();
  const auto outdir = resolve_outdir(config, common);

  const EntanglementMap map =
      entanglement_map(config.system, psi0, times, couplings, common.threads);
  const auto map_path = outdir / "map.csv";
  write_csv(entanglement_map_table(config.system, psi0, map, common.threads),
            map_path, config.precision);
  note_file(map_path);

  Table argmax;
  argmax.columns = {"time", "coupling", "value"};
  argmax.add_row({map.argmax.time, map.argmax.coupling, map.argmax.value});
  const auto argmax_path = outdir / "map_argmax.csv";
  write_csv(argmax, argmax_path, config.precision);
  note_file(argmax_path);
  std::cout << "argmax: t = " << map.argmax.time
            << ", J = " << map.argmax.coupling << ", value = " << map.argmax.value
            << "\n";
  return kExitOk;
}

int run_optimize(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"time_box", "coupling_box", "omega_box", "objective"},
             "task");
  SearchBox box;
  box.time = task_bounds(config.task, "time_box");
  box.coupling = task_bounds(config.task, "coupling_box");
  if (config.task.contains("omega_box")) {
    box.omega = task_bounds(config.task, "omega_box");
  }
  Objective objective = Objective::Tau123;
  if (config.task.contains("objective")) {
    if (!config.task.at("objective").is_string()) {
      throw std::invalid_argument("task.objective: expected a string");
    }
    objective = parse_objective(config.task.at("objective").get<std::string>());
  } else if (config.system.n() != 3) {
    objective = Objective::MinEntropy;
  }

  const QuantumState psi0 = config.make_initial_state();
  const Optimum opt =
      find_optimal(config.system, psi0, box, objective, common.threads);

  const auto outdir = resolve_outdir(config, common);
  Table t;
  t.columns = {"time", "coupling", "omega", "value"};
  t.add_row({opt.time, opt.coupling, opt.omega, opt.value});
  const auto path = outdir / "optimum.csv";
  write_csv(t, path, config.precision);
  note_file(path);
  std::cout << "optimum: t = " << opt.time << ", J = " << opt.coupling
            << ", omega = " << opt.omega << ", value = " << opt.value << "\n";
  return kExitOk;
}

int run_fidelity(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"times", "targets"}, "task");
  if (!config.task.contains("times")) {
    throw std::invalid_argument("task: missing 'times'");
  }
  const std::vector<double> times = parse_grid(config.task.at("times"), "task.times");

  std::vector<FidelityTarget> targets;
  const int n = config.system.n();
  if (config.task.contains("targets")) {
    const Json& arr = config.task.at("targets");
    if (!arr.is_array()) throw std::invalid_argument("task.targets: expected an array");
    for (const Json& spec : arr) {
      if (spec.is_string()) {
        const std::string name = spec.get<std::string>();
        if (name == "ghz_minus_i") {
          targets.push_back({name, ghz_state(n, -std::numbers::pi / 2)});
        } else if (name == "ghz_plus_i") {
          targets.push_back({name, ghz_state(n, std::numbers::pi / 2)});
        } else {
          throw std::invalid_argument(
              "task.targets: unknown named target '" + name +
              "' (valid: ghz_minus_i, ghz_plus_i, or a custom object)");
        }
      } else if (spec.is_object()) {
        check_keys(spec, {"label", "amplitudes"}, "task.targets[]");
        if (!spec.contains("label") || !spec.at("label").is_string() ||
            !spec.contains("amplitudes")) {
          throw std::invalid_argument(
              "task.targets[]: custom target needs 'label' and 'amplitudes'");
        }
        const Json& arr_a = spec.at("amplitudes");
        Vector amp(static_cast<Eigen::Index>(arr_a.size()));
        for (std::size_t i = 0; i < arr_a.size(); ++i) {
          const Json& pair = arr_a[i];
          if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("task.targets[]: amplitudes must be [re, im] pairs");
          }
          amp(static_cast<Eigen::Index>(i)) =
              Complex(pair[0].get<double>(), pair[1].get<double>());
        }
        targets.push_back({spec.at("label").get<std::string>(), QuantumState(n, amp)});
      } else {
        throw std::invalid_argument("task.targets: entries must be strings or objects");
      }
    }
  } else {
    targets.push_back({"ghz_minus_i", ghz_state(n, -std::numbers::pi / 2)});
    targets.push_back({"ghz_plus_i", ghz_state(n, std::numbers::pi / 2)});
  }

  const QuantumState psi0 = config.make_initial_state();
  const auto outdir = resolve_outdir(config, common);
  const auto path = outdir / "fidelities.csv";
  write_csv(fidelity_traces(config.system, psi0, targets, times), path,
            config.precision);
  note_file(path);
  return kExitOk;
}

int run_reproduce(const RunConfig& config, const CommonOptions& common) {
  check_keys(config.task, {"label"}, "task");
  if (!config.task.contains("label") || !config.task.at("label").is_string()) {
    throw std::invalid_argument("task: reproduce needs a string 'label'");
  }
  const std::string label = config.task.at("label").get<std::string>();
  const auto outdir = resolve_outdir(config, common) / label;
  const ScenarioResult result = run_scenario(label, outdir, common.threads);
  for (const auto& path : result.files) note_file(path);
  for (const ManifestEntry& e : result.manifest) {
    std::cout << (e.pass ? "pass" : "FAIL") << "  " << e.name << " = "
              << e.observed << "  (expected [" << e.lo << ", " << e.hi << "])\n";
  }
  std::cout << result.label << ": "
            << (result.all_pass ? "all checks passed" : "manifest check failed")
            << "\n";
  return result.all_pass ? kExitOk : kExitManifest;
}

int run_show_config(const RunConfig& config, const CommonOptions& common) {
  (void)common;
  std::cout << canonical_json(config).dump(2) << "\n";
  return kExitOk;
}

}  // namespace nhqsim::cli
