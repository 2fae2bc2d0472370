#include "nhqsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nhqsim/dynamics.hpp"
#include "nhqsim/entanglement.hpp"
#include "nhqsim/experiments.hpp"
#include "nhqsim/hamiltonian.hpp"
#include "nhqsim/spectral.hpp"

namespace nhqsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGamma = 6.0;
constexpr double kOmegaEp = 1.5;          // gamma / 4
constexpr double kOmegaTri = 1.576;       // tripartite optimum drive
constexpr double kCouplingTri = 1e-3;
constexpr double kOmegaAllF = 1.600;      // |fff> start operating point
constexpr double kOmegaHermitian = 10.0;  // strong-drive Hermitian regime
constexpr double kCouplingHermitian = 0.4;

ManifestEntry make_entry(std::string name, double observed, double lo,
                         double hi) {
  ManifestEntry e;
  e.name = std::move(name);
  e.observed = observed;
  e.lo = lo;
  e.hi = hi;
  e.pass = std::isfinite(observed) ? (observed >= lo && observed <= hi) : false;
  return e;
}

std::string manifest_csv(const std::vector<ManifestEntry>& entries) {
  std::string out = "name,observed,expected_lo,expected_hi,status\n";
  char buf[64];
  for (const ManifestEntry& e : entries) {
    out += e.name;
    for (double v : {e.observed, e.lo, e.hi}) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out += buf;
    }
    out += e.pass ? ",pass\n" : ",fail\n";
  }
  return out;
}

QuantumState state_at(const SystemConfig& cfg, const QuantumState& psi0,
                      double t) {
  return propagate(build_hamiltonian(cfg), psi0, t).state;
}

struct Peak {
  double time = 0.0;
  double value = -kInf;
};

Peak peak_overlap(const Matrix& h, const QuantumState& psi0,
                  const QuantumState& target, double lo, double hi,
                  double step) {
  Peak peak;
  for (double t = lo; t <= hi + 0.5 * step; t += step) {
    const double f = propagate(h, psi0, t).state.overlap(target);
    if (f > peak.value) peak = {t, f};
  }
  return peak;
}

// ---- fig1: EP structure of the uncoupled spectra ----

ScenarioResult scenario_fig1(const std::filesystem::path& outdir, int threads) {
  (void)threads;
  ScenarioResult result;
  result.label = "fig1_spectra";

  const SystemConfig base = SystemConfig::uniform(3, kOmegaEp, 0.0, kGamma, 0.0);
  const std::vector<double> grid = linear_grid(1.0, 2.0, 201);

  const SpectrumSweep sweep = spectrum_sweep(base, SweepParameter::Omega, grid);
  const auto sweep_path = outdir / "spectrum_omega.csv";
  write_csv(spectrum_sweep_table(sweep), sweep_path);
  result.files.push_back(sweep_path);

  const auto scan = ep_scan(base, SweepParameter::Omega, grid);
  const auto scan_path = outdir / "ep_scan_omega.csv";
  write_csv(ep_scan_table(scan), scan_path);
  result.files.push_back(scan_path);

  // 2^n-th order EP at Omega = gamma/4 with E_EP = -i n gamma / 4.
  for (int n = 1; n <= 3; ++n) {
    const SystemConfig cfg = SystemConfig::uniform(n, kOmegaEp, 0.0, kGamma, 0.0);
    const SpectralDecomposition d = eigendecompose(build_hamiltonian(cfg));
    const Complex e_ep(0.0, -0.25 * kGamma * n);
    double dev = 0.0;
    for (Eigen::Index m = 0; m < d.dim(); ++m) {
      dev = std::max(dev, std::abs(d.eigenvalues(m) - e_ep));
    }
    const std::string tag = "n" + std::to_string(n);
    result.manifest.push_back(
        make_entry(tag + "_eigenvalue_dev_from_EP", dev, 0.0, 1e-8));
    const auto clusters = detect_eps(d);
    result.manifest.push_back(make_entry(
        tag + "_ep_cluster_count", static_cast<double>(clusters.size()), 1, 1));
    const double order =
        clusters.empty() ? 0.0 : static_cast<double>(clusters.front().order_estimate);
    const double expect = std::pow(2.0, n);
    result.manifest.push_back(
        make_entry(tag + "_ep_order", order, expect, expect));
  }

  // PT-symmetric regime: equal imaginary parts -n gamma / 4 above the EP.
  double im_dev = 0.0;
  for (double omega : {1.51, 1.6, 1.8, 2.0}) {
    const SystemConfig cfg = SystemConfig::uniform(3, omega, 0.0, kGamma, 0.0);
    const SpectralDecomposition d = eigendecompose(build_hamiltonian(cfg));
    for (Eigen::Index m = 0; m < d.dim(); ++m) {
      im_dev = std::max(im_dev, std::abs(d.eigenvalues(m).imag() + 0.75 * kGamma));
    }
  }
  result.manifest.push_back(
      make_entry("pt_regime_imag_dev", im_dev, 0.0, 1e-9));
  return result;
}

// ---- fig2: tripartite entanglement map and its optimum ----

ScenarioResult scenario_fig2(const std::filesystem::path& outdir, int threads) {
  ScenarioResult result;
  result.label = "fig2_map";

  const SystemConfig cfg =
      SystemConfig::uniform(3, kOmegaTri, 0.0, kGamma, kCouplingTri);
  const QuantumState psi0 = QuantumState::coherent(3);

  const std::vector<double> times = linear_grid(0.0, 6.5, 400);
  const std::vector<double> couplings = log_grid(1e-6, 1e-1, 60);
  const EntanglementMap map =
      entanglement_map(cfg, psi0, times, couplings, threads);
  const auto map_path = outdir / "map.csv";
  write_csv(entanglement_map_table(cfg, psi0, map, threads), map_path);
  result.files.push_back(map_path);

  SearchBox box;
  box.time = {3.0, 3.5};
  box.coupling = {2e-4, 5e-3};
  const Optimum opt = find_optimal(cfg, psi0, box, Objective::Tau123, threads);

  Table opt_table;
  opt_table.columns = {"time", "coupling", "tau123"};
  opt_table.add_row({opt.time, opt.coupling, opt.value});
  const auto opt_path = outdir / "optimum.csv";
  write_csv(opt_table, opt_path);
  result.files.push_back(opt_path);

  result.manifest.push_back(make_entry("optimum_time", opt.time, 3.21, 3.26));
  result.manifest.push_back(check_near("optimum_tau123", opt.value, 0.980, 0.010));
  result.manifest.push_back(
      check_range("optimum_coupling", opt.coupling, 5e-4, 2e-3));

  SystemConfig opt_cfg = cfg;
  opt_cfg.coupling.setConstant(opt.coupling);
  opt_cfg.coupling.diagonal().setZero();
  const EntanglementReport rep = report(state_at(opt_cfg, psi0, opt.time), opt.time);
  for (int j = 0; j < 3; ++j) {
    result.manifest.push_back(check_near(
        "optimum_S_" + std::to_string(j + 1), rep.entropies[static_cast<std::size_t>(j)],
        0.690, 0.005));
  }

  const int keep[] = {1};
  const double p = purity(partial_trace(state_at(cfg, psi0, 3.232), keep));
  result.manifest.push_back(check_near("purity_at_3.232", p, 0.5033, 0.0020));

  // Uncoupled qubits stay in product states: tau123 never grows.
  SystemConfig uncoupled = cfg;
  uncoupled.coupling.setZero();
  double tau_max = 0.0;
  const Matrix h0 = build_hamiltonian(uncoupled);
  for (double t : linear_grid(0.1, 6.5, 65)) {
    tau_max = std::max(tau_max, three_tangle(propagate(h0, psi0, t).state));
  }
  result.manifest.push_back(check_at_most("uncoupled_tau_max", tau_max, 0.01));
  return result;
}

// ---- fig3: amplitude/phase traces and Bloch trajectories ----

ScenarioResult scenario_fig3(const std::filesystem::path& outdir, int threads) {
  (void)threads;
  ScenarioResult result;
  result.label = "fig3_traces";

  const QuantumState psi0 = QuantumState::coherent(3);
  const std::vector<double> times = linear_grid(0.0, 6.5, 651);

  const SystemConfig hq_j0 = SystemConfig::uniform(3, kOmegaTri, 0.0, 0.0, 0.0);
  const SystemConfig nhq_j0 = SystemConfig::uniform(3, kOmegaTri, 0.0, kGamma, 0.0);
  const SystemConfig nhq_j = SystemConfig::uniform(3, kOmegaTri, 0.0, kGamma, kCouplingTri);

  for (const auto& [cfg, name] :
       {std::pair{&hq_j0, "traces_hermitian_j0.csv"},
        std::pair{&nhq_j0, "traces_nonhermitian_j0.csv"},
        std::pair{&nhq_j, "traces_nonhermitian_coupled.csv"}}) {
    const auto path = outdir / name;
    write_csv(amplitude_traces(*cfg, psi0, times), path);
    result.files.push_back(path);
  }

  // Equal moduli 1/(2 sqrt 2) at t = 0.
  double t0_dev = 0.0;
  for (Eigen::Index m = 0; m < psi0.dim(); ++m) {
    t0_dev = std::max(t0_dev, std::abs(std::abs(psi0.amplitude(m)) - 0.25 * std::numbers::sqrt2));
  }
  result.manifest.push_back(check_at_most("t0_amplitude_dev", t0_dev, 1e-12));

  // Periods: pi/Omega for Hermitian qubits, 4pi/sqrt(16 Omega^2 - gamma^2)
  // for the lossy ones.
  const double t_h = std::numbers::pi / kOmegaTri;
  result.manifest.push_back(check_at_least(
      "hermitian_revival_fidelity",
      state_at(hq_j0, psi0, t_h).overlap(psi0), 0.9999));
  const double t_nh =
      4.0 * std::numbers::pi /
      std::sqrt(16.0 * kOmegaTri * kOmegaTri - kGamma * kGamma);
  result.manifest.push_back(check_at_least(
      "nonhermitian_revival_fidelity",
      state_at(nhq_j0, psi0, t_nh).overlap(psi0), 0.999));

  // Discrete pi-phase exchange of |fff> at pi/(4 Omega), Hermitian case.
  const double t_x = std::numbers::pi / (4.0 * kOmegaTri);
  result.manifest.push_back(check_at_most(
      "phase_exchange_amp_fff",
      std::abs(state_at(hq_j0, psi0, t_x).amplitude(0)), 1e-6));
  const double arg_before = std::arg(state_at(hq_j0, psi0, t_x - 0.05).amplitude(0));
  const double arg_after = std::arg(state_at(hq_j0, psi0, t_x + 0.05).amplitude(0));
  double jump = std::abs(arg_after - arg_before);
  if (jump > std::numbers::pi) jump = 2.0 * std::numbers::pi - jump;
  result.manifest.push_back(check_near("phase_exchange_jump", jump,
                                       std::numbers::pi, 0.01));

  // Amplitude rearrangement toward |fff>, |eee> at the optimum.
  const QuantumState at_opt = state_at(nhq_j, psi0, 3.233);
  result.manifest.push_back(check_at_least(
      "amp_fff_at_optimum", std::abs(at_opt.amplitude(0)), 0.5));
  result.manifest.push_back(check_at_least(
      "amp_eee_at_optimum", std::abs(at_opt.amplitude(7)), 0.45));

  // Bloch trajectories: reduced qubit 1.
  const BlochTrajectory coh =
      bloch_trajectory(nhq_j, psi0, linear_grid(0.0, 3.232, 405), 1);
  const auto coh_path = outdir / "bloch_coherent.csv";
  write_csv(coh.table, coh_path);
  result.files.push_back(coh_path);
  result.manifest.push_back(
      check_near("bloch_coherent_final_purity", coh.final_purity, 0.5033, 0.0020));

  const SystemConfig allf_cfg =
      SystemConfig::uniform(3, kOmegaAllF, 0.0, kGamma, kCouplingTri);
  const BlochTrajectory allf = bloch_trajectory(
      allf_cfg, QuantumState::all_f(3), linear_grid(0.0, 5.325, 533), 1);
  const auto allf_path = outdir / "bloch_allf.csv";
  write_csv(allf.table, allf_path);
  result.files.push_back(allf_path);
  result.manifest.push_back(
      check_near("bloch_allf_final_purity", allf.final_purity, 0.512, 0.005));

  // Hermitian uncoupled qubits stay on the sphere surface.
  const BlochTrajectory hq_bloch =
      bloch_trajectory(hq_j0, psi0, linear_grid(0.0, 6.5, 651), 1);
  const auto hq_bloch_path = outdir / "bloch_hermitian_j0.csv";
  write_csv(hq_bloch.table, hq_bloch_path);
  result.files.push_back(hq_bloch_path);
  double min_r = kInf;
  for (const auto& row : hq_bloch.table.rows) min_r = std::min(min_r, row[4]);
  result.manifest.push_back(
      check_at_least("hermitian_bloch_min_radius", min_r, 1.0 - 1e-6));
  return result;
}

// ---- fig4: four-qubit entanglement entropies ----

ScenarioResult scenario_fig4(const std::filesystem::path& outdir, int threads) {
  ScenarioResult result;
  result.label = "fig4_fourqubit";

  const std::vector<FourQubitParameterSet> sets = {
      {1.598, 1e-3}, {1.537, 1e-4}, {1.514, 1e-5}};
  const std::vector<double> times = linear_grid(0.0, 40.0, 801);
  const std::vector<Table> tables =
      four_qubit_entropy_traces(sets, times, kGamma, threads);

  std::vector<double> peak_times;
  const QuantumState psi0 = QuantumState::coherent(4);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto path = outdir / ("fourqubit_set" + std::to_string(s + 1) + ".csv");
    write_csv(tables[s], path);
    result.files.push_back(path);

    // Coarse argmax from the trace, then a local refinement pass.
    const auto& rows = tables[s].rows;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][5] > rows[best][5]) best = i;
    }
    const SystemConfig cfg =
        SystemConfig::uniform(4, sets[s].omega, 0.0, kGamma, sets[s].coupling);
    const Matrix h = build_hamiltonian(cfg);
    double peak_t = rows[best][0];
    double peak_v = rows[best][5];
    for (double t = std::max(0.0, peak_t - 0.06); t <= peak_t + 0.06; t += 0.002) {
      const QuantumState state = propagate(h, psi0, t).state;
      double min_s = kInf;
      for (int j = 1; j <= 4; ++j) {
        const int keep[] = {j};
        min_s = std::min(min_s, entanglement_entropy(partial_trace(state, keep)));
      }
      if (min_s > peak_v) {
        peak_v = min_s;
        peak_t = t;
      }
    }
    peak_times.push_back(peak_t);
    const std::string tag = "set" + std::to_string(s + 1);
    result.manifest.push_back(check_at_least(tag + "_peak_min_entropy", peak_v, 0.65));
    if (s == 0) {
      result.manifest.push_back(check_near(tag + "_peak_time", peak_t, 2.85, 0.10));
    }

    double spread = 0.0;
    for (const auto& row : rows) {
      const double lo = std::min({row[1], row[2], row[3], row[4]});
      const double hi = std::max({row[1], row[2], row[3], row[4]});
      spread = std::max(spread, hi - lo);
    }
    // The weakest-coupling set sits closest to the EP, where eps-level
    // arithmetic asymmetry is amplified to a few 1e-9 over the 40 us
    // horizon; its bound reflects that measured floor.
    result.manifest.push_back(
        check_at_most(tag + "_entropy_spread", spread, s == 2 ? 1e-8 : 1e-9));
  }
  // Weaker coupling entangles later.
  result.manifest.push_back(check_at_least(
      "peak_time_gap_set2_set1", peak_times[1] - peak_times[0], 1e-3));
  result.manifest.push_back(check_at_least(
      "peak_time_gap_set3_set2", peak_times[2] - peak_times[1], 1e-3));
  return result;
}

// ---- fig5: Hermitian-limit GHZ generation ----

ScenarioResult scenario_fig5(const std::filesystem::path& outdir, int threads) {
  (void)threads;
  ScenarioResult result;
  result.label = "fig5_hermitian";

  const std::vector<double> times = linear_grid(7.6, 8.1, 1001);
  for (int n : {3, 4}) {
    const SystemConfig cfg =
        SystemConfig::uniform(n, kOmegaHermitian, 0.0, 0.0, kCouplingHermitian);
    const QuantumState psi0 = QuantumState::all_f(n);
    const std::vector<FidelityTarget> targets = {
        {"ghz_minus_i", ghz_state(n, -std::numbers::pi / 2)},
        {"ghz_plus_i", ghz_state(n, std::numbers::pi / 2)}};
    const auto path = outdir / ("fidelities_n" + std::to_string(n) + ".csv");
    write_csv(fidelity_traces(cfg, psi0, targets, times), path);
    result.files.push_back(path);

    const Matrix h = build_hamiltonian(cfg);
    struct Window {
      const char* name;
      int target;  // 0 = minus, 1 = plus
      double lo, hi;
    };
    // Peaks alternate between the two relative phases; the windows track
    // the reported generation times 7.775/7.932 (n=3), 7.852/8.009 (n=4).
    const std::vector<Window> windows =
        n == 3 ? std::vector<Window>{{"minus_i", 0, 7.70, 7.85},
                                     {"plus_i", 1, 7.85, 8.00}}
               : std::vector<Window>{{"plus_i", 1, 7.777, 7.927},
                                     {"minus_i", 0, 7.934, 8.084}};
    for (const Window& w : windows) {
      const Peak p =
          peak_overlap(h, psi0, targets[static_cast<std::size_t>(w.target)].state,
                       w.lo, w.hi, 2.5e-4);
      const std::string tag =
          "n" + std::to_string(n) + "_" + w.name + "_peak";
      result.manifest.push_back(check_at_least(tag, p.value, 0.9995));
      result.manifest.push_back(check_range(tag + "_time", p.time, w.lo, w.hi));
    }
  }

  // Degenerate-basis GHZ classes of three qubits (loose tolerances).
  {
    const SystemConfig cfg =
        SystemConfig::uniform(3, kOmegaHermitian, 0.0, 0.0, kCouplingHermitian);
    const Matrix h = build_hamiltonian(cfg);
    const QuantumState psi0 = QuantumState::all_f(3);
    Vector a1 = Vector::Zero(8);
    a1(1) = a1(2) = a1(4) = 0.5;
    a1(7) = -0.5;
    Vector a2 = Vector::Zero(8);
    a2(3) = a2(5) = a2(6) = 0.5;
    a2(0) = -0.5;
    const Peak p1 = peak_overlap(h, psi0, QuantumState(3, a1), 7.655, 7.775, 2.5e-4);
    const Peak p2 = peak_overlap(h, psi0, QuantumState(3, a2), 7.796, 7.916, 2.5e-4);
    result.manifest.push_back(check_at_least("degenerate_class1_peak", p1.value, 0.995));
    result.manifest.push_back(check_at_least("degenerate_class2_peak", p2.value, 0.995));
  }
  return result;
}

}  // namespace

ManifestEntry check_range(std::string name, double observed, double lo,
                          double hi) {
  return make_entry(std::move(name), observed, lo, hi);
}

ManifestEntry check_near(std::string name, double observed, double expected,
                         double tolerance) {
  return make_entry(std::move(name), observed, expected - tolerance,
                    expected + tolerance);
}

ManifestEntry check_at_least(std::string name, double observed, double bound) {
  return make_entry(std::move(name), observed, bound, kInf);
}

ManifestEntry check_at_most(std::string name, double observed, double bound) {
  return make_entry(std::move(name), observed, -kInf, bound);
}

const std::vector<std::string>& scenario_labels() {
  static const std::vector<std::string> labels = {
      "fig1_spectra", "fig2_map", "fig3_traces", "fig4_fourqubit",
      "fig5_hermitian"};
  return labels;
}

ScenarioResult run_scenario(const std::string& label,
                            const std::filesystem::path& outdir, int threads) {
  ScenarioResult result;
  if (label == "fig1_spectra") {
    result = scenario_fig1(outdir, threads);
  } else if (label == "fig2_map") {
    result = scenario_fig2(outdir, threads);
  } else if (label == "fig3_traces") {
    result = scenario_fig3(outdir, threads);
  } else if (label == "fig4_fourqubit") {
    result = scenario_fig4(outdir, threads);
  } else if (label == "fig5_hermitian") {
    result = scenario_fig5(outdir, threads);
  } else {
    std::string valid;
    for (const auto& l : scenario_labels()) {
      if (!valid.empty()) valid += ", ";
      valid += l;
    }
    throw std::invalid_argument("unknown scenario '" + label +
                                "' (valid: " + valid + ")");
  }
  result.all_pass = std::all_of(result.manifest.begin(), result.manifest.end(),
                                [](const ManifestEntry& e) { return e.pass; });
  const auto manifest_path = outdir / "manifest.csv";
  write_text_atomic(manifest_path, manifest_csv(result.manifest));
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace nhqsim
