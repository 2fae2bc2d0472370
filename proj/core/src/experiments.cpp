#include "nhqsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nhqsim/dynamics.hpp"
#include "nhqsim/parallel.hpp"
#include "nhqsim/spectral.hpp"

namespace nhqsim {

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1 || !(hi >= lo)) {
    throw std::invalid_argument("linear_grid: bad bounds or count");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + i * step;
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
    throw std::invalid_argument("log_grid: bounds must be positive");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (count - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

SystemConfig with_coupling(SystemConfig cfg, double j) {
  cfg.coupling.setConstant(j);
  cfg.coupling.diagonal().setZero();
  return cfg;
}

void check_axis(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw std::invalid_argument(std::string(what) + " grid must be nonempty");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument(std::string(what) +
                                  " grid must be strictly increasing");
    }
  }
}

}  // namespace

EntanglementMap entanglement_map(const SystemConfig& config,
                                 const QuantumState& psi0,
                                 std::span<const double> times,
                                 std::span<const double> couplings,
                                 int threads) {
  config.validate();
  check_axis(times, "time");
  check_axis(couplings, "coupling");
  const int n = config.n();

  EntanglementMap map;
  map.times.assign(times.begin(), times.end());
  map.couplings.assign(couplings.begin(), couplings.end());
  const std::size_t nt = map.times.size();
  const std::size_t nj = map.couplings.size();
  map.min_entropy.assign(nt * nj, 0.0);
  if (n == 3) map.tau.assign(nt * nj, 0.0);

  // Hamiltonians depend only on the coupling axis; build them once.
  std::vector<Matrix> hams(nj);
  for (std::size_t ji = 0; ji < nj; ++ji) {
    hams[ji] = build_hamiltonian(with_coupling(config, map.couplings[ji]));
  }

  parallel_for(nt * nj, threads, [&](std::size_t cell) {
    const std::size_t ti = cell / nj;
    const std::size_t ji = cell % nj;
    const QuantumState state =
        propagate(hams[ji], psi0, map.times[ti]).state;
    EntanglementReport rep = report(state, map.times[ti]);
    map.min_entropy[cell] =
        *std::min_element(rep.entropies.begin(), rep.entropies.end());
    if (n == 3) map.tau[cell] = *rep.tau123;
  });

  const std::vector<double>& objective = n == 3 ? map.tau : map.min_entropy;
  std::size_t best = 0;
  for (std::size_t cell = 1; cell < objective.size(); ++cell) {
    if (objective[cell] > objective[best]) best = cell;
  }
  map.argmax = {map.times[best / nj], map.couplings[best % nj],
                objective[best]};
  return map;
}

Table entanglement_map_table(const SystemConfig& config,
                             const QuantumState& psi0,
                             const EntanglementMap& map, int threads) {
  const int n = config.n();
  Table t;
  t.columns = {"time", "coupling"};
  for (int j = 1; j <= n; ++j) t.columns.push_back("S_" + std::to_string(j));
  t.columns.push_back("tau123");

  const std::size_t nj = map.couplings.size();
  const std::size_t cells = map.times.size() * nj;
  std::vector<std::vector<double>> rows(cells);
  std::vector<Matrix> hams(nj);
  for (std::size_t ji = 0; ji < nj; ++ji) {
    hams[ji] = build_hamiltonian(with_coupling(config, map.couplings[ji]));
  }
  parallel_for(cells, threads, [&](std::size_t cell) {
    const std::size_t ti = cell / nj;
    const std::size_t ji = cell % nj;
    const QuantumState state =
        propagate(hams[ji], psi0, map.times[ti]).state;
    EntanglementReport rep = report(state, map.times[ti]);
    std::vector<double> row = {map.times[ti], map.couplings[ji]};
    row.insert(row.end(), rep.entropies.begin(), rep.entropies.end());
    row.push_back(rep.tau123 ? *rep.tau123
                             : std::numeric_limits<double>::quiet_NaN());
    rows[cell] = std::move(row);
  });
  for (auto& row : rows) t.add_row(std::move(row));
  return t;
}

Objective parse_objective(std::string_view name) {
  if (name == "tau123") return Objective::Tau123;
  if (name == "min_entropy") return Objective::MinEntropy;
  throw std::invalid_argument("unknown objective '" + std::string(name) +
                              "' (valid: tau123, min_entropy)");
}

namespace {

double evaluate_objective(const Matrix& h, const QuantumState& psi0, double t,
                          Objective objective) {
  const QuantumState state = propagate(h, psi0, t).state;
  if (objective == Objective::Tau123) return three_tangle(state);
  EntanglementReport rep = report(state, t);
  return *std::min_element(rep.entropies.begin(), rep.entropies.end());
}

struct Axis {
  double lo = 0.0, hi = 0.0;
  bool log_spaced = false;
};

std::vector<double> axis_points(const Axis& axis, int count) {
  if (axis.lo == axis.hi) return {axis.lo};
  return axis.log_spaced ? log_grid(axis.lo, axis.hi, count)
                         : linear_grid(axis.lo, axis.hi, count);
}

}  // namespace

Optimum find_optimal(const SystemConfig& config, const QuantumState& psi0,
                     const SearchBox& box, Objective objective, int threads) {
  config.validate();
  if (objective == Objective::Tau123 && config.n() != 3) {
    throw std::invalid_argument("tau123 objective requires n = 3");
  }
  auto check_bounds = [](const std::array<double, 2>& b, const char* what) {
    if (!(b[1] >= b[0])) {
      throw std::invalid_argument(std::string("empty search box: ") + what);
    }
  };
  check_bounds(box.time, "time");
  check_bounds(box.coupling, "coupling");
  if (box.time[0] < 0.0) {
    throw std::invalid_argument("search box times must be >= 0");
  }
  if (box.omega) check_bounds(*box.omega, "omega");

  Axis t_axis{box.time[0], box.time[1], false};
  Axis j_axis{box.coupling[0], box.coupling[1],
              box.coupling[0] > 0.0 && box.coupling[1] / box.coupling[0] >= 10.0};
  std::optional<Axis> w_axis;
  if (box.omega) w_axis = Axis{(*box.omega)[0], (*box.omega)[1], false};

  constexpr int kPoints = 17;
  constexpr double kRelTol = 1e-4;

  Optimum best;
  best.value = -std::numeric_limits<double>::infinity();
  best.omega = config.qubits.front().omega;

  for (int round = 0; round < 60; ++round) {
    const std::vector<double> ts = axis_points(t_axis, kPoints);
    const std::vector<double> js = axis_points(j_axis, kPoints);
    const std::vector<double> ws =
        w_axis ? axis_points(*w_axis, kPoints)
               : std::vector<double>{config.qubits.front().omega};

    // One Hamiltonian per (omega, J); cells evaluated in parallel, then
    // scanned in lexicographic (t, J, omega) order for the tie-break.
    std::vector<Matrix> hams(ws.size() * js.size());
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
      SystemConfig cfg = config;
      if (w_axis) {
        for (auto& q : cfg.qubits) q.omega = ws[wi];
      }
      for (std::size_t ji = 0; ji < js.size(); ++ji) {
        hams[wi * js.size() + ji] = build_hamiltonian(with_coupling(cfg, js[ji]));
      }
    }
    const std::size_t cells = ts.size() * js.size() * ws.size();
    std::vector<double> values(cells);
    parallel_for(cells, threads, [&](std::size_t cell) {
      const std::size_t ti = cell / (js.size() * ws.size());
      const std::size_t ji = (cell / ws.size()) % js.size();
      const std::size_t wi = cell % ws.size();
      values[cell] =
          evaluate_objective(hams[wi * js.size() + ji], psi0, ts[ti], objective);
    });
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (values[cell] > best.value) {
        const std::size_t ti = cell / (js.size() * ws.size());
        const std::size_t ji = (cell / ws.size()) % js.size();
        const std::size_t wi = cell % ws.size();
        best = {ts[ti], js[ji], ws[wi], values[cell]};
      }
    }

    auto shrink = [](Axis& axis, double center) {
      const double span = axis.hi - axis.lo;
      const double half = span / (kPoints - 1);  // one grid spacing
      axis.lo = std::max(axis.lo, center - half);
      axis.hi = std::min(axis.hi, center + half);
      axis.log_spaced = false;
    };
    auto resolved = [](const Axis& axis, double center) {
      return (axis.hi - axis.lo) <= kRelTol * std::max(1e-30, std::abs(center));
    };
    bool done = resolved(t_axis, best.time) && resolved(j_axis, best.coupling) &&
                (!w_axis || resolved(*w_axis, best.omega));
    if (done) break;
    shrink(t_axis, best.time);
    shrink(j_axis, best.coupling);
    if (w_axis) shrink(*w_axis, best.omega);
  }
  return best;
}

Table amplitude_traces(const SystemConfig& config, const QuantumState& psi0,
                       std::span<const double> times) {
  config.validate();
  const Matrix h = build_hamiltonian(config);
  return trajectory_table(propagate_series(h, psi0, times));
}

BlochTrajectory bloch_trajectory(const SystemConfig& config,
                                 const QuantumState& psi0,
                                 std::span<const double> times, int qubit) {
  config.validate();
  if (qubit < 1 || qubit > config.n()) {
    throw std::invalid_argument("bloch_trajectory: qubit index out of range");
  }
  const Matrix h = build_hamiltonian(config);
  const Trajectory traj = propagate_series(h, psi0, times);
  BlochTrajectory out;
  out.table.columns = {"time", "x", "y", "z", "r"};
  const int keep[] = {qubit};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Matrix rho = partial_trace(traj.states[i], keep);
    const Bloch b = bloch_vector(rho);
    out.table.add_row({traj.times[i], b.x, b.y, b.z, b.norm()});
    if (i + 1 == traj.times.size()) out.final_purity = purity(rho);
  }
  return out;
}

Table fidelity_traces(const SystemConfig& config, const QuantumState& psi0,
                      std::span<const FidelityTarget> targets,
                      std::span<const double> times) {
  config.validate();
  for (const FidelityTarget& t : targets) {
    if (t.state.dim() != config.dim()) {
      throw std::invalid_argument("fidelity target '" + t.label +
                                  "' has wrong dimension");
    }
  }
  const Matrix h = build_hamiltonian(config);
  const Trajectory traj = propagate_series(h, psi0, times);
  Table table;
  table.columns = {"time"};
  for (const FidelityTarget& t : targets) table.columns.push_back("fid_" + t.label);
  table.columns.push_back("fid_ghz_class");
  table.columns.push_back("ghz_class_theta");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row = {traj.times[i]};
    for (const FidelityTarget& t : targets) {
      row.push_back(ghz_fidelity(traj.states[i], t.state));
    }
    const GhzClassFit fit = ghz_class_fidelity(traj.states[i]);
    row.push_back(fit.fidelity);
    row.push_back(fit.theta);
    table.add_row(std::move(row));
  }
  return table;
}

Table report_table(const SystemConfig& config, const QuantumState& psi0,
                   std::span<const double> times, int threads) {
  config.validate();
  check_axis(times, "time");
  const Matrix h = build_hamiltonian(config);
  Table table;
  table.columns = report_columns(config.n());
  std::vector<std::vector<double>> rows(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const QuantumState state = propagate(h, psi0, times[i]).state;
    rows[i] = report_row(report(state, times[i]));
  });
  for (auto& row : rows) table.add_row(std::move(row));
  return table;
}

std::vector<Table> four_qubit_entropy_traces(
    std::span<const FourQubitParameterSet> sets, std::span<const double> times,
    double gamma, int threads) {
  check_axis(times, "time");
  if (sets.empty()) {
    throw std::invalid_argument("four_qubit_entropy_traces: no parameter sets");
  }
  (void)threads;  // a cached decomposition makes the series cheap serially
  const QuantumState psi0 = QuantumState::coherent(4);
  std::vector<Table> tables;
  for (const FourQubitParameterSet& set : sets) {
    const SystemConfig cfg =
        SystemConfig::uniform(4, set.omega, 0.0, gamma, set.coupling);
    const Trajectory traj =
        propagate_series(build_hamiltonian(cfg), psi0, times);
    Table table;
    table.columns = {"time", "S_1", "S_2", "S_3", "S_4", "min_S"};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      std::vector<double> row = {traj.times[i]};
      double min_s = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= 4; ++j) {
        const int keep[] = {j};
        const double s =
            entanglement_entropy(partial_trace(traj.states[i], keep));
        row.push_back(s);
        min_s = std::min(min_s, s);
      }
      row.push_back(min_s);
      table.add_row(std::move(row));
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace nhqsim
