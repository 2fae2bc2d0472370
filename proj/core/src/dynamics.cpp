#include "nhqsim/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace nhqsim {

QuantumState::QuantumState(int n, Vector amplitudes) : n_(n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("state qubit count out of range");
  }
  if (amplitudes.size() != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("amplitude vector length must be 2^n");
  }
  if (!amplitudes.allFinite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  const double norm = amplitudes.norm();
  if (norm <= 0.0) {
    throw std::invalid_argument("state amplitudes must not all vanish");
  }
  amplitudes_ = amplitudes / norm;
}

QuantumState QuantumState::coherent(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("state qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double scale = std::pow(2.0, -0.5 * n);
  Vector amp(dim);
  // (|f> - i|e>)^(x n): the coefficient of a basis state with k qubits
  // in |e> is (-i)^k.
  const Complex minus_i(0.0, -1.0);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int k = std::popcount(static_cast<unsigned long long>(b));
    Complex phase = 1.0;
    for (int p = 0; p < (k & 3); ++p) phase *= minus_i;
    amp(b) = scale * phase;
  }
  return QuantumState(n, std::move(amp));
}

QuantumState QuantumState::all_f(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("state qubit count out of range");
  }
  Vector amp = Vector::Zero(Eigen::Index{1} << n);
  amp(0) = 1.0;
  return QuantumState(n, std::move(amp));
}

double QuantumState::overlap(const QuantumState& other) const {
  if (other.dim() != dim()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  return std::abs(other.amplitudes_.dot(amplitudes_));
}

StateKind parse_state_kind(std::string_view name) {
  if (name == "coherent") return StateKind::Coherent;
  if (name == "all_f") return StateKind::AllF;
  if (name == "custom") return StateKind::Custom;
  throw std::invalid_argument("unknown initial state kind '" +
                              std::string(name) +
                              "' (valid: coherent, all_f, custom)");
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Coherent: return "coherent";
    case StateKind::AllF: return "all_f";
    case StateKind::Custom: return "custom";
  }
  throw std::logic_error("unreachable");
}

QuantumState initial_state(StateKind kind, int n, const Vector* custom) {
  switch (kind) {
    case StateKind::Coherent: return QuantumState::coherent(n);
    case StateKind::AllF: return QuantumState::all_f(n);
    case StateKind::Custom:
      if (custom == nullptr) {
        throw std::invalid_argument("custom initial state needs amplitudes");
      }
      return QuantumState(n, *custom);
  }
  throw std::logic_error("unreachable");
}

// ---- basis bookkeeping ----

BasisOrdering BasisOrdering::standard(int n) {
  BasisOrdering o;
  o.n = n;
  o.to_standard.resize(std::size_t{1} << n);
  std::iota(o.to_standard.begin(), o.to_standard.end(), 0);
  return o;
}

BasisOrdering BasisOrdering::excitation_grouped(int n) {
  BasisOrdering o = standard(n);
  std::stable_sort(o.to_standard.begin(), o.to_standard.end(),
                   [](int a, int b) {
                     const int ka = std::popcount(static_cast<unsigned>(a));
                     const int kb = std::popcount(static_cast<unsigned>(b));
                     if (ka != kb) return ka < kb;
                     return a < b;
                   });
  return o;
}

std::string basis_label(int n, Eigen::Index standard_index) {
  if (standard_index < 0 || standard_index >= (Eigen::Index{1} << n)) {
    throw std::invalid_argument("basis index out of range");
  }
  std::string label(static_cast<std::size_t>(n), 'f');
  for (int j = 1; j <= n; ++j) {
    if (standard_index & (Eigen::Index{1} << (n - j))) {
      label[static_cast<std::size_t>(j - 1)] = 'e';
    }
  }
  return label;
}

// ---- propagation ----

Matrix matrix_exponential(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  }
  Matrix result = a.exp();
  if (!result.allFinite()) {
    throw NumericalError("matrix exponential overflowed");
  }
  return result;
}

PropagationResult propagate(const Matrix& h, const QuantumState& psi0,
                            double t) {
  if (h.rows() != h.cols() || h.rows() != psi0.dim()) {
    throw std::invalid_argument("propagate: dimension mismatch");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("propagate: time must be >= 0");
  }
  // One long squaring chain loses relative accuracy on strongly decaying
  // non-normal generators (norms fall by hundreds of orders over a long
  // trace). Splitting into substeps of modest norm with renormalization
  // in between is exact for the reported direction, and the accumulated
  // log keeps the success weight meaningful far past where a plain norm
  // would underflow.
  constexpr double kStepNormBudget = 5.0;
  const int steps = std::max(
      1, static_cast<int>(std::ceil(h.norm() * t / kStepNormBudget)));
  const Matrix u =
      matrix_exponential(Complex(0.0, -t / steps) * h);
  Vector state = psi0.amplitudes();
  double log_prenorm = 0.0;
  for (int i = 0; i < steps; ++i) {
    state = u * state;
    const double step_norm = state.norm();
    if (!(step_norm > 0.0) || !std::isfinite(step_norm)) {
      throw NumericalError("propagated state has vanishing or invalid norm");
    }
    log_prenorm += std::log(step_norm);
    state /= step_norm;
  }
  return {QuantumState(psi0.n(), std::move(state)), std::exp(log_prenorm)};
}

Trajectory propagate_series(const Matrix& h, const QuantumState& psi0,
                            std::span<const double> times) {
  if (times.empty()) {
    throw std::invalid_argument("propagate_series: empty time grid");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("propagate_series: times must increase");
    }
  }
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  traj.prenorms.reserve(times.size());

  // A well-conditioned eigendecomposition is reused across the grid: each
  // point is then assembled from exact scalar exponentials instead of an
  // iterated propagator, which matters for long traces near (but not at)
  // an EP. Ill-conditioned or defective generators fall back to the
  // matrix-exponential path point by point.
  constexpr double kSeriesConditionLimit = 1e6;
  std::optional<SpectralDecomposition> modal;
  try {
    SpectralDecomposition d = eigendecompose(h);
    if (!d.defective_adjacent && d.condition_number <= kSeriesConditionLimit) {
      modal = std::move(d);
    }
  } catch (const NumericalError&) {
    // fall through to direct propagation
  }

  Vector overlaps;
  if (modal) overlaps = modal->left * psi0.amplitudes();
  for (double t : times) {
    if (modal) {
      Vector coeffs = overlaps;
      for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
        coeffs(m) *= std::exp(Complex(0.0, -t) * modal->eigenvalues(m));
      }
      Vector evolved = modal->right * coeffs;
      const double prenorm = evolved.norm();
      if (prenorm > 0.0 && std::isfinite(prenorm)) {
        traj.states.emplace_back(psi0.n(), std::move(evolved));
        traj.prenorms.push_back(prenorm);
        continue;
      }
    }
    PropagationResult r = propagate(h, psi0, t);
    traj.states.push_back(std::move(r.state));
    traj.prenorms.push_back(r.prenorm);
  }
  return traj;
}

QuantumState modal_propagate(const SpectralDecomposition& decomp,
                             const QuantumState& psi0, double t) {
  if (decomp.dim() != psi0.dim()) {
    throw std::invalid_argument("modal_propagate: dimension mismatch");
  }
  if (decomp.defective_adjacent ||
      decomp.condition_number > kModalConditionLimit) {
    throw std::invalid_argument(
        "modal_propagate: decomposition is defective-adjacent "
        "(use propagate instead)");
  }
  Vector coeffs = decomp.left * psi0.amplitudes();
  for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
    coeffs(m) *= std::exp(Complex(0.0, -t) * decomp.eigenvalues(m));
  }
  Vector evolved = decomp.right * coeffs;
  return QuantumState(psi0.n(), std::move(evolved));
}

// ---- amplitude reporting ----

std::vector<AmplitudePhase> amplitudes_and_phases(const QuantumState& state,
                                                  const BasisOrdering& ordering) {
  if (ordering.n != state.n()) {
    throw std::invalid_argument("ordering does not match state size");
  }
  std::vector<AmplitudePhase> out;
  out.reserve(ordering.to_standard.size());
  for (int idx : ordering.to_standard) {
    const Complex a = state.amplitude(idx);
    double phase = std::arg(a);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    out.push_back({std::abs(a), phase});
  }
  return out;
}

Table trajectory_table(const Trajectory& trajectory) {
  if (trajectory.states.empty()) {
    throw std::invalid_argument("trajectory_table: empty trajectory");
  }
  const int n = trajectory.states.front().n();
  const BasisOrdering order = BasisOrdering::excitation_grouped(n);
  Table t;
  t.columns = {"time", "prenorm"};
  for (int idx : order.to_standard) {
    const std::string label = basis_label(n, idx);
    t.columns.push_back("abs_" + label);
    t.columns.push_back("arg_" + label);
  }
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    std::vector<double> row = {trajectory.times[i], trajectory.prenorms[i]};
    for (const AmplitudePhase& ap :
         amplitudes_and_phases(trajectory.states[i], order)) {
      row.push_back(ap.modulus);
      row.push_back(ap.phase);
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace nhqsim
