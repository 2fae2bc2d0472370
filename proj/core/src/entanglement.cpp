#include "nhqsim/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace nhqsim {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNegativeEigTol = 1e-10;

void check_density_matrix(const Matrix& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if (!rho.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  if ((rho - rho.adjoint()).norm() > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix trace must be 1");
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

Matrix partial_trace(const QuantumState& state, std::span<const int> keep) {
  const int n = state.n();
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  }
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  }
  if (kept.front() < 1 || kept.back() > n) {
    throw std::invalid_argument("partial_trace: qubit index out of range");
  }

  std::vector<int> traced;
  for (int j = 1; j <= n; ++j) {
    if (!std::binary_search(kept.begin(), kept.end(), j)) traced.push_back(j);
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dt = Eigen::Index{1} << nt;

  // Map sub-register indices back to full basis indices; kept qubits keep
  // their relative (most significant first) order.
  auto scatter = [n](const std::vector<int>& qubits, Eigen::Index sub) {
    Eigen::Index full = 0;
    const int m = static_cast<int>(qubits.size());
    for (int p = 0; p < m; ++p) {
      if (sub & (Eigen::Index{1} << (m - 1 - p))) {
        full |= Eigen::Index{1} << (n - qubits[static_cast<std::size_t>(p)]);
      }
    }
    return full;
  };

  const Vector& amp = state.amplitudes();
  Matrix rho = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    const Eigen::Index fa = scatter(kept, a);
    for (Eigen::Index b = 0; b < dk; ++b) {
      const Eigen::Index fb = scatter(kept, b);
      Complex sum = 0.0;
      for (Eigen::Index m = 0; m < dt; ++m) {
        const Eigen::Index fm = scatter(traced, m);
        sum += amp(fa | fm) * std::conj(amp(fb | fm));
      }
      rho(a, b) = sum;
    }
  }
  return rho;
}

double entanglement_entropy(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw std::invalid_argument(
        "entanglement_entropy expects a single-qubit (2x2) density matrix; "
        "use entropy_eigen for general dimensions");
  }
  check_density_matrix(rho);
  const double diff = rho(0, 0).real() - rho(1, 1).real();
  const double cross = 4.0 * (rho(0, 1) * rho(1, 0)).real();
  const double s = 0.5 * std::sqrt(std::max(0.0, diff * diff + cross));
  const double lp = std::clamp(0.5 + s, 0.0, 1.0);
  const double lm = std::clamp(0.5 - s, 0.0, 1.0);
  return -xlogx(lp) - xlogx(lm);
}

double entropy_eigen(const Matrix& rho) {
  check_density_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double w = solver.eigenvalues()(i);
    if (w < -kNegativeEigTol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    entropy -= xlogx(std::max(w, 0.0));
  }
  return entropy;
}

double purity(const Matrix& rho) {
  check_density_matrix(rho);
  return (rho * rho).trace().real();
}

double Bloch::norm() const { return std::sqrt(x * x + y * y + z * z); }

Bloch bloch_vector(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw std::invalid_argument("bloch_vector expects a 2x2 density matrix");
  }
  check_density_matrix(rho);
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

double concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("concurrence expects a 4x4 density matrix");
  }
  check_density_matrix(rho);
  {
    Eigen::SelfAdjointEigenSolver<Matrix> check(rho, Eigen::EigenvaluesOnly);
    if (check.eigenvalues().minCoeff() < -kNegativeEigTol) {
      throw std::invalid_argument("concurrence: non-physical density matrix");
    }
  }
  // (sy x sy) has a single entry of +-1 per row: (i, 3 - i) with sign
  // +1 for i in {0, 3} and -1 for {1, 2}.
  Matrix flipped(4, 4);
  auto sgn = [](Eigen::Index i) { return (i == 0 || i == 3) ? 1.0 : -1.0; };
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      flipped(r, c) = sgn(r) * sgn(c) * std::conj(rho(3 - r, 3 - c));
    }
  }
  Eigen::ComplexEigenSolver<Matrix> solver(rho * flipped, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("concurrence eigensolver failed");
  }
  // The spectrum of rho * rho~ is real nonnegative. Rank-deficient inputs
  // (every reduction of a pure state) have exact zeros that come back at
  // solver-noise level; the square root would amplify that noise to
  // ~1e-8, so eigenvalues below a relative floor count as zero.
  std::array<double, 4> mu{};
  double mu_max = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    mu[static_cast<std::size_t>(i)] = std::max(0.0, solver.eigenvalues()(i).real());
    mu_max = std::max(mu_max, mu[static_cast<std::size_t>(i)]);
  }
  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    lambda[i] = mu[i] > 1e-12 * mu_max ? std::sqrt(mu[i]) : 0.0;
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double bipartition_concurrence(double purity_one_qubit) {
  if (!(purity_one_qubit >= 0.5 - 1e-9) || !(purity_one_qubit <= 1.0 + 1e-9)) {
    throw std::invalid_argument(
        "bipartition_concurrence: single-qubit purity must be in [0.5, 1]");
  }
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * purity_one_qubit));
}

double three_tangle(const QuantumState& state) {
  if (state.n() != 3) {
    throw std::invalid_argument("three_tangle is defined for n = 3 only");
  }
  const int one[] = {1};
  const double p1 = purity(partial_trace(state, one));
  const double c1_23_sq = std::max(0.0, 2.0 - 2.0 * p1);
  const int pair12[] = {1, 2};
  const int pair13[] = {1, 3};
  const double c12 = concurrence(partial_trace(state, pair12));
  const double c13 = concurrence(partial_trace(state, pair13));
  const double tau = c1_23_sq - c12 * c12 - c13 * c13;
  if (tau < -1e-8 || tau > 1.0 + 1e-8) {
    std::cerr << "three_tangle: clamping " << tau << " into [0, 1]\n";
  }
  return std::clamp(tau, 0.0, 1.0);
}

double ghz_fidelity(const QuantumState& state, const QuantumState& target) {
  return state.overlap(target);
}

QuantumState ghz_state(int n, double theta) {
  Vector amp = Vector::Zero(Eigen::Index{1} << n);
  amp(0) = 1.0 / std::numbers::sqrt2;
  amp(amp.size() - 1) = std::exp(Complex(0.0, theta)) / std::numbers::sqrt2;
  return QuantumState(n, std::move(amp));
}

GhzClassFit ghz_class_fidelity(const QuantumState& state) {
  const Complex first = state.amplitude(0);
  const Complex last = state.amplitude(state.dim() - 1);
  GhzClassFit fit;
  fit.fidelity = (std::abs(first) + std::abs(last)) / std::numbers::sqrt2;
  if (std::abs(first) > 0.0 && std::abs(last) > 0.0) {
    double theta = std::arg(last) - std::arg(first);
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    fit.theta = theta;
  }
  return fit;
}

EntanglementReport report(const QuantumState& state, double time) {
  const int n = state.n();
  EntanglementReport rep;
  rep.time = time;
  rep.entropies.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const int keep[] = {j};
    const Matrix rho = partial_trace(state, keep);
    rep.entropies.push_back(entanglement_entropy(rho));
    rep.purities.push_back(purity(rho));
    rep.bloch.push_back(bloch_vector(rho));
    rep.bipartition.push_back(bipartition_concurrence(
        std::clamp(rep.purities.back(), 0.5, 1.0)));
  }
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const int keep[] = {j, k};
      rep.pair_concurrence.push_back(concurrence(partial_trace(state, keep)));
    }
  }
  if (n == 3) rep.tau123 = three_tangle(state);
  const GhzClassFit fit = ghz_class_fidelity(state);
  rep.fidelities.emplace_back("ghz_minus_i",
                              ghz_fidelity(state, ghz_state(n, -std::numbers::pi / 2)));
  rep.fidelities.emplace_back("ghz_plus_i",
                              ghz_fidelity(state, ghz_state(n, std::numbers::pi / 2)));
  rep.fidelities.emplace_back("ghz_class", fit.fidelity);
  rep.ghz_class_theta = fit.theta;
  return rep;
}

std::vector<std::string> report_columns(int n) {
  std::vector<std::string> cols = {"time"};
  for (int j = 1; j <= n; ++j) cols.push_back("S_" + std::to_string(j));
  for (int j = 1; j <= n; ++j) cols.push_back("P_" + std::to_string(j));
  for (int j = 1; j <= n; ++j) {
    const std::string q = std::to_string(j);
    cols.push_back("bloch_x_" + q);
    cols.push_back("bloch_y_" + q);
    cols.push_back("bloch_z_" + q);
  }
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      cols.push_back("C_" + std::to_string(j) + std::to_string(k));
    }
  }
  for (int j = 1; j <= n; ++j) {
    cols.push_back("C_" + std::to_string(j) + "_rest");
  }
  cols.push_back("tau123");
  cols.push_back("fid_ghz_minus_i");
  cols.push_back("fid_ghz_plus_i");
  cols.push_back("fid_ghz_class");
  cols.push_back("ghz_class_theta");
  return cols;
}

std::vector<double> report_row(const EntanglementReport& rep) {
  std::vector<double> row = {rep.time};
  row.insert(row.end(), rep.entropies.begin(), rep.entropies.end());
  row.insert(row.end(), rep.purities.begin(), rep.purities.end());
  for (const Bloch& b : rep.bloch) {
    row.push_back(b.x);
    row.push_back(b.y);
    row.push_back(b.z);
  }
  row.insert(row.end(), rep.pair_concurrence.begin(), rep.pair_concurrence.end());
  row.insert(row.end(), rep.bipartition.begin(), rep.bipartition.end());
  row.push_back(rep.tau123 ? *rep.tau123
                           : std::numeric_limits<double>::quiet_NaN());
  for (const auto& [label, value] : rep.fidelities) row.push_back(value);
  row.push_back(rep.ghz_class_theta);
  return row;
}

}  // namespace nhqsim
