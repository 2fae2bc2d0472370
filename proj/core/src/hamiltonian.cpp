#include "nhqsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nhqsim {

namespace {

// Bit position of qubit j (1-based, qubit 1 = most significant factor).
inline int bit_of(int n, int j) { return n - j; }

void check_qubit_index(int n, int j) {
  if (j < 1 || j > n) {
    throw std::invalid_argument("qubit index " + std::to_string(j) +
                                " out of range [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

SystemConfig SystemConfig::uniform(int n, double omega, double delta,
                                   double gamma, double j) {
  SystemConfig cfg;
  cfg.qubits.assign(static_cast<std::size_t>(n), QubitParams{omega, delta, gamma});
  cfg.coupling = RealMatrix::Constant(n, n, j);
  cfg.coupling.diagonal().setZero();
  cfg.validate();
  return cfg;
}

void SystemConfig::validate() const {
  const int nq = n();
  if (nq < 1 || nq > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(nq));
  }
  for (int j = 0; j < nq; ++j) {
    const QubitParams& q = qubits[static_cast<std::size_t>(j)];
    if (!std::isfinite(q.omega) || !std::isfinite(q.delta) ||
        !std::isfinite(q.gamma)) {
      throw std::invalid_argument("qubit " + std::to_string(j + 1) +
                                  ": non-finite parameter");
    }
    if (q.gamma < 0.0) {
      throw std::invalid_argument("qubit " + std::to_string(j + 1) +
                                  ": gamma must be >= 0, got " +
                                  std::to_string(q.gamma));
    }
  }
  if (coupling.rows() != nq || coupling.cols() != nq) {
    throw std::invalid_argument("coupling matrix must be n x n");
  }
  if (!coupling.allFinite()) {
    throw std::invalid_argument("coupling matrix has non-finite entries");
  }
  for (int j = 0; j < nq; ++j) {
    if (coupling(j, j) != 0.0) {
      throw std::invalid_argument("coupling diagonal must be exactly zero");
    }
    for (int k = j + 1; k < nq; ++k) {
      if (coupling(j, k) != coupling(k, j)) {
        throw std::invalid_argument("coupling matrix must be symmetric");
      }
    }
  }
}

Matrix ladder_operator(int n, int j, bool dagger) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  check_qubit_index(n, j);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << bit_of(n, j);
  Matrix op = Matrix::Zero(dim, dim);
  // sigma_j = |e>_j<f| maps f -> e on qubit j; dagger reverses it.
  for (Eigen::Index b = 0; b < dim; ++b) {
    if ((b & mask) == 0) {
      if (dagger) {
        op(b, b | mask) = 1.0;  // |f><e|
      } else {
        op(b | mask, b) = 1.0;  // |e><f|
      }
    }
  }
  return op;
}

Matrix build_hamiltonian(const SystemConfig& config) {
  config.validate();
  const int n = config.n();
  const Eigen::Index dim = config.dim();
  Matrix h = Matrix::Zero(dim, dim);

  // Single-qubit terms: (delta_j - i gamma_j/2) on |e>_j population plus
  // the sigma^x drive connecting b <-> b ^ bit_j.
  for (int j = 1; j <= n; ++j) {
    const QubitParams& q = config.qubits[static_cast<std::size_t>(j - 1)];
    const Complex pole(q.delta, -0.5 * q.gamma);
    const Eigen::Index mask = Eigen::Index{1} << bit_of(n, j);
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (b & mask) h(b, b) += pole;
      h(b ^ mask, b) += q.omega;
    }
  }

  // Hopping: sigma_j^+ sigma_k moves one |e> from qubit k to qubit j.
  const double pair_factor =
      config.convention == CouplingConvention::OrderedDouble ? 2.0 : 1.0;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const double jjk = pair_factor * config.coupling(j - 1, k - 1);
      if (jjk == 0.0) continue;
      const Eigen::Index mj = Eigen::Index{1} << bit_of(n, j);
      const Eigen::Index mk = Eigen::Index{1} << bit_of(n, k);
      for (Eigen::Index b = 0; b < dim; ++b) {
        if ((b & mj) && !(b & mk)) {
          const Eigen::Index r = (b ^ mj) | mk;
          h(r, b) += jjk;
          h(b, r) += jjk;
        }
      }
    }
  }
  return h;
}

Matrix pt_hamiltonian(const SystemConfig& config) {
  config.validate();
  double gamma_sum = 0.0;
  for (const QubitParams& q : config.qubits) {
    if (q.delta != 0.0) {
      throw std::invalid_argument(
          "pt_hamiltonian requires all detunings zero");
    }
    gamma_sum += q.gamma;
  }
  Matrix h = build_hamiltonian(config);
  h.diagonal().array() += Complex(0.0, 0.25 * gamma_sum);
  return h;
}

double pt_symmetry_residual(const SystemConfig& config) {
  const Matrix hpt = pt_hamiltonian(config);  // rejects nonzero detuning
  const Eigen::Index dim = hpt.rows();
  const Eigen::Index flip = dim - 1;  // P permutes b -> ~b on all qubits
  Matrix transformed(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      transformed(r, c) = std::conj(hpt(r ^ flip, c ^ flip));
    }
  }
  return (transformed - hpt).norm();
}

}  // namespace nhqsim
