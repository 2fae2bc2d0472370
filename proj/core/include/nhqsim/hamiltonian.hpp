#pragma once

#include <vector>

#include "nhqsim/types.hpp"

namespace nhqsim {

// Per-qubit drive/detuning/decay. All rates in rad/us, hbar = 1.
struct QubitParams {
  double omega = 0.0;  // drive amplitude
  double delta = 0.0;  // drive detuning
  double gamma = 0.0;  // decay rate of |e>, must be >= 0
};

// How the symmetric coupling matrix enters the Hamiltonian sum.
// PairOnce adds J_jk (sig_j^+ sig_k + sig_j sig_k^+) once per unordered
// pair; OrderedDouble counts every ordered pair j != k, i.e. twice the
// PairOnce term. PairOnce is the default: it reproduces the tripartite
// optimum at t ~ 3.23 us for J = 1e-3 rad/us (see fig2_map scenario).
enum class CouplingConvention { PairOnce, OrderedDouble };

// Full physical specification of an n-qubit system.
//
// Basis convention: qubit 1 is the most significant tensor factor,
// |f> -> bit 0 and |e> -> bit 1, so basis index 0 is |ff...f> and index
// 2^n - 1 is |ee...e>.
struct SystemConfig {
  std::vector<QubitParams> qubits;
  RealMatrix coupling;  // n x n symmetric, zero diagonal (rad/us)
  CouplingConvention convention = CouplingConvention::PairOnce;

  // Identical qubits with uniform all-to-all coupling j.
  static SystemConfig uniform(int n, double omega, double delta,
                              double gamma, double j);

  int n() const { return static_cast<int>(qubits.size()); }
  Eigen::Index dim() const { return Eigen::Index{1} << n(); }

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

// 2^n-dimensional embedding of sigma_j = |e>_j<f| (or its dagger) via
// identity factors on all other qubits. j is 1-based.
Matrix ladder_operator(int n, int j, bool dagger);

// Dense H = sum_j [(delta_j - i gamma_j/2) |e>_j<e| + omega_j sigma_j^x]
//         + coupling hopping terms per the configured convention.
Matrix build_hamiltonian(const SystemConfig& config);

// H + i (sum_j gamma_j / 4) I. Requires all detunings zero.
Matrix pt_hamiltonian(const SystemConfig& config);

// Frobenius norm of P conj(H_PT) P - H_PT where P exchanges |e> and |f>
// on every qubit; zero iff the antilinear PT operation commutes with
// H_PT. Requires all detunings zero.
double pt_symmetry_residual(const SystemConfig& config);

}  // namespace nhqsim
