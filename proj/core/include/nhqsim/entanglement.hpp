#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nhqsim/dynamics.hpp"
#include "nhqsim/types.hpp"

namespace nhqsim {

// Reduced density matrix over the kept qubits (1-based indices), in
// standard ordering of the kept subsystem.
Matrix partial_trace(const QuantumState& state, std::span<const int> keep);

// Von Neumann entropy (nats) of a single-qubit density matrix via the
// closed-form eigenvalues 1/2 +- sqrt((rho_xx - rho_yy)^2 + 4 rho_xy
// rho_yx)/2, with 0 log 0 = 0.
double entanglement_entropy(const Matrix& rho);

// General-dimension entropy from the eigenvalue spectrum.
double entropy_eigen(const Matrix& rho);

// Tr rho^2.
double purity(const Matrix& rho);

struct Bloch {
  double x = 0.0, y = 0.0, z = 0.0;
  double norm() const;
};

// Components Tr(rho sigma) with |f> at the north pole (z = rho_ff - rho_ee).
Bloch bloch_vector(const Matrix& rho);

// Wootters concurrence of a two-qubit density matrix, from the square
// roots of the eigenvalues of rho * (sy x sy) conj(rho) (sy x sy).
double concurrence(const Matrix& rho);

// C_j(rest) = sqrt(2 - 2 P_j) for a pure global state.
double bipartition_concurrence(double purity_one_qubit);

// Residual tangle tau_123 = C^2_1(23) - C^2_12 - C^2_13, clamped to
// [0, 1]; clamp excursions beyond 1e-8 are reported on stderr.
double three_tangle(const QuantumState& state);

// |<target|state>|; insensitive to global phase.
double ghz_fidelity(const QuantumState& state, const QuantumState& target);

// (|f..f> + e^(i theta)|e..e>)/sqrt(2) with the given relative phase.
QuantumState ghz_state(int n, double theta);

struct GhzClassFit {
  double fidelity = 0.0;
  double theta = 0.0;
};

// Best fidelity over all GHZ-class relative phases, maximized
// analytically: (|a_first| + |a_last|)/sqrt(2) at theta = arg a_last -
// arg a_first.
GhzClassFit ghz_class_fidelity(const QuantumState& state);

// All single-time entanglement measures in one record.
struct EntanglementReport {
  double time = 0.0;
  std::vector<double> entropies;       // S_j, nats
  std::vector<double> purities;        // P_j
  std::vector<Bloch> bloch;            // per qubit
  std::vector<double> pair_concurrence;  // C_jk, j<k row-major
  std::vector<double> bipartition;     // C_j(rest)
  std::optional<double> tau123;        // n == 3 only
  std::vector<std::pair<std::string, double>> fidelities;
  double ghz_class_theta = 0.0;
};

EntanglementReport report(const QuantumState& state, double time);

// Header for one-row-per-report tables: time, S_1..S_n, P_1..P_n, bloch
// triplets, C_jk upper triangle, C_j(rest), tau123 (blank if n != 3),
// named fidelities.
std::vector<std::string> report_columns(int n);
std::vector<double> report_row(const EntanglementReport& rep);

}  // namespace nhqsim
