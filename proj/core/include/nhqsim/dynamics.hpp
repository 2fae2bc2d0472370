#pragma once

#include <span>
#include <string>
#include <vector>

#include "nhqsim/spectral.hpp"
#include "nhqsim/table.hpp"
#include "nhqsim/types.hpp"

namespace nhqsim {

// Normalized pure state over the 2^n computational basis in standard
// tensor-product order (qubit 1 = most significant, |f> = 0, |e> = 1).
class QuantumState {
 public:
  // Normalizes on construction; throws on zero or non-finite input.
  QuantumState(int n, Vector amplitudes);

  // 2^(-n/2) (|f> - i|e>)^(x n)
  static QuantumState coherent(int n);
  // |f>^(x n)
  static QuantumState all_f(int n);

  int n() const { return n_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

  // |<other|this>|
  double overlap(const QuantumState& other) const;

 private:
  int n_;
  Vector amplitudes_;
};

enum class StateKind { Coherent, AllF, Custom };
StateKind parse_state_kind(std::string_view name);
std::string to_string(StateKind kind);

// Dispatches to the factories above; `custom` is required (and only
// used) for StateKind::Custom.
QuantumState initial_state(StateKind kind, int n, const Vector* custom = nullptr);

// ---- basis bookkeeping ----

// Permutation from the reporting order used by the figures (basis states
// grouped by excitation count, lexicographic within a group) to standard
// binary order. to_standard[m] is the standard index of reporting slot m.
struct BasisOrdering {
  int n = 0;
  std::vector<int> to_standard;

  static BasisOrdering standard(int n);
  static BasisOrdering excitation_grouped(int n);
};

// "ffe" style label of a standard basis index, qubit 1 first.
std::string basis_label(int n, Eigen::Index standard_index);

// ---- propagation ----

// Matrix exponential exp(A). Contract: relative error <= 1e-11 for
// norms up to ~50; throws NumericalError on non-finite output.
Matrix matrix_exponential(const Matrix& a);

struct PropagationResult {
  QuantumState state;
  double prenorm;  // |exp(-iHt) psi0| before renormalization
};

// Normalized non-unitary evolution exp(-iHt)|psi0> / |exp(-iHt)|psi0>|.
PropagationResult propagate(const Matrix& h, const QuantumState& psi0,
                            double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  std::vector<double> prenorms;
};

// Equivalent to independent propagate calls at each grid time.
Trajectory propagate_series(const Matrix& h, const QuantumState& psi0,
                            std::span<const double> times);

// Biorthogonal modal propagation sum_m <phi~_m|psi0> e^(-i E_m t)|phi_m>.
// Refuses defective-adjacent or ill-conditioned decompositions; use
// propagate (the matrix exponential handles those implicitly).
QuantumState modal_propagate(const SpectralDecomposition& decomp,
                             const QuantumState& psi0, double t);

// ---- amplitude reporting ----

struct AmplitudePhase {
  double modulus = 0.0;
  double phase = 0.0;  // principal value in (-pi, pi]
};

// Moduli and phases in the given reporting order; no gauge fixing.
std::vector<AmplitudePhase> amplitudes_and_phases(const QuantumState& state,
                                                  const BasisOrdering& ordering);

// Columns: time, prenorm, then abs_<label>, arg_<label> per basis state
// in excitation-grouped order.
Table trajectory_table(const Trajectory& trajectory);

}  // namespace nhqsim
