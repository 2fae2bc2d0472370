#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhqsim/hamiltonian.hpp"
#include "nhqsim/table.hpp"
#include "nhqsim/types.hpp"

namespace nhqsim {

inline constexpr double kDefaultEigTol = 1e-6;
inline constexpr double kDefaultVecTol = 1e-3;

// Condition number above which a decomposition is always flagged
// defective-adjacent, and the tighter bound above which the modal
// propagation path refuses to use it.
inline constexpr double kDefectiveConditionLimit = 1e12;
inline constexpr double kModalConditionLimit = 1e8;

// General complex eigendecomposition with biorthonormal left/right pairs.
//
// Eigenvalues of a defective (or nearly defective) matrix come out of a
// backward-stable solver split by ~eps^(1/k) for a k-fold coalescence,
// which is far worse than the eigenvalue data deserves: the cluster mean
// perturbs smoothly and is accurate to O(eps). eigendecompose therefore
// groups eigenvalues whose per-eigenvalue condition numbers say they are
// numerically indistinguishable, and when such a group's eigenvectors are
// rank-deficient (a genuine coalescence, not an ordinary degeneracy)
// replaces its members by the group mean. Decompositions touched by this
// refinement are flagged defective_adjacent; their residual reflects the
// distance between refined eigenvalues and the raw solver output.
struct SpectralDecomposition {
  Vector eigenvalues;  // refined values, index-aligned with vectors
  Matrix right;        // unit-norm right eigenvectors, one per column
  Matrix left;         // row m = <phi~_m|, scaled so left * right = I
  double condition_number = 0.0;  // sigma_max/sigma_min of `right`
  double residual = 0.0;          // max_m |H r_m - lambda_m r_m|
  double scale = 0.0;             // Frobenius norm of H
  bool defective_adjacent = false;
  std::vector<std::vector<int>> refined_clusters;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

SpectralDecomposition eigendecompose(const Matrix& h);

// Detected eigenvalue-coalescence group.
struct EPCluster {
  Complex center;
  std::vector<int> members;
  int algebraic_multiplicity = 0;
  int geometric_rank = 0;
  int order_estimate = 0;
};

// Complete-linkage clustering of the eigenvalues at absolute threshold
// eig_tol * max(1, scale); a cluster of size >= 2 is an EP when the
// singular values of its stacked right eigenvectors show rank < size at
// threshold vec_tol. Ordinary (diagonalizable) degeneracies are excluded.
std::vector<EPCluster> detect_eps(const SpectralDecomposition& decomp,
                                  double eig_tol = kDefaultEigTol,
                                  double vec_tol = kDefaultVecTol);

// ---- parameter sweeps ----

enum class SweepParameter { Omega, Delta, Gamma, Coupling };

SweepParameter parse_sweep_parameter(std::string_view name);
std::string to_string(SweepParameter p);

// Copy of `base` with the swept field set to `value` uniformly (all
// qubits, or all coupled pairs for Coupling).
SystemConfig with_sweep_value(SystemConfig base, SweepParameter p,
                              double value);

struct SpectrumSweep {
  SweepParameter parameter = SweepParameter::Omega;
  std::string parameter_name;
  std::vector<double> grid;
  std::vector<Vector> spectra;  // sorted by (Re, Im); empty on failure
  std::vector<bool> converged;  // eigensolver failures recorded as gaps
};

SpectrumSweep spectrum_sweep(const SystemConfig& config_template,
                             SweepParameter parameter,
                             std::span<const double> grid);

// One row per grid point: parameter value, Re(E_1..E_D), Im(E_1..E_D).
Table spectrum_sweep_table(const SpectrumSweep& sweep);

struct EpScanPoint {
  double value = 0.0;
  bool converged = false;
  std::vector<EPCluster> clusters;
};

std::vector<EpScanPoint> ep_scan(const SystemConfig& config_template,
                                 SweepParameter parameter,
                                 std::span<const double> grid,
                                 double eig_tol = kDefaultEigTol,
                                 double vec_tol = kDefaultVecTol);

// One row per detected cluster: parameter value, center, multiplicity,
// geometric rank, order estimate.
Table ep_scan_table(const std::vector<EpScanPoint>& scan);

}  // namespace nhqsim
