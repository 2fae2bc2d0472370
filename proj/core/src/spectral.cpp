#include "nhqsim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nhqsim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Refinement merge threshold: eigenvalues i and j are numerically
// indistinguishable when their gap is below safety * eps * scale * kappa,
// kappa being the per-eigenvalue condition number. The cap keeps a
// pathological kappa from merging across genuinely separated levels.
constexpr double kRefineSafety = 64.0;
constexpr double kRefineCapRelative = 1e-2;

// Union-find components over a pairwise predicate.
std::vector<std::vector<int>> components(
    int count, const std::function<bool(int, int)>& adjacent) {
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (adjacent(i, j)) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<int>> groups(count);
  for (int i = 0; i < count; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

// Complete-linkage clustering at a single absolute threshold. Points are
// first split into single-linkage components (complete-linkage clusters
// can never span them), then clustered agglomeratively inside each.
std::vector<std::vector<int>> complete_linkage(const Vector& values,
                                               double threshold) {
  const int count = static_cast<int>(values.size());
  auto gap = [&](int i, int j) { return std::abs(values(i) - values(j)); };
  auto comps = components(count, [&](int i, int j) { return gap(i, j) <= threshold; });

  std::vector<std::vector<int>> clusters;
  for (const auto& comp : comps) {
    std::vector<std::vector<int>> local;
    for (int idx : comp) local.push_back({idx});
    while (local.size() > 1) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t ba = 0, bb = 0;
      for (std::size_t a = 0; a < local.size(); ++a) {
        for (std::size_t b = a + 1; b < local.size(); ++b) {
          double d = 0.0;
          for (int i : local[a])
            for (int j : local[b]) d = std::max(d, gap(i, j));
          if (d < best) {
            best = d;
            ba = a;
            bb = b;
          }
        }
      }
      if (best > threshold) break;
      local[ba].insert(local[ba].end(), local[bb].begin(), local[bb].end());
      local.erase(local.begin() + static_cast<std::ptrdiff_t>(bb));
    }
    for (auto& c : local) {
      std::sort(c.begin(), c.end());
      clusters.push_back(std::move(c));
    }
  }
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

int stacked_rank(const Matrix& right, const std::vector<int>& members,
                 double vec_tol) {
  Matrix stack(right.rows(), static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c) {
    stack.col(static_cast<Eigen::Index>(c)) = right.col(members[c]);
  }
  Eigen::BDCSVD<Matrix> svd(stack);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > vec_tol) ++rank;
  }
  return std::max(rank, 1);
}

}  // namespace

SpectralDecomposition eigendecompose(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("eigendecompose: matrix must be square");
  }
  if (h.rows() < 1 || h.rows() > (Eigen::Index{1} << kMaxQubits)) {
    throw std::invalid_argument("eigendecompose: dimension out of range");
  }
  if (!h.allFinite()) {
    throw std::invalid_argument("eigendecompose: non-finite entries");
  }

  Eigen::ComplexEigenSolver<Matrix> solver(h, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("complex eigensolver did not converge");
  }

  SpectralDecomposition d;
  d.eigenvalues = solver.eigenvalues();
  d.right = solver.eigenvectors();  // unit columns
  d.scale = h.norm();

  const Eigen::Index n = d.dim();
  d.left = d.right.partialPivLu().solve(Matrix::Identity(n, n));

  Eigen::BDCSVD<Matrix> svd(d.right);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  d.condition_number =
      smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

  // Per-eigenvalue condition numbers; left rows satisfy <l_m|r_m> = 1,
  // so kappa_m is just the left row norm.
  Eigen::VectorXd kappa(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double k = d.left.row(m).norm();
    kappa(m) = std::isfinite(k) ? k : 1.0 / kEps;
  }

  // Group numerically indistinguishable eigenvalues and collapse each
  // genuinely coalescent (eigenvector-deficient) group onto its mean.
  const double scale_ref = std::max(1.0, d.scale);
  const double cap = kRefineCapRelative * scale_ref;
  auto groups = components(static_cast<int>(n), [&](int i, int j) {
    const double thr = std::min(
        cap, kRefineSafety * kEps * scale_ref * std::max(kappa(i), kappa(j)));
    return std::abs(d.eigenvalues(i) - d.eigenvalues(j)) <= thr;
  });
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    if (stacked_rank(d.right, g, kDefaultVecTol) >= static_cast<int>(g.size()))
      continue;  // ordinary degeneracy, leave the solver output alone
    Complex mean = 0.0;
    for (int i : g) mean += d.eigenvalues(i);
    mean /= static_cast<double>(g.size());
    for (int i : g) d.eigenvalues(i) = mean;
    d.refined_clusters.push_back(g);
    d.defective_adjacent = true;
  }

  if (d.condition_number > kDefectiveConditionLimit) {
    d.defective_adjacent = true;
  }

  double res = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    res = std::max(res,
                   (h * d.right.col(m) - d.eigenvalues(m) * d.right.col(m)).norm());
  }
  d.residual = res;
  return d;
}

std::vector<EPCluster> detect_eps(const SpectralDecomposition& decomp,
                                  double eig_tol, double vec_tol) {
  if (!(eig_tol > 0.0) || !(vec_tol > 0.0)) {
    throw std::invalid_argument("detect_eps: tolerances must be positive");
  }
  const double threshold = eig_tol * std::max(1.0, decomp.scale);
  std::vector<EPCluster> eps;
  for (const auto& members : complete_linkage(decomp.eigenvalues, threshold)) {
    if (members.size() < 2) continue;
    const int rank = stacked_rank(decomp.right, members, vec_tol);
    if (rank >= static_cast<int>(members.size())) continue;  // diagonalizable
    EPCluster c;
    Complex mean = 0.0;
    for (int i : members) mean += decomp.eigenvalues(i);
    c.center = mean / static_cast<double>(members.size());
    c.members = members;
    c.algebraic_multiplicity = static_cast<int>(members.size());
    c.geometric_rank = rank;
    c.order_estimate = c.algebraic_multiplicity;
    eps.push_back(std::move(c));
  }
  return eps;
}

// ---- parameter sweeps ----

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "omega") return SweepParameter::Omega;
  if (name == "delta") return SweepParameter::Delta;
  if (name == "gamma") return SweepParameter::Gamma;
  if (name == "coupling") return SweepParameter::Coupling;
  throw std::invalid_argument(
      "unknown sweep parameter '" + std::string(name) +
      "' (valid: omega, delta, gamma, coupling)");
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Omega: return "omega";
    case SweepParameter::Delta: return "delta";
    case SweepParameter::Gamma: return "gamma";
    case SweepParameter::Coupling: return "coupling";
  }
  throw std::logic_error("unreachable");
}

SystemConfig with_sweep_value(SystemConfig base, SweepParameter p,
                              double value) {
  switch (p) {
    case SweepParameter::Omega:
      for (auto& q : base.qubits) q.omega = value;
      break;
    case SweepParameter::Delta:
      for (auto& q : base.qubits) q.delta = value;
      break;
    case SweepParameter::Gamma:
      for (auto& q : base.qubits) q.gamma = value;
      break;
    case SweepParameter::Coupling:
      base.coupling.setConstant(value);
      base.coupling.diagonal().setZero();
      break;
  }
  base.validate();
  return base;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep grid must be nonempty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("sweep grid must be strictly increasing");
    }
  }
}

}  // namespace

SpectrumSweep spectrum_sweep(const SystemConfig& config_template,
                             SweepParameter parameter,
                             std::span<const double> grid) {
  check_grid(grid);
  SpectrumSweep sweep;
  sweep.parameter = parameter;
  sweep.parameter_name = to_string(parameter);
  sweep.grid.assign(grid.begin(), grid.end());
  sweep.spectra.reserve(grid.size());
  sweep.converged.reserve(grid.size());
  for (double value : grid) {
    const SystemConfig cfg = with_sweep_value(config_template, parameter, value);
    try {
      SpectralDecomposition d = eigendecompose(build_hamiltonian(cfg));
      Vector evals = d.eigenvalues;
      std::sort(evals.begin(), evals.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      sweep.spectra.push_back(std::move(evals));
      sweep.converged.push_back(true);
    } catch (const NumericalError&) {
      sweep.spectra.emplace_back();  // gap, not silently dropped
      sweep.converged.push_back(false);
    }
  }
  return sweep;
}

Table spectrum_sweep_table(const SpectrumSweep& sweep) {
  Eigen::Index dim = 0;
  for (const auto& s : sweep.spectra) dim = std::max(dim, s.size());
  Table t;
  t.columns.push_back(sweep.parameter_name);
  for (Eigen::Index i = 0; i < dim; ++i)
    t.columns.push_back("E" + std::to_string(i + 1) + "_re");
  for (Eigen::Index i = 0; i < dim; ++i)
    t.columns.push_back("E" + std::to_string(i + 1) + "_im");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t p = 0; p < sweep.grid.size(); ++p) {
    std::vector<double> row;
    row.push_back(sweep.grid[p]);
    const Vector& s = sweep.spectra[p];
    for (Eigen::Index i = 0; i < dim; ++i)
      row.push_back(i < s.size() ? s(i).real() : nan);
    for (Eigen::Index i = 0; i < dim; ++i)
      row.push_back(i < s.size() ? s(i).imag() : nan);
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<EpScanPoint> ep_scan(const SystemConfig& config_template,
                                 SweepParameter parameter,
                                 std::span<const double> grid,
                                 double eig_tol, double vec_tol) {
  check_grid(grid);
  std::vector<EpScanPoint> scan;
  scan.reserve(grid.size());
  for (double value : grid) {
    const SystemConfig cfg = with_sweep_value(config_template, parameter, value);
    EpScanPoint point;
    point.value = value;
    try {
      SpectralDecomposition d = eigendecompose(build_hamiltonian(cfg));
      point.clusters = detect_eps(d, eig_tol, vec_tol);
      point.converged = true;
    } catch (const NumericalError&) {
      point.converged = false;
    }
    scan.push_back(std::move(point));
  }
  return scan;
}

Table ep_scan_table(const std::vector<EpScanPoint>& scan) {
  Table t;
  t.columns = {"value",          "center_re",      "center_im",
               "multiplicity",   "geometric_rank", "order_estimate"};
  for (const auto& point : scan) {
    for (const auto& c : point.clusters) {
      t.add_row({point.value, c.center.real(), c.center.imag(),
                 static_cast<double>(c.algebraic_multiplicity),
                 static_cast<double>(c.geometric_rank),
                 static_cast<double>(c.order_estimate)});
    }
  }
  return t;
}

}  // namespace nhqsim
