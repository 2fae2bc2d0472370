#include <doctest.h>

#include <algorithm>
#include <random>

#include "nhqsim/spectral.hpp"
#include "oracles.hpp"

using namespace nhqsim;

namespace {

Matrix random_matrix(Eigen::Index dim, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = Complex(normal(rng), normal(rng));
    }
  }
  return m;
}

std::vector<Complex> sorted_eigs(const Vector& v) {
  std::vector<Complex> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace

TEST_CASE("diagonal matrix decomposes trivially") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  const SpectralDecomposition d = eigendecompose(h);
  const auto eigs = sorted_eigs(d.eigenvalues);
  CHECK(std::abs(eigs[0] - 1.0) <= 1e-14);
  CHECK(std::abs(eigs[1] - 2.0) <= 1e-14);
  CHECK(d.condition_number == doctest::Approx(1.0));
  CHECK(d.residual <= 1e-14);
  CHECK_FALSE(d.defective_adjacent);
  CHECK((d.left * d.right - Matrix::Identity(2, 2)).norm() <= 1e-14);
}

TEST_CASE("second-order EP of a single qubit") {
  // Omega = gamma/4: both eigenvalues -i gamma/4, eigenvectors coalesce.
  const Matrix h = build_hamiltonian(SystemConfig::uniform(1, 1.5, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  CHECK(d.defective_adjacent);
  for (Eigen::Index m = 0; m < 2; ++m) {
    CHECK(std::abs(d.eigenvalues(m) - Complex(0.0, -1.5)) <= 1e-9);
  }
  CHECK_THROWS_AS(detect_eps(d, -1.0, 1e-3), std::invalid_argument);
  const auto eps = detect_eps(d);
  REQUIRE(eps.size() == 1);
  CHECK(eps[0].order_estimate == 2);
  CHECK(eps[0].geometric_rank < eps[0].algebraic_multiplicity);
}

TEST_CASE("single qubit above the EP matches the quadratic formula") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(1, 3.0, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  const auto expect = oracles::single_qubit_eigenvalues(3.0, 6.0);
  const auto eigs = sorted_eigs(d.eigenvalues);
  CHECK(std::abs(eigs[0] - expect[0]) <= 1e-12);
  CHECK(std::abs(eigs[1] - expect[1]) <= 1e-12);
  CHECK(std::abs(expect[1].real() - 2.598076211353316) <= 1e-12);
  CHECK_FALSE(d.defective_adjacent);
}

TEST_CASE("biorthonormality and residual on generic matrices") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_matrix(8, rng);
    const SpectralDecomposition d = eigendecompose(h);
    CHECK(std::abs(d.eigenvalues.sum() - h.trace()) <=
          1e-10 * std::max(1.0, std::abs(h.trace())));
    if (d.defective_adjacent) continue;
    CHECK(d.residual <= 1e-9 * h.norm());
    if (d.condition_number <= 1e8) {
      const Matrix gram = d.left * d.right;
      CHECK((gram - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("uncoupled spectra are sumsets of single-qubit spectra") {
  for (int n : {2, 3}) {
    const SystemConfig cfg = SystemConfig::uniform(n, 2.3, 0.4, 5.0, 0.0);
    const SpectralDecomposition d = eigendecompose(build_hamiltonian(cfg));

    const Matrix h1 = build_hamiltonian(SystemConfig::uniform(1, 2.3, 0.4, 5.0, 0.0));
    const SpectralDecomposition d1 = eigendecompose(h1);
    std::vector<Complex> sums;
    const Eigen::Index dim = Eigen::Index{1} << n;
    for (Eigen::Index mask = 0; mask < dim; ++mask) {
      Complex total = 0.0;
      for (int j = 0; j < n; ++j) {
        total += d1.eigenvalues((mask >> j) & 1);
      }
      sums.push_back(total);
    }
    std::sort(sums.begin(), sums.end(), [](Complex a, Complex b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    const auto eigs = sorted_eigs(d.eigenvalues);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      CHECK(std::abs(eigs[i] - sums[i]) <= 1e-9);
    }
  }
}

TEST_CASE("pt-symmetric regime has uniform imaginary parts") {
  for (double omega : {1.6, 2.0}) {
    const SpectralDecomposition d = eigendecompose(
        build_hamiltonian(SystemConfig::uniform(3, omega, 0.0, 6.0, 0.0)));
    for (Eigen::Index m = 0; m < d.dim(); ++m) {
      CHECK(std::abs(d.eigenvalues(m).imag() + 4.5) <= 1e-9);
    }
    // Real parts split symmetrically about zero above the EP.
    auto eigs = sorted_eigs(d.eigenvalues);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      CHECK(std::abs(eigs[i].real() + eigs[eigs.size() - 1 - i].real()) <= 1e-9);
    }
  }
}

TEST_CASE("eighth-order EP of three uncoupled qubits") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(3, 1.5, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  CHECK(d.defective_adjacent);
  for (Eigen::Index m = 0; m < 8; ++m) {
    CHECK(std::abs(d.eigenvalues(m) - Complex(0.0, -4.5)) <= 1e-8);
  }
  const auto eps = detect_eps(d);
  REQUIRE(eps.size() == 1);
  CHECK(eps[0].order_estimate == 8);
  CHECK(std::abs(eps[0].center - Complex(0.0, -4.5)) <= 1e-8);
}

TEST_CASE("ordinary degeneracy is not an EP") {
  // Distinct orthogonal eigenvectors at a degenerate eigenvalue.
  const Matrix h = Matrix::Identity(2, 2);
  const SpectralDecomposition d = eigendecompose(h);
  CHECK_FALSE(d.defective_adjacent);
  CHECK(detect_eps(d).empty());
}

TEST_CASE("hermitian sweeps never report EPs") {
  const SystemConfig cfg = SystemConfig::uniform(2, 1.0, 0.0, 0.0, 0.05);
  const auto grid = std::vector<double>{0.5, 1.0, 1.5, 2.0};
  for (const auto& point : ep_scan(cfg, SweepParameter::Omega, grid)) {
    CHECK(point.converged);
    CHECK(point.clusters.empty());
  }
}

TEST_CASE("ep scan flags only near-coalescent grid points") {
  const SystemConfig cfg = SystemConfig::uniform(1, 1.5, 0.0, 6.0, 0.0);
  const std::vector<double> grid = {1.49, 1.4999, 1.5, 1.5001, 1.51};
  const auto scan = ep_scan(cfg, SweepParameter::Omega, grid);
  REQUIRE(scan.size() == 5);
  CHECK(scan[0].clusters.empty());
  CHECK(scan[1].clusters.empty());
  REQUIRE(scan[2].clusters.size() == 1);
  CHECK(scan[2].clusters[0].order_estimate == 2);
  CHECK(scan[3].clusters.empty());
  CHECK(scan[4].clusters.empty());
}

TEST_CASE("fourth-order EP of two qubits") {
  const SpectralDecomposition d = eigendecompose(
      build_hamiltonian(SystemConfig::uniform(2, 1.5, 0.0, 6.0, 0.0)));
  const auto eps = detect_eps(d);
  REQUIRE(eps.size() == 1);
  CHECK(eps[0].order_estimate == 4);
}

TEST_CASE("spectrum sweep sorts and validates") {
  const SystemConfig cfg = SystemConfig::uniform(1, 1.0, 0.0, 0.0, 0.0);
  const std::vector<double> grid = {1.0, 2.0};
  const SpectrumSweep sweep = spectrum_sweep(cfg, SweepParameter::Omega, grid);
  REQUIRE(sweep.spectra.size() == 2);
  CHECK(sweep.converged[0]);
  CHECK(std::abs(sweep.spectra[0](0) - Complex(-1.0)) <= 1e-12);
  CHECK(std::abs(sweep.spectra[0](1) - Complex(1.0)) <= 1e-12);
  CHECK(std::abs(sweep.spectra[1](0) - Complex(-2.0)) <= 1e-12);
  CHECK(std::abs(sweep.spectra[1](1) - Complex(2.0)) <= 1e-12);

  const std::vector<double> bad = {2.0, 1.0};
  CHECK_THROWS_AS(spectrum_sweep(cfg, SweepParameter::Omega, bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_sweep(cfg, SweepParameter::Omega, std::vector<double>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_parameter("rabi"), std::invalid_argument);

  const Table t = spectrum_sweep_table(sweep);
  CHECK(t.columns.front() == "omega");
  CHECK(t.columns.size() == 5);  // omega + 2 Re + 2 Im
  CHECK(t.rows.size() == 2);
}

TEST_CASE("eigendecompose rejects bad input") {
  CHECK_THROWS_AS(eigendecompose(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix nan_mat = Matrix::Zero(2, 2);
  nan_mat(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigendecompose(nan_mat), std::invalid_argument);
}
