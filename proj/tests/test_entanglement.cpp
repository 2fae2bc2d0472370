#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nhqsim/entanglement.hpp"
#include "oracles.hpp"

using namespace nhqsim;

namespace {

QuantumState w_state() {
  Vector amp = Vector::Zero(8);
  const double w = 1.0 / std::sqrt(3.0);
  amp(1) = amp(2) = amp(4) = w;  // ffe, fef, eff
  return QuantumState(3, std::move(amp));
}

QuantumState product_fe() {
  Vector amp = Vector::Zero(4);
  amp(1) = 1.0;  // |f e>
  return QuantumState(2, std::move(amp));
}

}  // namespace

TEST_CASE("partial trace on product and GHZ states") {
  const int keep1[] = {1};
  const Matrix rho = partial_trace(product_fe(), keep1);
  CHECK(std::abs(rho(0, 0) - Complex(1.0)) <= 1e-15);
  CHECK(std::abs(rho(1, 1)) <= 1e-15);

  const int keep2[] = {2};
  const Matrix mixed = partial_trace(ghz_state(3, 0.0), keep2);
  CHECK(std::abs(mixed(0, 0) - Complex(0.5)) <= 1e-15);
  CHECK(std::abs(mixed(1, 1) - Complex(0.5)) <= 1e-15);
  CHECK(std::abs(mixed(0, 1)) <= 1e-15);
}

TEST_CASE("partial trace rejects bad keep sets") {
  const QuantumState psi = QuantumState::coherent(3);
  CHECK_THROWS_AS(partial_trace(psi, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(psi, std::vector<int>{0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(psi, std::vector<int>{4}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(psi, std::vector<int>{1, 1}), std::invalid_argument);
}

TEST_CASE("partial trace matches the closed-form entries") {
  std::mt19937 rng(41);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const QuantumState psi = oracles::random_state(3, rng);
    for (int j = 1; j <= 3; ++j) {
      const int keep[] = {j};
      const Matrix direct = partial_trace(psi, keep);
      const Matrix formula = oracles::closed_form_rho(psi, j);
      worst = std::max(worst, (direct - formula).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("partial trace matches a brute-force enumeration oracle") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const QuantumState psi = oracles::random_state(4, rng);
    for (const auto& keep : {std::vector<int>{2}, std::vector<int>{1, 3},
                             std::vector<int>{2, 4}, std::vector<int>{1, 2, 4}}) {
      const Matrix direct = partial_trace(psi, keep);
      const Matrix brute = oracles::brute_partial_trace(psi, keep);
      CHECK((direct - brute).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("entanglement entropy closed form") {
  Matrix mixed = Matrix::Zero(2, 2);
  mixed(0, 0) = mixed(1, 1) = 0.5;
  CHECK(entanglement_entropy(mixed) == doctest::Approx(std::numbers::ln2));

  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(entanglement_entropy(pure) == doctest::Approx(0.0));

  const int keep[] = {1};
  const double s_w = entanglement_entropy(partial_trace(w_state(), keep));
  CHECK(std::abs(s_w - (std::log(3.0) - (2.0 / 3.0) * std::numbers::ln2)) <= 1e-10);

  CHECK_THROWS_AS(entanglement_entropy(Matrix::Identity(4, 4) * 0.25),
                  std::invalid_argument);
}

TEST_CASE("closed-form and eigenvalue entropies agree") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const QuantumState psi = oracles::random_state(3, rng);
    const int keep[] = {1 + static_cast<int>(rng() % 3)};
    const Matrix rho = partial_trace(psi, keep);
    CHECK(std::abs(entanglement_entropy(rho) - entropy_eigen(rho)) <= 1e-10);
  }
}

TEST_CASE("purity basics") {
  const int keep[] = {1};
  CHECK(purity(partial_trace(QuantumState::coherent(3), keep)) ==
        doctest::Approx(1.0));
  CHECK(purity(partial_trace(ghz_state(3, 1.0), keep)) == doctest::Approx(0.5));
}

TEST_CASE("bloch vector conventions") {
  Matrix north = Matrix::Zero(2, 2);
  north(0, 0) = 1.0;
  const Bloch bn = bloch_vector(north);
  CHECK(bn.x == doctest::Approx(0.0));
  CHECK(bn.y == doctest::Approx(0.0));
  CHECK(bn.z == doctest::Approx(1.0));

  Matrix mixed = Matrix::Identity(2, 2) * 0.5;
  CHECK(bloch_vector(mixed).norm() <= 1e-15);

  // (|f> - i|e>)/sqrt(2) points along -y.
  Vector amp(2);
  amp << 1.0, Complex(0.0, -1.0);
  const int keep[] = {1};
  const Bloch b = bloch_vector(partial_trace(QuantumState(1, amp), keep));
  CHECK(b.x == doctest::Approx(0.0));
  CHECK(b.y == doctest::Approx(-1.0));
  CHECK(b.z == doctest::Approx(0.0));
}

TEST_CASE("bloch length ties to purity") {
  std::mt19937 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const QuantumState psi = oracles::random_state(3, rng);
    const int keep[] = {1 + static_cast<int>(rng() % 3)};
    const Matrix rho = partial_trace(psi, keep);
    CHECK(std::abs(bloch_vector(rho).norm() -
                   std::sqrt(std::max(0.0, 2.0 * purity(rho) - 1.0))) <= 1e-9);
  }
}

TEST_CASE("concurrence reference values") {
  CHECK(concurrence(partial_trace(ghz_state(2, 0.0),
                                  std::vector<int>{1, 2})) == doctest::Approx(1.0));
  CHECK(concurrence(partial_trace(product_fe(), std::vector<int>{1, 2})) ==
        doctest::Approx(0.0));
  // Two-qubit reduction of GHZ_3 is a separable mixture.
  CHECK(concurrence(partial_trace(ghz_state(3, 0.0), std::vector<int>{1, 2})) <=
        1e-9);
}

TEST_CASE("concurrence rejects non-physical input") {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;  // negative weight well beyond tolerance
  CHECK_THROWS_AS(concurrence(rho), std::invalid_argument);
  CHECK_THROWS_AS(concurrence(Matrix::Identity(2, 2) * 0.5),
                  std::invalid_argument);
}

TEST_CASE("concurrence agrees with the R-matrix oracle") {
  std::mt19937 rng(45);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix rho = oracles::random_density_matrix(4, rng);
    worst = std::max(worst,
                     std::abs(concurrence(rho) - oracles::r_matrix_concurrence(rho)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("bipartition concurrence") {
  CHECK(bipartition_concurrence(1.0) == doctest::Approx(0.0));
  CHECK(bipartition_concurrence(0.5) == doctest::Approx(1.0));
  CHECK(bipartition_concurrence(0.5033) == doctest::Approx(0.99669).epsilon(1e-4));
  CHECK_THROWS_AS(bipartition_concurrence(0.4), std::invalid_argument);
  CHECK_THROWS_AS(bipartition_concurrence(1.2), std::invalid_argument);
}

TEST_CASE("three tangle on reference states") {
  CHECK(three_tangle(ghz_state(3, -std::numbers::pi / 2)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(three_tangle(w_state()) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(three_tangle(QuantumState::coherent(3)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(three_tangle(QuantumState::coherent(2)), std::invalid_argument);
}

TEST_CASE("three tangle is permutation invariant and monogamous") {
  std::mt19937 rng(46);
  const std::vector<std::vector<int>> perms = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                               {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (int trial = 0; trial < 40; ++trial) {
    const QuantumState psi = oracles::random_state(3, rng);
    const double base = three_tangle(psi);
    CHECK(base >= -1e-12);  // clamped monogamy residual
    for (const auto& perm : perms) {
      CHECK(std::abs(three_tangle(oracles::permute_qubits(psi, perm)) - base) <=
            1e-9);
    }
  }
}

TEST_CASE("ghz fidelity") {
  const QuantumState target = ghz_state(3, -std::numbers::pi / 2);
  CHECK(ghz_fidelity(target, target) == doctest::Approx(1.0));
  CHECK(ghz_fidelity(QuantumState::all_f(3), target) ==
        doctest::Approx(1.0 / std::numbers::sqrt2));
  CHECK_THROWS_AS(ghz_fidelity(QuantumState::all_f(2), target),
                  std::invalid_argument);
}

TEST_CASE("ghz class fidelity closed form") {
  for (double theta : {-2.0, 0.0, 0.4, 3.0}) {
    const GhzClassFit fit = ghz_class_fidelity(ghz_state(3, theta));
    CHECK(fit.fidelity == doctest::Approx(1.0));
    CHECK(fit.theta == doctest::Approx(theta));
  }
  CHECK(ghz_class_fidelity(QuantumState::all_f(3)).fidelity ==
        doctest::Approx(1.0 / std::numbers::sqrt2));
  // Coherent state: |a_fff| = |a_eee| = 1/(2 sqrt 2).
  CHECK(ghz_class_fidelity(QuantumState::coherent(3)).fidelity ==
        doctest::Approx(0.5));
}

TEST_CASE("ghz class closed form equals dense phase maximization") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const QuantumState psi = oracles::random_state(3, rng);
    const GhzClassFit fit = ghz_class_fidelity(psi);
    double best = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * k / 10000.0;
      best = std::max(best, ghz_fidelity(psi, ghz_state(3, theta)));
    }
    CHECK(std::abs(fit.fidelity - best) <= 1e-6);
  }
}

TEST_CASE("pure-state bipartition entropies match") {
  std::mt19937 rng(48);
  for (int trial = 0; trial < 30; ++trial) {
    const QuantumState psi = oracles::random_state(4, rng);
    const double sa = entropy_eigen(partial_trace(psi, std::vector<int>{1, 2}));
    const double sb = entropy_eigen(partial_trace(psi, std::vector<int>{3, 4}));
    CHECK(std::abs(sa - sb) <= 1e-9);
  }
}

TEST_CASE("report aggregates all measures") {
  const EntanglementReport ghz4 = report(ghz_state(4, 0.3), 1.5);
  CHECK(ghz4.time == 1.5);
  REQUIRE(ghz4.entropies.size() == 4);
  for (double s : ghz4.entropies) CHECK(s == doctest::Approx(std::numbers::ln2));
  for (double p : ghz4.purities) CHECK(p == doctest::Approx(0.5));
  CHECK_FALSE(ghz4.tau123.has_value());
  CHECK(ghz4.pair_concurrence.size() == 6);

  const EntanglementReport product = report(QuantumState::coherent(3), 0.0);
  for (double s : product.entropies) CHECK(std::abs(s) <= 1e-12);
  for (double p : product.purities) CHECK(p == doctest::Approx(1.0));
  REQUIRE(product.tau123.has_value());
  CHECK(*product.tau123 == doctest::Approx(0.0));

  const auto cols = report_columns(3);
  const auto row = report_row(product);
  CHECK(cols.size() == row.size());
  const EntanglementReport single = report(QuantumState::all_f(1), 0.0);
  CHECK(report_row(single).size() == report_columns(1).size());
  CHECK(std::isnan(report_row(single)[report_columns(1).size() - 5]));  // tau blank
}
