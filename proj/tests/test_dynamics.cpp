#include <doctest.h>

#include <numbers>
#include <random>

#include "nhqsim/dynamics.hpp"
#include "oracles.hpp"

using namespace nhqsim;

TEST_CASE("matrix exponential basics") {
  CHECK((matrix_exponential(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() <=
        1e-15);

  // exp(-i pi sigma_x / 2) = -i sigma_x
  Matrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const Matrix u = matrix_exponential(Complex(0.0, -std::numbers::pi / 2) * sx);
  Matrix expect(2, 2);
  expect << 0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0;
  CHECK((u - expect).norm() <= 1e-14);

  CHECK_THROWS_AS(matrix_exponential(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("matrix exponential matches the taylor oracle") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(1, 1.5, 0.0, 6.0, 0.0));
  const Matrix a = Complex(0.0, -1.0) * h;
  const Matrix expect = oracles::taylor_expm(a, 40);
  CHECK((matrix_exponential(a) - expect).norm() <= 1e-10 * expect.norm());

  std::mt19937 rng(31);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = Complex(normal(rng), normal(rng));
    const Matrix expect2 = oracles::taylor_expm(m, 60);
    CHECK((matrix_exponential(m) - expect2).norm() <= 1e-11 * expect2.norm());
  }
}

TEST_CASE("initial states") {
  const QuantumState coh = QuantumState::coherent(3);
  for (Eigen::Index m = 0; m < 8; ++m) {
    CHECK(std::abs(std::abs(coh.amplitude(m)) - 0.25 * std::numbers::sqrt2) <=
          1e-15);
  }
  const QuantumState ground = QuantumState::all_f(4);
  CHECK(std::abs(ground.amplitude(0) - Complex(1.0)) <= 1e-15);
  CHECK(ground.amplitudes().tail(15).norm() == 0.0);

  Vector v(2);
  v << 1.0, 1.0;
  const QuantumState custom = initial_state(StateKind::Custom, 1, &v);
  CHECK(std::abs(custom.amplitude(0) - Complex(std::numbers::sqrt2 / 2)) <= 1e-12);

  Vector zero = Vector::Zero(2);
  CHECK_THROWS_AS(QuantumState(1, zero), std::invalid_argument);
  CHECK_THROWS_AS(initial_state(StateKind::Custom, 1, nullptr),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state_kind("thermal"), std::invalid_argument);
}

TEST_CASE("excitation-grouped ordering and labels") {
  const BasisOrdering order = BasisOrdering::excitation_grouped(3);
  CHECK(order.to_standard == std::vector<int>{0, 1, 2, 4, 3, 5, 6, 7});
  CHECK(BasisOrdering::excitation_grouped(4).to_standard ==
        std::vector<int>{0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15});
  CHECK(basis_label(3, 0) == "fff");
  CHECK(basis_label(3, 1) == "ffe");
  CHECK(basis_label(3, 4) == "eff");
  CHECK(basis_label(3, 7) == "eee");
  CHECK(basis_label(4, 8) == "efff");
}

TEST_CASE("coherent state phases follow (-i)^k") {
  const QuantumState coh = QuantumState::coherent(3);
  const auto ap = amplitudes_and_phases(coh, BasisOrdering::excitation_grouped(3));
  CHECK(ap[0].phase == doctest::Approx(0.0));                      // fff
  CHECK(ap[1].phase == doctest::Approx(-std::numbers::pi / 2));    // ffe
  CHECK(ap[4].phase == doctest::Approx(std::numbers::pi));         // fee -> -1
  CHECK(ap[7].phase == doctest::Approx(std::numbers::pi / 2));     // eee -> +i
  for (const auto& e : ap) {
    CHECK(e.phase > -std::numbers::pi);
    CHECK(e.phase <= std::numbers::pi);
  }

  const QuantumState ground = QuantumState::all_f(3);
  const auto gp = amplitudes_and_phases(ground, BasisOrdering::excitation_grouped(3));
  CHECK(gp[0].modulus == doctest::Approx(1.0));
  for (std::size_t m = 1; m < 8; ++m) CHECK(gp[m].modulus == doctest::Approx(0.0));
}

TEST_CASE("propagate at t = 0 is the identity") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(2, 1.0, 0.1, 3.0, 0.01));
  const QuantumState psi0 = QuantumState::coherent(2);
  const PropagationResult r = propagate(h, psi0, 0.0);
  CHECK((r.state.amplitudes() - psi0.amplitudes()).norm() <= 1e-15);
  CHECK(r.prenorm == doctest::Approx(1.0));
  CHECK_THROWS_AS(propagate(h, psi0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(propagate(h, QuantumState::coherent(3), 1.0),
                  std::invalid_argument);
}

TEST_CASE("hermitian and lossy revival periods") {
  const double omega = 1.576, gamma = 6.0;
  const QuantumState psi0 = QuantumState::coherent(3);

  const Matrix h_lossless =
      build_hamiltonian(SystemConfig::uniform(3, omega, 0.0, 0.0, 0.0));
  const double t_h = std::numbers::pi / omega;
  CHECK(propagate(h_lossless, psi0, t_h).state.overlap(psi0) >= 0.9999);

  const Matrix h_lossy =
      build_hamiltonian(SystemConfig::uniform(3, omega, 0.0, gamma, 0.0));
  const double t_nh =
      4.0 * std::numbers::pi / std::sqrt(16.0 * omega * omega - gamma * gamma);
  CHECK(t_nh == doctest::Approx(6.4976).epsilon(1e-3));
  CHECK(propagate(h_lossy, psi0, t_nh).state.overlap(psi0) >= 0.999);
}

TEST_CASE("prenorm is contractive and exactly one for hermitian flows") {
  const QuantumState psi0 = QuantumState::coherent(3);
  const Matrix h_lossy =
      build_hamiltonian(SystemConfig::uniform(3, 1.576, 0.3, 6.0, 1e-3));
  double prev = 1.0 + 1e-12;
  for (double t : {0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 12.0}) {
    const double pn = propagate(h_lossy, psi0, t).prenorm;
    CHECK(pn <= 1.0 + 1e-9);
    CHECK(pn <= prev + 1e-9);
    prev = pn;
  }
  const Matrix h_unitary =
      build_hamiltonian(SystemConfig::uniform(3, 1.576, 0.3, 0.0, 1e-3));
  for (double t : {1.0, 10.0, 100.0}) {
    CHECK(std::abs(propagate(h_unitary, psi0, t).prenorm - 1.0) <= 1e-9);
  }
}

TEST_CASE("split-step invariance") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3));
  const QuantumState psi0 = QuantumState::coherent(3);
  const QuantumState direct = propagate(h, psi0, 3.0).state;
  const QuantumState two_leg =
      propagate(h, propagate(h, psi0, 1.7).state, 1.3).state;
  CHECK((direct.amplitudes() - two_leg.amplitudes()).norm() <= 1e-9);
}

TEST_CASE("propagate_series equals independent propagation") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(2, 1.3, 0.0, 5.0, 1e-2));
  const QuantumState psi0 = QuantumState::coherent(2);

  const std::vector<double> single = {0.0};
  const Trajectory trivial = propagate_series(h, psi0, single);
  CHECK(trivial.states.size() == 1);
  CHECK((trivial.states[0].amplitudes() - psi0.amplitudes()).norm() <= 1e-15);

  // The series may run through a cached decomposition; it must agree with
  // the matrix-exponential route within the cross-method tolerance.
  const std::vector<double> times = {0.5, 1.0, 2.5};
  const Trajectory traj = propagate_series(h, psi0, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const PropagationResult r = propagate(h, psi0, times[i]);
    CHECK((traj.states[i].amplitudes() - r.state.amplitudes()).norm() <= 1e-9);
    CHECK(traj.prenorms[i] == doctest::Approx(r.prenorm).epsilon(1e-9));
    CHECK(std::abs(traj.states[i].amplitudes().norm() - 1.0) <= 1e-12);
  }
  const std::vector<double> bad = {1.0, 0.5};
  CHECK_THROWS_AS(propagate_series(h, psi0, bad), std::invalid_argument);
}

TEST_CASE("modal propagation agrees with the matrix exponential") {
  // Diagonal generator: per-component phase/decay factors are exact.
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = Complex(1.0, -0.2);
  diag(1, 1) = Complex(-0.5, -0.1);
  const SpectralDecomposition dd = eigendecompose(diag);
  Vector v(2);
  v << 0.6, 0.8;
  const QuantumState psi(1, v);
  const QuantumState modal = modal_propagate(dd, psi, 0.9);
  const QuantumState direct = propagate(diag, psi, 0.9).state;
  CHECK((modal.amplitudes() - direct.amplitudes()).norm() <= 1e-12);

  const Matrix h = build_hamiltonian(SystemConfig::uniform(1, 3.0, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  const QuantumState from_f = QuantumState::all_f(1);
  const QuantumState m2 = modal_propagate(d, from_f, 0.7);
  const QuantumState e2 = propagate(h, from_f, 0.7).state;
  CHECK((m2.amplitudes() - e2.amplitudes()).norm() <= 1e-9);
}

TEST_CASE("modal propagation refuses defective decompositions") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(3, 1.5, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  CHECK_THROWS_AS(modal_propagate(d, QuantumState::coherent(3), 1.0),
                  std::invalid_argument);
}

TEST_CASE("propagation matches an adaptive runge-kutta oracle") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3));
  const QuantumState psi0 = QuantumState::coherent(3);
  for (double t : {0.7, 2.0, 3.233, 5.1}) {
    Vector oracle = oracles::rk45_schrodinger(h, psi0.amplitudes(), t, 1e-11);
    oracle /= oracle.norm();
    const QuantumState psi = propagate(h, psi0, t).state;
    CHECK((psi.amplitudes() - oracle).norm() <= 1e-7);
  }
}

TEST_CASE("trajectory table layout") {
  const Matrix h = build_hamiltonian(SystemConfig::uniform(2, 1.0, 0.0, 2.0, 0.0));
  const std::vector<double> times = {0.0, 1.0};
  const Table t = trajectory_table(propagate_series(h, QuantumState::coherent(2), times));
  const std::vector<std::string> expect = {"time",   "prenorm", "abs_ff",
                                           "arg_ff", "abs_fe",  "arg_fe",
                                           "abs_ef", "arg_ef",  "abs_ee",
                                           "arg_ee"};
  CHECK(t.columns == expect);
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[0][0] == 0.0);
  CHECK(t.rows[0][1] == doctest::Approx(1.0));
}
