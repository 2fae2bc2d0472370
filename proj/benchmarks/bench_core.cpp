#include <benchmark/benchmark.h>

#include "nhqsim/dynamics.hpp"
#include "nhqsim/entanglement.hpp"
#include "nhqsim/hamiltonian.hpp"
#include "nhqsim/spectral.hpp"

using namespace nhqsim;

namespace {

SystemConfig paper_config(int n) {
  return SystemConfig::uniform(n, 1.576, 0.0, 6.0, 1e-3);
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const SystemConfig cfg = paper_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(cfg));
  }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(3)->Arg(5)->Arg(8);

void BM_Eigendecompose(benchmark::State& state) {
  const Matrix h = build_hamiltonian(paper_config(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigendecompose(h));
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(3)->Arg(5)->Arg(7);

void BM_Propagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix h = build_hamiltonian(paper_config(n));
  const QuantumState psi0 = QuantumState::coherent(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(h, psi0, 3.233));
  }
}
BENCHMARK(BM_Propagate)->Arg(3)->Arg(5)->Arg(7);

void BM_Report(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix h = build_hamiltonian(paper_config(n));
  const QuantumState psi = propagate(h, QuantumState::coherent(n), 3.233).state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(report(psi, 3.233));
  }
}
BENCHMARK(BM_Report)->Arg(3)->Arg(4)->Arg(6);

void BM_ThreeTangle(benchmark::State& state) {
  const Matrix h = build_hamiltonian(paper_config(3));
  const QuantumState psi = propagate(h, QuantumState::coherent(3), 3.233).state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_tangle(psi));
  }
}
BENCHMARK(BM_ThreeTangle);

void BM_DetectEps(benchmark::State& state) {
  const Matrix h =
      build_hamiltonian(SystemConfig::uniform(3, 1.5, 0.0, 6.0, 0.0));
  const SpectralDecomposition d = eigendecompose(h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_eps(d));
  }
}
BENCHMARK(BM_DetectEps);

}  // namespace

BENCHMARK_MAIN();
