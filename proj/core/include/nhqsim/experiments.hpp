#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nhqsim/entanglement.hpp"
#include "nhqsim/hamiltonian.hpp"
#include "nhqsim/table.hpp"

namespace nhqsim {

// ---- grids ----

std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> log_grid(double lo, double hi, int count);

// ---- entanglement maps over (t, J) ----

struct EntanglementMap {
  std::vector<double> times;
  std::vector<double> couplings;
  // Cell (ti, ji) at index ti * couplings.size() + ji.
  std::vector<double> min_entropy;
  std::vector<double> tau;  // empty unless n == 3
  struct {
    double time = 0.0;
    double coupling = 0.0;
    double value = 0.0;
  } argmax;  // over tau for n == 3, else over min_entropy
};

EntanglementMap entanglement_map(const SystemConfig& config,
                                 const QuantumState& psi0,
                                 std::span<const double> times,
                                 std::span<const double> couplings,
                                 int threads = 0);

// One row per cell: t, J, S_1..S_n, tau123 (blank unless n == 3).
Table entanglement_map_table(const SystemConfig& config,
                             const QuantumState& psi0,
                             const EntanglementMap& map, int threads = 0);

// ---- optimum search ----

enum class Objective { Tau123, MinEntropy };
Objective parse_objective(std::string_view name);

struct SearchBox {
  std::array<double, 2> time{};
  std::array<double, 2> coupling{};
  std::optional<std::array<double, 2>> omega;  // searched only if present
};

struct Optimum {
  double time = 0.0;
  double coupling = 0.0;
  double omega = 0.0;  // copy of the config drive unless searched
  double value = 0.0;
};

// Coarse grid scan followed by repeated axis shrink around the incumbent
// until every axis is resolved to relative tolerance 1e-4. Ties break
// deterministically toward smaller t, then smaller J, then smaller omega.
Optimum find_optimal(const SystemConfig& config, const QuantumState& psi0,
                     const SearchBox& box, Objective objective,
                     int threads = 0);

// ---- canned traces ----

// propagate_series + amplitudes/phases in excitation-grouped order.
Table amplitude_traces(const SystemConfig& config, const QuantumState& psi0,
                       std::span<const double> times);

struct BlochTrajectory {
  Table table;  // time, x, y, z, r
  double final_purity = 0.0;
};

BlochTrajectory bloch_trajectory(const SystemConfig& config,
                                 const QuantumState& psi0,
                                 std::span<const double> times, int qubit);

struct FidelityTarget {
  std::string label;
  QuantumState state;
};

// Per-time |<target|psi>| for each labeled target, plus the GHZ-class
// best fit. Columns: time, fid_<label>..., fid_ghz_class, ghz_class_theta.
Table fidelity_traces(const SystemConfig& config, const QuantumState& psi0,
                      std::span<const FidelityTarget> targets,
                      std::span<const double> times);

// Per-time EntanglementReport rows.
Table report_table(const SystemConfig& config, const QuantumState& psi0,
                   std::span<const double> times, int threads = 0);

struct FourQubitParameterSet {
  double omega = 0.0;
  double coupling = 0.0;
};

// S_j(t) for four identical qubits from the coherent initial state, one
// table per parameter set (columns: time, S_1..S_4, min_S).
std::vector<Table> four_qubit_entropy_traces(
    std::span<const FourQubitParameterSet> sets, std::span<const double> times,
    double gamma = 6.0, int threads = 0);

}  // namespace nhqsim
