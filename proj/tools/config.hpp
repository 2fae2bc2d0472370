#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "nhqsim/dynamics.hpp"
#include "nhqsim/hamiltonian.hpp"

namespace nhqsim::cli {

using Json = nlohmann::ordered_json;

// Parsed run configuration. All physical quantities are rad/us and us;
// unknown keys anywhere in the document are errors.
struct RunConfig {
  int schema_version = 1;
  SystemConfig system;
  StateKind state_kind = StateKind::Coherent;
  std::optional<Vector> custom_amplitudes;
  Json task = Json::object();
  std::string output_directory = "out";
  int precision = 17;

  QuantumState make_initial_state() const;
};

RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::string& path);

// Canonical re-serialization; parse_config(canonical_json(rc)) yields an
// identical RunConfig.
Json canonical_json(const RunConfig& config);

// Rejects keys outside `allowed`, with a path-qualified message.
void check_keys(const Json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& where);

// Grid spec: either {"values": [...]} or {"min", "max", "count",
// "spacing": "linear"|"log"}.
std::vector<double> parse_grid(const Json& spec, const std::string& where);

}  // namespace nhqsim::cli
