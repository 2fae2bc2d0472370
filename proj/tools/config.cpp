#include "config.hpp"

#include <fstream>
#include <stdexcept>

#include "nhqsim/experiments.hpp"

namespace nhqsim::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

double get_number(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const Json& obj, const char* key, double fallback,
                     const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

Vector parse_amplitudes(const Json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty()) {
    fail(where, "expected a nonempty array of [re, im] pairs");
  }
  Vector amp(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      fail(where + "[" + std::to_string(i) + "]", "expected [re, im]");
    }
    amp(static_cast<Eigen::Index>(i)) =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return amp;
}

}  // namespace

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

std::vector<double> parse_grid(const Json& spec, const std::string& where) {
  if (!spec.is_object()) fail(where, "expected a grid object");
  if (spec.contains("values")) {
    check_keys(spec, {"values"}, where);
    const Json& arr = spec.at("values");
    if (!arr.is_array() || arr.empty()) fail(where + ".values", "expected a nonempty array");
    std::vector<double> grid;
    for (const Json& v : arr) {
      if (!v.is_number()) fail(where + ".values", "expected numbers");
      grid.push_back(v.get<double>());
    }
    return grid;
  }
  check_keys(spec, {"min", "max", "count", "spacing"}, where);
  const double lo = get_number(spec, "min", where);
  const double hi = get_number(spec, "max", where);
  const double count_d = get_number(spec, "count", where);
  const int count = static_cast<int>(count_d);
  if (count_d != count || count < 1) fail(where + ".count", "expected a positive integer");
  std::string spacing = "linear";
  if (spec.contains("spacing")) {
    if (!spec.at("spacing").is_string()) fail(where + ".spacing", "expected a string");
    spacing = spec.at("spacing").get<std::string>();
  }
  if (spacing == "linear") return linear_grid(lo, hi, count);
  if (spacing == "log") return log_grid(lo, hi, count);
  fail(where + ".spacing", "expected 'linear' or 'log'");
}

QuantumState RunConfig::make_initial_state() const {
  return initial_state(state_kind, system.n(),
                       custom_amplitudes ? &*custom_amplitudes : nullptr);
}

RunConfig parse_config(const Json& doc) {
  check_keys(doc, {"schema_version", "system", "initial_state", "task", "output"},
             "top level");
  RunConfig rc;

  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer()) {
    fail("top level", "missing integer 'schema_version'");
  }
  rc.schema_version = doc.at("schema_version").get<int>();
  if (rc.schema_version != 1) {
    fail("schema_version", "unsupported version " + std::to_string(rc.schema_version));
  }

  if (!doc.contains("system")) fail("top level", "missing 'system' block");
  const Json& sys = doc.at("system");
  check_keys(sys,
             {"n", "omega", "delta", "gamma", "qubits", "coupling",
              "coupling_matrix", "coupling_convention"},
             "system");

  int n = 0;
  if (sys.contains("qubits")) {
    if (sys.contains("n") || sys.contains("omega") || sys.contains("delta") ||
        sys.contains("gamma")) {
      fail("system", "'qubits' excludes 'n'/'omega'/'delta'/'gamma'");
    }
    const Json& qubits = sys.at("qubits");
    if (!qubits.is_array() || qubits.empty()) fail("system.qubits", "expected a nonempty array");
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      const std::string where = "system.qubits[" + std::to_string(j) + "]";
      check_keys(qubits[j], {"omega", "delta", "gamma"}, where);
      QubitParams q;
      q.omega = get_number_or(qubits[j], "omega", 0.0, where);
      q.delta = get_number_or(qubits[j], "delta", 0.0, where);
      q.gamma = get_number_or(qubits[j], "gamma", 0.0, where);
      rc.system.qubits.push_back(q);
    }
    n = static_cast<int>(qubits.size());
  } else {
    if (!sys.contains("n") || !sys.at("n").is_number_integer()) {
      fail("system", "missing integer 'n' (or a 'qubits' array)");
    }
    n = sys.at("n").get<int>();
    if (n < 1 || n > kMaxQubits) {
      fail("system.n", "must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    QubitParams q;
    q.omega = get_number_or(sys, "omega", 0.0, "system");
    q.delta = get_number_or(sys, "delta", 0.0, "system");
    q.gamma = get_number_or(sys, "gamma", 0.0, "system");
    rc.system.qubits.assign(static_cast<std::size_t>(n), q);
  }

  if (sys.contains("coupling_matrix")) {
    if (sys.contains("coupling")) {
      fail("system", "'coupling' and 'coupling_matrix' are exclusive");
    }
    const Json& mat = sys.at("coupling_matrix");
    if (!mat.is_array() || static_cast<int>(mat.size()) != n) {
      fail("system.coupling_matrix", "expected an n x n array");
    }
    rc.system.coupling.resize(n, n);
    for (int r = 0; r < n; ++r) {
      const Json& row = mat[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        fail("system.coupling_matrix", "expected an n x n array");
      }
      for (int c = 0; c < n; ++c) {
        const Json& v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) fail("system.coupling_matrix", "expected numbers");
        rc.system.coupling(r, c) = v.get<double>();
      }
    }
  } else {
    const double j = get_number_or(sys, "coupling", 0.0, "system");
    rc.system.coupling = RealMatrix::Constant(n, n, j);
    rc.system.coupling.diagonal().setZero();
  }

  if (sys.contains("coupling_convention")) {
    const Json& v = sys.at("coupling_convention");
    if (!v.is_string()) fail("system.coupling_convention", "expected a string");
    const std::string name = v.get<std::string>();
    if (name == "pair_once") {
      rc.system.convention = CouplingConvention::PairOnce;
    } else if (name == "ordered_double") {
      rc.system.convention = CouplingConvention::OrderedDouble;
    } else {
      fail("system.coupling_convention", "expected 'pair_once' or 'ordered_double'");
    }
  }
  rc.system.validate();

  if (doc.contains("initial_state")) {
    const Json& init = doc.at("initial_state");
    check_keys(init, {"kind", "amplitudes"}, "initial_state");
    if (!init.contains("kind") || !init.at("kind").is_string()) {
      fail("initial_state", "missing string 'kind'");
    }
    rc.state_kind = parse_state_kind(init.at("kind").get<std::string>());
    if (rc.state_kind == StateKind::Custom) {
      if (!init.contains("amplitudes")) {
        fail("initial_state", "custom state requires 'amplitudes'");
      }
      rc.custom_amplitudes =
          parse_amplitudes(init.at("amplitudes"), "initial_state.amplitudes");
      if (rc.custom_amplitudes->size() != rc.system.dim()) {
        fail("initial_state.amplitudes", "length must be 2^n");
      }
    } else if (init.contains("amplitudes")) {
      fail("initial_state", "'amplitudes' is only valid for kind 'custom'");
    }
  }

  if (doc.contains("task")) {
    if (!doc.at("task").is_object()) fail("task", "expected an object");
    rc.task = doc.at("task");
  }

  if (doc.contains("output")) {
    const Json& out = doc.at("output");
    check_keys(out, {"directory", "precision"}, "output");
    if (out.contains("directory")) {
      if (!out.at("directory").is_string()) fail("output.directory", "expected a string");
      rc.output_directory = out.at("directory").get<std::string>();
    }
    if (out.contains("precision")) {
      if (!out.at("precision").is_number_integer()) {
        fail("output.precision", "expected an integer");
      }
      rc.precision = out.at("precision").get<int>();
      if (rc.precision < 6 || rc.precision > 17) {
        fail("output.precision", "must be in [6, 17]");
      }
    }
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

Json canonical_json(const RunConfig& config) {
  Json doc;
  doc["schema_version"] = config.schema_version;

  Json sys;
  // Uniform parameter blocks collapse back to scalars (units: rad/us).
  const auto& qs = config.system.qubits;
  const bool uniform_qubits =
      std::all_of(qs.begin(), qs.end(), [&](const QubitParams& q) {
        return q.omega == qs.front().omega && q.delta == qs.front().delta &&
               q.gamma == qs.front().gamma;
      });
  if (uniform_qubits) {
    sys["n"] = config.system.n();
    sys["omega"] = qs.front().omega;
    sys["delta"] = qs.front().delta;
    sys["gamma"] = qs.front().gamma;
  } else {
    Json arr = Json::array();
    for (const QubitParams& q : qs) {
      arr.push_back({{"omega", q.omega}, {"delta", q.delta}, {"gamma", q.gamma}});
    }
    sys["qubits"] = std::move(arr);
  }
  const int n = config.system.n();
  bool uniform_coupling = true;
  const double j0 = n > 1 ? config.system.coupling(0, 1) : 0.0;
  for (int r = 0; r < n && uniform_coupling; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r != c && config.system.coupling(r, c) != j0) {
        uniform_coupling = false;
        break;
      }
    }
  }
  if (uniform_coupling) {
    sys["coupling"] = j0;
  } else {
    Json mat = Json::array();
    for (int r = 0; r < n; ++r) {
      Json row = Json::array();
      for (int c = 0; c < n; ++c) row.push_back(config.system.coupling(r, c));
      mat.push_back(std::move(row));
    }
    sys["coupling_matrix"] = std::move(mat);
  }
  sys["coupling_convention"] =
      config.system.convention == CouplingConvention::PairOnce ? "pair_once"
                                                               : "ordered_double";
  doc["system"] = std::move(sys);

  Json init;
  init["kind"] = to_string(config.state_kind);
  if (config.custom_amplitudes) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < config.custom_amplitudes->size(); ++i) {
      const Complex a = (*config.custom_amplitudes)(i);
      arr.push_back({a.real(), a.imag()});
    }
    init["amplitudes"] = std::move(arr);
  }
  doc["initial_state"] = std::move(init);
  doc["task"] = config.task;
  doc["output"] = {{"directory", config.output_directory},
                   {"precision", config.precision}};
  return doc;
}

}  // namespace nhqsim::cli
