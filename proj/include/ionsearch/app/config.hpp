// Copyright 2026 The ionsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON run configuration (schema version 1). Unknown keys are rejected.
//
//   {
//     "schema_version": 1,
//     "n_ions": 15,
//     "marked_index": 3,
//     "mode": "physical",              // ideal | physical
//     "variant": "deterministic",      // probabilistic | deterministic
//     "iterations": 3,                 // optional override of N_G / J
//     "initialization": "pulse",       // optional: ideal | pulse
//     "shots": 0,                      // optional shot sampling (needs --seed)
//     "pulse": {"shape": "sech", "width": 1.0, "spacing": 30.0,
//               "rms_coupling": 2.0},
//     "integrator": {"steps_per_pulse": 4000, "window": 15.0,
//                    "norm_tolerance": 1e-9, "trajectory_stride": 40},
//     "imperfections": {"epsilon": 0.0, "scaling": "field",
//                       "calibration": "calibrated", "reflection": "adapted",
//                       "factors": [1.0, 0.9, ...]}
//   }

#pragma once

#include "ionsearch/grover.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <string>

namespace ionsearch::app {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "ionsearch 1.0.0";

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  SearchConfig search;
  std::uint64_t shots = 0;
};

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& known,
                           const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void get_if(const json& j, const char* key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

inline std::size_t get_count(const json& j, const char* key,
                             const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

template <class Enum>
Enum parse_enum(const json& j, const char* key, const std::string& where,
                std::initializer_list<std::pair<const char*, Enum>> options) {
  const auto s = get<std::string>(j, key, where);
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  throw ConfigError(where + "." + key + ": unsupported value '" + s + "'");
}

}  // namespace detail

/// Parses and validates a configuration. Throws ConfigError on any problem,
/// including physics-level validation of the resulting SearchConfig.
inline RunConfig parse_config(const json& j) {
  using detail::get;
  using detail::get_if;
  using detail::parse_enum;
  const std::string root = "config";
  detail::reject_unknown(j,
                         {"schema_version", "n_ions", "marked_index", "mode",
                          "variant", "iterations", "initialization", "shots",
                          "pulse", "integrator", "imperfections"},
                         root);
  for (const char* k : {"schema_version", "n_ions", "marked_index"}) {
    if (!j.contains(k)) throw ConfigError(std::string("missing key '") + k + "'");
  }
  if (get<int>(j, "schema_version", root) != kSchemaVersion) {
    throw ConfigError("unsupported schema_version (expected 1)");
  }

  RunConfig rc;
  SearchConfig& c = rc.search;
  c.n_ions = detail::get_count(j, "n_ions", root);
  c.marked = detail::get_count(j, "marked_index", root);
  if (j.contains("mode")) {
    c.mode = parse_enum<Mode>(j, "mode", root,
                              {{"ideal", Mode::ideal}, {"physical", Mode::physical}});
  }
  if (j.contains("variant")) {
    c.variant = parse_enum<Variant>(
        j, "variant", root,
        {{"probabilistic", Variant::probabilistic},
         {"deterministic", Variant::deterministic}});
  }
  if (j.contains("iterations")) {
    c.iterations = static_cast<int>(detail::get_count(j, "iterations", root));
  }
  if (j.contains("initialization")) {
    c.init = parse_enum<InitMethod>(
        j, "initialization", root,
        {{"ideal", InitMethod::ideal}, {"pulse", InitMethod::pulse}});
  }
  if (j.contains("shots")) rc.shots = detail::get_count(j, "shots", root);

  if (j.contains("pulse")) {
    const json& p = j.at("pulse");
    const std::string w = "pulse";
    detail::reject_unknown(p, {"shape", "width", "spacing", "rms_coupling"}, w);
    if (p.contains("shape")) {
      c.pulse.shape = parse_enum<ShapeKind>(
          p, "shape", w,
          {{"sech", ShapeKind::sech}, {"gaussian", ShapeKind::gaussian}});
    }
    get_if(p, "width", w, c.pulse.width);
    get_if(p, "spacing", w, c.pulse.spacing);
    if (p.contains("rms_coupling")) {
      c.pulse.rms_coupling = get<double>(p, "rms_coupling", w);
    }
  }
  if (j.contains("integrator")) {
    const json& g = j.at("integrator");
    const std::string w = "integrator";
    detail::reject_unknown(
        g, {"steps_per_pulse", "window", "norm_tolerance", "trajectory_stride"}, w);
    get_if(g, "steps_per_pulse", w, c.integrator.steps_per_pulse);
    get_if(g, "window", w, c.integrator.window);
    get_if(g, "norm_tolerance", w, c.integrator.norm_tolerance);
    get_if(g, "trajectory_stride", w, c.trajectory_stride);
  }
  if (j.contains("imperfections")) {
    const json& m = j.at("imperfections");
    const std::string w = "imperfections";
    detail::reject_unknown(
        m, {"epsilon", "scaling", "calibration", "reflection", "factors"}, w);
    get_if(m, "epsilon", w, c.imperfections.beam.epsilon);
    if (m.contains("scaling")) {
      c.imperfections.beam.scaling = parse_enum<BeamScaling>(
          m, "scaling", w,
          {{"field", BeamScaling::field}, {"intensity", BeamScaling::intensity}});
    }
    if (m.contains("calibration")) {
      c.imperfections.calibration = parse_enum<InitCalibration>(
          m, "calibration", w,
          {{"calibrated", InitCalibration::calibrated},
           {"uncalibrated", InitCalibration::uncalibrated}});
    }
    if (m.contains("reflection")) {
      c.imperfections.reflection = parse_enum<ReflectionVector>(
          m, "reflection", w,
          {{"adapted", ReflectionVector::adapted},
           {"uniform", ReflectionVector::uniform}});
    }
    if (m.contains("factors")) {
      c.imperfections.factors = get<std::vector<double>>(m, "factors", w);
    }
  }

  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.integrator.norm_tolerance > 1e-9) {
    throw ConfigError("integrator.norm_tolerance must be <= 1e-9");
  }
  return rc;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

/// Canonical echo of a configuration with every default filled in.
inline json config_to_json(const RunConfig& rc) {
  const SearchConfig& c = rc.search;
  json j{
      {"schema_version", kSchemaVersion},
      {"n_ions", c.n_ions},
      {"marked_index", c.marked},
      {"mode", to_string(c.mode)},
      {"variant", to_string(c.variant)},
      {"initialization", to_string(c.resolved_init())},
      {"shots", rc.shots},
      {"pulse",
       {{"shape", to_string(c.pulse.shape)},
        {"width", c.pulse.width},
        {"spacing", c.pulse.spacing}}},
      {"integrator",
       {{"steps_per_pulse", c.integrator.steps_per_pulse},
        {"window", c.integrator.window},
        {"norm_tolerance", c.integrator.norm_tolerance},
        {"trajectory_stride", c.trajectory_stride}}},
      {"imperfections",
       {{"epsilon", c.imperfections.beam.epsilon},
        {"scaling", c.imperfections.beam.scaling == BeamScaling::field
                        ? "field"
                        : "intensity"},
        {"calibration",
         c.imperfections.calibration == InitCalibration::calibrated
             ? "calibrated"
             : "uncalibrated"},
        {"reflection", c.imperfections.reflection == ReflectionVector::adapted
                           ? "adapted"
                           : "uniform"}}},
  };
  if (c.iterations) j["iterations"] = *c.iterations;
  if (c.pulse.rms_coupling) j["pulse"]["rms_coupling"] = *c.pulse.rms_coupling;
  if (c.imperfections.factors) {
    j["imperfections"]["factors"] = *c.imperfections.factors;
  }
  return j;
}

}  // namespace ionsearch::app
