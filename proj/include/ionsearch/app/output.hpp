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

// Output files: CSV (header row, comma-separated, LF, 17 significant
// digits), JSON results, and a manifest with SHA-256 checksums.

#pragma once

#include "ionsearch/app/config.hpp"
#include "ionsearch/grover.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ionsearch::app {

namespace fs = std::filesystem;

class OutputError : public Error {
 public:
  using Error::Error;
};

inline std::string format_double(double x) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

/// Minimal CSV builder. Fields are numbers or bare identifiers, so no
/// quoting is ever needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) {
    row_strings(header);
  }

  template <class... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells{cell(fields)...};
    row_strings(cells);
  }

  const std::string& str() const { return text_; }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }

  std::string text_;
};

inline std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw OutputError("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

/// Collects files written into one output directory and their checksums.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw OutputError("cannot create output directory '" + dir_.string() + "'");
    }
  }

  const fs::path& path() const { return dir_; }

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw OutputError("cannot write '" + p.string() + "'");
    files_.push_back({{"path", name},
                      {"sha256", sha256_hex(content)},
                      {"bytes", content.size()}});
  }

  void write_json(const std::string& name, const json& j) {
    write(name, j.dump(2) + "\n");
  }

  /// Writes manifest.json referencing every file written so far.
  void write_manifest(json manifest) {
    manifest["tool_version"] = kToolVersion;
    manifest["outputs"] = files_;
    const fs::path p = dir_ / "manifest.json";
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << "\n";
    if (!out) throw OutputError("cannot write '" + p.string() + "'");
  }

 private:
  fs::path dir_;
  json files_ = json::array();
};

inline json parameters_json(const SearchConfig& cfg, const IterationPlan& plan) {
  const double width = cfg.pulse.width;
  json j{{"iterations", plan.count},
         {"phi", plan.phi},
         {"phi_over_pi", plan.phi / std::numbers::pi},
         {"delta_t", plan.delta_t},
         {"width", width},
         {"init_rms_area", plan.init_area},
         {"reflection_rms_area", plan.reflection_area},
         {"reflection_is_householder", plan.reflection_is_hr}};
  if (cfg.variant == Variant::probabilistic) {
    j["n_grover"] = iteration_count(cfg.n_ions);
  }
  return j;
}

inline json schedule_json(const std::vector<ScheduledPulse>& schedule,
                          const IntegratorConfig& integrator) {
  json out = json::array();
  for (const auto& s : schedule) {
    const auto& p = s.pulse;
    out.push_back({{"label", s.label},
                   {"center", p.center},
                   {"start", p.center - integrator.window * p.width()},
                   {"end", p.center + integrator.window * p.width()},
                   {"rms_coupling", p.rms_coupling},
                   {"rms_area", rms_area(p, integrator.window)},
                   {"detuning", p.detuning},
                   {"delta_t", p.detuning * p.width()}});
  }
  return out;
}

inline json detection_json(const Detection& d) {
  json j{{"probabilities", std::vector<double>(d.probabilities.data(),
                                               d.probabilities.data() +
                                                   d.probabilities.size())},
         {"residual", d.residual},
         {"flagged", d.flagged}};
  j["found"] = d.found ? json(*d.found) : json(nullptr);
  return j;
}

inline json result_json(const RunConfig& rc, const SearchResult& r) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < r.final_state.amplitudes().size(); ++i) {
    re.push_back(r.final_state.amplitudes()(i).real());
    im.push_back(r.final_state.amplitudes()(i).imag());
  }
  return json{{"tool_version", kToolVersion},
              {"config", config_to_json(rc)},
              {"parameters", parameters_json(rc.search, r.plan)},
              {"success_probability", r.success_probability},
              {"iterations_executed", r.iterations_executed},
              {"step_probabilities", r.step_probabilities},
              {"final_state", {{"real", re}, {"imag", im}}},
              {"detection", detection_json(detect(r.final_state))},
              {"schedule", schedule_json(r.schedule, rc.search.integrator)}};
}

/// time, p_marked, p_slot0, p_other_total per trajectory sample.
inline std::string trajectory_csv(const SearchResult& r, std::size_t marked) {
  CsvWriter csv({"time", "p_marked", "p_slot0", "p_other_total"});
  for (const auto& pt : r.trajectory) {
    const auto m = static_cast<Eigen::Index>(marked);
    double rest = 0.0;
    for (Eigen::Index i = 1; i < pt.populations.size(); ++i) {
      if (i != m) rest += pt.populations(i);
    }
    csv.row(pt.time, pt.populations(m), pt.populations(0), rest);
  }
  return csv.str();
}

}  // namespace ionsearch::app
