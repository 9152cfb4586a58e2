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

// Subcommands of the ionsearch tool. Each returns a process exit code:
//   0 ok, 1 validation failure, 2 bad configuration, 3 numerical failure.

#pragma once

#include "ionsearch/app/config.hpp"
#include "ionsearch/app/output.hpp"
#include "ionsearch/app/validate.hpp"
#include "ionsearch/grover.hpp"
#include "ionsearch/imperfections.hpp"

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace ionsearch::app {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kBadConfig = 2,
  kNumericalFailure = 3,
};

/// Runs `body`, translating exceptions into exit codes and stderr messages.
inline int guarded(const std::function<int()>& body, std::ostream& err = std::cerr) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const IntegrationError& e) {
    err << "integration failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const NormalizationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

/// Writes result.json, trajectory.csv and manifest.json for one run.
inline int cmd_run(const std::string& config_path, const std::string& out_dir,
                   std::optional<std::uint64_t> seed = std::nullopt,
                   std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        const RunConfig rc = load_config(config_path);
        if (rc.shots > 0 && !seed) {
          throw ConfigError("shot sampling requires --seed");
        }
        const SearchResult r = run_search(rc.search);
        json result = result_json(rc, r);
        if (rc.shots > 0) {
          result["shots"] = {
              {"seed", *seed},
              {"count", rc.shots},
              {"counts", sample_shots(detect(r.final_state), rc.shots, *seed)}};
        }
        OutputDir out(out_dir);
        out.write_json("result.json", result);
        out.write("trajectory.csv", trajectory_csv(r, rc.search.marked));
        out.write_manifest({{"command", "run"},
                            {"config", config_to_json(rc)},
                            {"parameters", parameters_json(rc.search, r.plan)}});
        return int{kOk};
      },
      err);
}

struct Fig3Data {
  SearchResult probabilistic;
  SearchResult deterministic;
};

/// Physical-mode N = 15 search, both variants, starting from the exact
/// W register so the trace spans O1 I1 O2 I2 O3 I3.
inline SearchConfig fig3_config(Variant variant) {
  SearchConfig c;
  c.n_ions = 15;
  c.marked = 1;
  c.mode = Mode::physical;
  c.variant = variant;
  c.init = InitMethod::ideal;
  return c;
}

inline Fig3Data compute_fig3() {
  return {run_search(fig3_config(Variant::probabilistic)),
          run_search(fig3_config(Variant::deterministic))};
}

inline SweepConfig fig4_config(unsigned jobs = 1, Mode mode = Mode::physical) {
  SweepConfig s;
  s.n_ions = 20;
  s.marked = {1, 5, 10};
  s.epsilons = epsilon_grid(0.0, 0.2, 0.01);
  s.steps = 3;
  s.mode = mode;
  s.jobs = jobs;
  return s;
}

inline void write_fig3(OutputDir& out, const Fig3Data& d) {
  const SearchConfig cfg = fig3_config(Variant::probabilistic);
  out.write("fig3_probabilistic.csv", trajectory_csv(d.probabilistic, cfg.marked));
  out.write("fig3_deterministic.csv", trajectory_csv(d.deterministic, cfg.marked));

  CsvWriter timeline({"variant", "label", "kind", "target", "center", "start",
                      "end", "rms_area", "delta_t"});
  const double w = cfg.integrator.window;
  for (const auto* r : {&d.probabilistic, &d.deterministic}) {
    const std::string variant = std::string(to_string(r->plan.variant));
    for (const auto& s : r->schedule) {
      const bool local = s.label.front() == 'O';
      const auto& p = s.pulse;
      timeline.row(variant, s.label, local ? "local" : "global",
                   local ? std::to_string(cfg.marked) : std::string("all"),
                   p.center, p.center - w * p.width(), p.center + w * p.width(),
                   rms_area(p, w), p.detuning * p.width());
    }
  }
  out.write("fig3_pulses.csv", timeline.str());

  const auto peak = [](const SearchResult& r) { return r.step_probabilities.back(); };
  out.write_json(
      "fig3_summary.json",
      {{"n_ions", cfg.n_ions},
       {"marked_index", cfg.marked},
       {"probabilistic",
        {{"iterations", d.probabilistic.plan.count},
         {"peak_after_last_global", peak(d.probabilistic)},
         {"step_probabilities", d.probabilistic.step_probabilities}}},
       {"deterministic",
        {{"iterations", d.deterministic.plan.count},
         {"phi", d.deterministic.plan.phi},
         {"phi_over_pi", d.deterministic.plan.phi / std::numbers::pi},
         {"delta_t", d.deterministic.plan.delta_t},
         {"peak_after_last_global", peak(d.deterministic)},
         {"step_probabilities", d.deterministic.step_probabilities}}}});
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  CsvWriter csv({"epsilon", "ion", "infidelity"});
  for (const auto& r : rows) csv.row(r.epsilon, r.ion, r.infidelity);
  return csv.str();
}

/// Figure data: "fig3" (N = 15 traces + pulse timeline) or "fig4" (beam
/// profile sweep for N = 20).
inline int cmd_reproduce(const std::string& figure, const std::string& out_dir,
                         unsigned jobs = 1, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        if (figure != "fig3" && figure != "fig4") {
          throw ConfigError("unknown figure '" + figure + "' (fig3 | fig4)");
        }
        OutputDir out(out_dir);
        if (figure == "fig3") {
          write_fig3(out, compute_fig3());
          out.write_manifest({{"command", "reproduce"}, {"figure", figure}});
        } else {
          const SweepConfig s = fig4_config(jobs);
          out.write("fig4.csv", sweep_csv(infidelity_sweep(s)));
          out.write_manifest({{"command", "reproduce"},
                              {"figure", figure},
                              {"n_ions", s.n_ions},
                              {"marked", s.marked},
                              {"steps", s.steps},
                              {"epsilon_step", 0.01}});
        }
        return int{kOk};
      },
      err);
}

/// Runs a validation suite; writes report.json into `out_dir` when given,
/// otherwise prints it to `out`.
inline int cmd_validate(const std::string& suite_name,
                        const std::optional<std::string>& out_dir,
                        const IntegratorConfig& integrator = {},
                        std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        Suite suite;
        if (suite_name == "fast") {
          suite = Suite::fast;
        } else if (suite_name == "full") {
          suite = Suite::full;
        } else {
          throw ConfigError("unknown suite '" + suite_name + "' (fast | full)");
        }
        const ValidationReport report = run_validation(suite, integrator);
        for (const auto& c : report.checks) {
          err << (c.passed() ? "PASS " : "FAIL ") << c.name << " observed "
              << format_double(c.observed) << (c.upper_bound ? " <= " : " >= ")
              << format_double(c.threshold) << "\n";
        }
        if (out_dir) {
          OutputDir dir(*out_dir);
          dir.write_json("report.json", report.to_json());
          dir.write_manifest({{"command", "validate"}, {"suite", suite_name}});
        } else {
          out << report.to_json().dump(2) << "\n";
        }
        return report.passed() ? int{kOk} : int{kValidationFailed};
      },
      err);
}

}  // namespace ionsearch::app
