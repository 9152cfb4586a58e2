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

// Grover search on the ion register.
//
//   1. initialize: |psi_0> --(rms-pi pulse on all ions)--> W-state
//   2. iterate:    oracle M(e_m; phi) by a local 2 pi pulse on ion m, then
//                  the global reflection M(chi_W; phi) by an rms-2 pi pulse
//   3. detect:     population of each ion
//
// phi = pi is the original (probabilistic) algorithm. The deterministic
// variant matches both phases to
//
//   beta = asin(1/sqrt N),  J = ceil((pi/2 - beta) / (2 beta)),
//   phi  = 2 asin(sin(pi / (4J + 2)) / sin beta),
//
// after which J iterations land exactly on |psi_m>. This form reproduces
// J = 3, phi = 0.661 pi and delta T = 0.589 at N = 15.
//
// Ideal mode multiplies the analytic reflections; physical mode integrates
// the pulse schedule.

#pragma once

#include "ionsearch/beam.hpp"
#include "ionsearch/dynamics.hpp"
#include "ionsearch/householder.hpp"
#include "ionsearch/model.hpp"
#include "ionsearch/pulses.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ionsearch {

enum class Mode { ideal, physical };
enum class Variant { probabilistic, deterministic };
/// ideal: start from the exact register; pulse: integrate the init pulse.
enum class InitMethod { ideal, pulse };

inline std::string_view to_string(Mode m) {
  return m == Mode::ideal ? "ideal" : "physical";
}
inline std::string_view to_string(Variant v) {
  return v == Variant::probabilistic ? "probabilistic" : "deterministic";
}
inline std::string_view to_string(InitMethod i) {
  return i == InitMethod::ideal ? "ideal" : "pulse";
}

/// N_G = [pi / (2 asin(2 sqrt(N-1) / N))].
inline int iteration_count(std::size_t n_ions) {
  if (n_ions < 2) {
    throw InvalidSizeError("iteration_count needs N >= 2, got " +
                           std::to_string(n_ions));
  }
  const double n = static_cast<double>(n_ions);
  const double x = std::min(1.0, 2.0 * std::sqrt(n - 1.0) / n);
  return static_cast<int>(std::floor(std::numbers::pi / (2.0 * std::asin(x))));
}

struct DeterministicParams {
  int iterations;
  double phi;
};

inline DeterministicParams deterministic_params(std::size_t n_ions) {
  if (n_ions < 2) {
    throw InvalidSizeError("deterministic_params needs N >= 2, got " +
                           std::to_string(n_ions));
  }
  constexpr double pi = std::numbers::pi;
  const double beta = std::asin(1.0 / std::sqrt(static_cast<double>(n_ions)));
  const double ratio = (0.5 * pi - beta) / (2.0 * beta);
  const int j = std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
  const double s =
      std::min(1.0, std::sin(pi / (4.0 * j + 2.0)) / std::sin(beta));
  return {j, 2.0 * std::asin(s)};
}

struct PulseDefaults {
  ShapeKind shape = ShapeKind::sech;
  double width = 1.0;     ///< T
  double spacing = 30.0;  ///< distance between pulse centres, units of T
  /// Overrides the rms coupling g of the 2 pi reflection pulses (rad/s).
  std::optional<double> rms_coupling;

  PulseShape make_shape() const {
    switch (shape) {
      case ShapeKind::sech: return PulseShape::sech(width);
      case ShapeKind::gaussian: return PulseShape::gaussian(width);
      case ShapeKind::tabulated: break;
    }
    throw InvalidParameterError("tabulated shapes are not available as defaults");
  }
};

struct SearchConfig {
  std::size_t n_ions = 4;
  std::size_t marked = 1;  ///< 1-based
  Mode mode = Mode::ideal;
  Variant variant = Variant::probabilistic;
  std::optional<int> iterations;     ///< overrides N_G or J
  std::optional<InitMethod> init;    ///< default: ideal/pulse by mode
  PulseDefaults pulse;
  ImperfectionSettings imperfections;
  IntegratorConfig integrator;
  int trajectory_stride = 40;  ///< physical mode: sample every k steps

  InitMethod resolved_init() const {
    if (init) return *init;
    return mode == Mode::ideal ? InitMethod::ideal : InitMethod::pulse;
  }

  void validate() const {
    if (n_ions < 2) {
      throw InvalidSizeError("n_ions must be >= 2, got " +
                             std::to_string(n_ions));
    }
    if (marked < 1 || marked > n_ions) {
      throw IndexError("marked index " + std::to_string(marked) +
                       " outside 1.." + std::to_string(n_ions));
    }
    if (iterations && *iterations < 0) {
      throw InvalidParameterError("iterations must be >= 0");
    }
    if (!(pulse.width > 0.0)) throw InvalidParameterError("width must be > 0");
    if (!(pulse.spacing > 0.0)) {
      throw InvalidParameterError("spacing must be > 0");
    }
    if (pulse.rms_coupling && !(*pulse.rms_coupling > 0.0)) {
      throw InvalidParameterError("rms_coupling must be > 0");
    }
    if (trajectory_stride < 1) {
      throw InvalidParameterError("trajectory_stride must be >= 1");
    }
    integrator.validate();
    (void)imperfections.resolved_factors(n_ions);
    if (mode == Mode::ideal && variant == Variant::deterministic &&
        imperfections.calibration == InitCalibration::uncalibrated &&
        imperfections.reflection == ReflectionVector::adapted) {
      throw InvalidParameterError(
          "uncalibrated deterministic search needs physical mode");
    }
  }
};

/// Quantities resolved from a SearchConfig.
struct IterationPlan {
  Variant variant = Variant::probabilistic;
  int count = 1;
  double phi = std::numbers::pi;
  double delta_t = 0.0;          ///< detuning of the reflection pulses, units of 1/T
  CouplingVector init_chi = CouplingVector::uniform(2);
  double init_area = std::numbers::pi;
  CouplingVector reflection_chi = CouplingVector::uniform(2);
  double reflection_area = 2.0 * std::numbers::pi;
  bool reflection_is_hr = true;  ///< false for uncalibrated global pulses
};

inline IterationPlan plan_iterations(const SearchConfig& cfg) {
  cfg.validate();
  IterationPlan plan;
  plan.variant = cfg.variant;
  if (cfg.variant == Variant::deterministic) {
    const auto d = deterministic_params(cfg.n_ions);
    plan.count = d.iterations;
    plan.phi = d.phi;
    plan.delta_t = detuning_for_phase(d.phi, 1);
  } else {
    plan.count = iteration_count(cfg.n_ions);
  }
  if (cfg.iterations) plan.count = *cfg.iterations;

  const RealVector f = cfg.imperfections.resolved_factors(cfg.n_ions);
  plan.init_chi = CouplingVector::normalized(f.cast<Complex>());
  plan.init_area = std::numbers::pi;
  if (cfg.imperfections.calibration == InitCalibration::uncalibrated) {
    // Laser power set as if every ion saw the centre intensity.
    plan.init_area = std::numbers::pi * f.norm() /
                     std::sqrt(static_cast<double>(cfg.n_ions));
  }
  if (cfg.imperfections.reflection == ReflectionVector::adapted) {
    plan.reflection_chi = plan.init_chi;
    plan.reflection_area = 2.0 * plan.init_area;
    plan.reflection_is_hr =
        cfg.imperfections.calibration == InitCalibration::calibrated;
  } else {
    plan.reflection_chi = CouplingVector::uniform(cfg.n_ions);
    plan.reflection_area = 2.0 * std::numbers::pi;
    plan.reflection_is_hr = true;
  }
  return plan;
}

/// Register after initialization. Ideal: exact bright state of the init
/// pulse (the W-state for a uniform beam), or the analytic resonant rotation
/// when the init area is not pi. Pulse: integrate the rms-area init pulse.
inline RegisterState initialize(const SearchConfig& cfg) {
  const IterationPlan plan = plan_iterations(cfg);
  const bool uniform_beam =
      !cfg.imperfections.factors && cfg.imperfections.beam.epsilon == 0.0;
  if (cfg.resolved_init() == InitMethod::ideal) {
    if (plan.init_area == std::numbers::pi) {
      if (uniform_beam) return uniform_register(cfg.n_ions);
      return RegisterState::from_manifold(plan.init_chi.components());
    }
    return apply(resonant_propagator(plan.init_chi, plan.init_area),
                 RegisterState::ancilla(cfg.n_ions));
  }
  const PulseSpec p =
      build_area_pulse(plan.init_chi, plan.init_area, cfg.pulse.make_shape());
  return evolve(RegisterState::ancilla(cfg.n_ions), p.hamiltonian(),
                cfg.integrator);
}

struct TrajectoryPoint {
  double time;  ///< seconds (physical) or iteration index (ideal)
  RealVector populations;
};

/// A pulse of the physical schedule, labelled for timelines.
struct ScheduledPulse {
  std::string label;  ///< "P" (init), "O1", "I1", ...
  PulseSpec pulse;
};

struct SearchResult {
  RegisterState final_state;
  double success_probability = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  /// p_marked after k complete iterations, k = 0..iterations_executed.
  std::vector<double> step_probabilities;
  int iterations_executed = 0;
  IterationPlan plan;
  std::vector<ScheduledPulse> schedule;  ///< empty in ideal mode
};

namespace detail {

inline Operator reflection(const CouplingVector& chi, double phi) {
  return phi == std::numbers::pi ? standard_hr(chi) : generalized_hr(chi, phi);
}

inline SearchResult run_ideal(const SearchConfig& cfg, const IterationPlan& plan) {
  RegisterState s = initialize(cfg);
  const Operator oracle =
      reflection(CouplingVector::unit(cfg.n_ions, cfg.marked), plan.phi);
  const Operator global = plan.reflection_is_hr
                              ? reflection(plan.reflection_chi, plan.phi)
                              : resonant_propagator(plan.reflection_chi,
                                                    plan.reflection_area);
  const Operator step = compose({global, oracle});

  SearchResult r{s, 0.0, {}, {}, plan.count, plan, {}};
  r.trajectory.push_back({0.0, s.populations()});
  r.step_probabilities.push_back(marked_probability(s, cfg.marked));
  for (int k = 1; k <= plan.count; ++k) {
    s = apply(step, s);
    r.trajectory.push_back({static_cast<double>(k), s.populations()});
    r.step_probabilities.push_back(marked_probability(s, cfg.marked));
  }
  r.final_state = s;
  r.success_probability = marked_probability(s, cfg.marked);
  return r;
}

}  // namespace detail

/// Physical pulse sequence: [P,] O1, I1, O2, I2, ... centred `spacing` T
/// apart starting at t = 0.
inline std::vector<ScheduledPulse> build_schedule(const SearchConfig& cfg,
                                                  const IterationPlan& plan) {
  const PulseShape shape = cfg.pulse.make_shape();
  const double dt = cfg.pulse.spacing * cfg.pulse.width;
  const HrTarget target{plan.phi};
  std::vector<ScheduledPulse> out;
  double t = 0.0;
  if (cfg.resolved_init() == InitMethod::pulse) {
    out.push_back({"P", build_area_pulse(plan.init_chi, plan.init_area, shape, t)});
    t += dt;
  }
  PulseSpec oracle = build_local_pulse(cfg.marked, cfg.n_ions, target, shape,
                                       0.0, cfg.integrator);
  PulseSpec global;
  if (plan.reflection_is_hr) {
    global = build_global_pulse(plan.reflection_chi, target, shape, 0.0,
                                cfg.integrator);
  } else {
    global = build_area_pulse(plan.reflection_chi, plan.reflection_area, shape);
    global.detuning = oracle.detuning;
  }
  if (cfg.pulse.rms_coupling) {
    oracle.rms_coupling = *cfg.pulse.rms_coupling;
    global.rms_coupling = *cfg.pulse.rms_coupling;
  }
  for (int k = 1; k <= plan.count; ++k) {
    out.push_back({"O" + std::to_string(k), oracle.centered_at(t)});
    t += dt;
    out.push_back({"I" + std::to_string(k), global.centered_at(t)});
    t += dt;
  }
  return out;
}

namespace detail {

inline SearchResult run_physical(const SearchConfig& cfg,
                                 const IterationPlan& plan) {
  const auto schedule = build_schedule(cfg, plan);
  const RegisterState start = cfg.resolved_init() == InitMethod::pulse
                                  ? RegisterState::ancilla(cfg.n_ions)
                                  : initialize(cfg);
  SearchResult r{start, 0.0, {}, {}, plan.count, plan, schedule};
  if (schedule.empty()) {
    r.trajectory.push_back({0.0, start.populations()});
    r.step_probabilities.push_back(marked_probability(start, cfg.marked));
    r.success_probability = r.step_probabilities.back();
    return r;
  }

  std::vector<HamiltonianSpec> specs;
  for (const auto& p : schedule) specs.push_back(p.pulse.hamiltonian());

  // Iteration k is complete at the end of I_k's window; the register before
  // the first oracle is sampled at the end of the init window (or at start).
  std::vector<double> checkpoints;
  const double w = cfg.integrator.window;
  std::size_t first_oracle = 0;
  if (cfg.resolved_init() == InitMethod::pulse) {
    checkpoints.push_back(specs[0].center + w * specs[0].width());
    first_oracle = 1;
  } else {
    checkpoints.push_back(specs[0].center - w * specs[0].width());
  }
  for (std::size_t i = first_oracle + 1; i < specs.size(); i += 2) {
    checkpoints.push_back(specs[i].center + w * specs[i].width());
  }
  const double tol = 1e-9 * cfg.pulse.width;
  std::size_t next = 0;
  const std::size_t m = cfg.marked;
  const auto observe = [&](double t, const ComplexVector& y) {
    r.trajectory.push_back({t, y.cwiseAbs2()});
    while (next < checkpoints.size() && std::abs(t - checkpoints[next]) <= tol) {
      r.step_probabilities.push_back(std::norm(y(static_cast<Eigen::Index>(m))));
      ++next;
    }
  };
  const RegisterState end =
      evolve_schedule(start, specs, cfg.integrator, observe, cfg.trajectory_stride);
  r.final_state = end;
  r.success_probability = marked_probability(end, cfg.marked);
  return r;
}

}  // namespace detail

inline SearchResult run_search(const SearchConfig& cfg) {
  const IterationPlan plan = plan_iterations(cfg);
  return cfg.mode == Mode::ideal ? detail::run_ideal(cfg, plan)
                                 : detail::run_physical(cfg, plan);
}

/// Readout probabilities of every ion plus the slot-0 residual.
struct Detection {
  RealVector probabilities;      ///< ion k at index k-1
  double residual = 0.0;         ///< population left on |psi_0>
  std::optional<std::size_t> found;  ///< 1-based argmax, none if empty
  bool flagged = false;          ///< residual above the flag threshold
};

inline Detection detect(const RegisterState& s, double flag_threshold = 1e-3) {
  Detection d;
  d.probabilities = s.manifold().cwiseAbs2();
  d.residual = s.population(0);
  Eigen::Index best = 0;
  const double peak = d.probabilities.maxCoeff(&best);
  if (peak > 0.0) d.found = static_cast<std::size_t>(best) + 1;
  d.flagged = d.residual > flag_threshold;
  return d;
}

/// Multinomial readout of `shots` projective measurements. counts[0] is the
/// slot-0 residual, counts[k] ion k.
inline std::vector<std::uint64_t> sample_shots(const Detection& d,
                                               std::uint64_t shots,
                                               std::uint64_t seed) {
  std::vector<double> weights{d.residual};
  for (Eigen::Index i = 0; i < d.probabilities.size(); ++i) {
    weights.push_back(d.probabilities(i));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  std::vector<std::uint64_t> counts(weights.size(), 0);
  for (std::uint64_t i = 0; i < shots; ++i) ++counts[dist(rng)];
  return counts;
}

}  // namespace ionsearch
