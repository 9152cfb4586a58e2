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

// Self-check suites run by `ionsearch validate`.

#pragma once

#include "ionsearch/app/config.hpp"
#include "ionsearch/dynamics.hpp"
#include "ionsearch/grover.hpp"
#include "ionsearch/householder.hpp"
#include "ionsearch/pulses.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace ionsearch::app {

enum class Suite { fast, full };

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  bool upper_bound = true;  ///< pass iff observed <= threshold (else >=)
  std::string detail;

  bool passed() const {
    return upper_bound ? observed <= threshold : observed >= threshold;
  }
  double margin() const {
    return upper_bound ? threshold - observed : observed - threshold;
  }
};

struct ValidationReport {
  Suite suite = Suite::fast;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }

  json to_json() const {
    json list = json::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name},
                      {"passed", c.passed()},
                      {"observed", c.observed},
                      {"threshold", c.threshold},
                      {"bound", c.upper_bound ? "max" : "min"},
                      {"margin", c.margin()},
                      {"detail", c.detail}});
    }
    return {{"tool_version", kToolVersion},
            {"suite", suite == Suite::fast ? "fast" : "full"},
            {"passed", passed()},
            {"checks", list}};
  }
};

/// Random normalized complex N-vector with Gaussian components.
inline CouplingVector random_chi(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return CouplingVector::normalized(v);
}

/// Propagator error at `steps` and `2 steps` against a 16x finer reference;
/// returns err(steps) / err(2 steps), which tends to 16 for RK4.
inline double step_halving_ratio(const HamiltonianSpec& spec, int steps,
                                 IntegratorConfig cfg = {}) {
  cfg.norm_tolerance = 1e-2;  // coarse runs drift well past the default
  cfg.max_phase_step = 1e9;
  cfg.steps_per_pulse = steps * 16;
  const Operator ref = propagator(spec, cfg);
  cfg.steps_per_pulse = steps;
  const double coarse = frobenius_distance(propagator(spec, cfg), ref);
  cfg.steps_per_pulse = 2 * steps;
  const double fine = frobenius_distance(propagator(spec, cfg), ref);
  return coarse / fine;
}

inline ValidationReport run_validation(Suite suite,
                                       const IntegratorConfig& integrator = {}) {
  constexpr double pi = std::numbers::pi;
  const bool full = suite == Suite::full;
  ValidationReport report{suite, {}};
  std::mt19937_64 rng(20260101);
  const PulseShape sech = PulseShape::sech(1.0);

  {  // HR algebra: unitarity, involution, phase inverse, slot-0 identity.
    double worst = 0.0;
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (std::size_t n = 2; n <= (full ? 32u : 8u); ++n) {
      const auto chi = random_chi(n, rng);
      const double phi = angle(rng);
      const Operator m = standard_hr(chi);
      const auto d = static_cast<Eigen::Index>(n + 1);
      const ComplexMatrix id = ComplexMatrix::Identity(d, d);
      worst = std::max(worst, (m.matrix() * m.matrix() - id).norm());
      worst = std::max(worst, unitarity_defect(generalized_hr(chi, phi).matrix()));
      worst = std::max(worst, (generalized_hr(chi, phi).matrix() *
                                   generalized_hr(chi, -phi).matrix() -
                               id).norm());
      worst = std::max(worst, (generalized_hr(chi, pi).matrix() - m.matrix()).norm());
    }
    report.checks.push_back({"hr_algebra", worst, 1e-12, true,
                             "involution, phase inverse, unitarity"});
  }

  {  // Ideal Grover trajectory against sin^2((2k+1) theta).
    double worst = 0.0;
    for (std::size_t n = 2; n <= (full ? 64u : 16u); ++n) {
      const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
      SearchConfig c;
      c.n_ions = n;
      c.marked = 1 + n / 2;
      const auto r = run_search(c);
      for (std::size_t k = 0; k < r.step_probabilities.size(); ++k) {
        const double expect = std::pow(std::sin((2.0 * k + 1.0) * theta), 2);
        worst = std::max(worst, std::abs(r.step_probabilities[k] - expect));
      }
    }
    report.checks.push_back({"grover_closed_form", worst, 1e-12, true,
                             "ideal marked probability vs sin^2((2k+1)theta)"});
  }

  {  // Deterministic unit fidelity, ideal.
    double worst = 0.0;
    for (std::size_t n = 3; n <= (full ? 64u : 16u); ++n) {
      SearchConfig c;
      c.n_ions = n;
      c.marked = n;
      c.variant = Variant::deterministic;
      worst = std::max(worst, 1.0 - run_search(c).success_probability);
    }
    report.checks.push_back({"deterministic_unit_fidelity_ideal", worst, 1e-9,
                             true, full ? "N = 3..64" : "N = 3..16"});
  }

  {  // Deterministic search through the pulse dynamics; sensitive to the
     // scale of the detuning term.
    SearchConfig c;
    c.n_ions = 15;
    c.marked = 4;
    c.variant = Variant::deterministic;
    c.mode = Mode::physical;
    c.init = InitMethod::ideal;
    c.integrator = integrator;
    c.trajectory_stride = integrator.steps_per_pulse;
    report.checks.push_back({"deterministic_fidelity_physical",
                             run_search(c).success_probability, 0.999, false,
                             "N = 15, sech pulses"});
  }

  {  // Detuning-phase round trip.
    double worst = 0.0;
    for (int l = 1; l <= 3; ++l) {
      for (int i = 1; i < (full ? 400 : 50); ++i) {
        const double phi = pi * i / (full ? 400.0 : 50.0);
        worst = std::max(worst,
                         std::abs(phase_from_detuning(detuning_for_phase(phi, l), l) - phi));
      }
    }
    report.checks.push_back({"detuning_round_trip", worst, 1e-10, true,
                             "l = 1, 2, 3 on (0, pi)"});
  }

  {  // Integrator order.
    const auto chi = random_chi(3, rng);
    const PulseSpec p = build_global_pulse(chi, HrTarget::generalized(0.6 * pi), sech);
    const double ratio = step_halving_ratio(p.hamiltonian(), 300, integrator);
    report.checks.push_back({"integrator_order_low", ratio, 12.0, false,
                             "step-halving error ratio"});
    report.checks.push_back({"integrator_order_high", ratio, 20.0, true,
                             "step-halving error ratio"});
  }

  {  // Norm drift and propagator-vs-HR equivalence.
    double drift = 0.0;
    double worst_std = 0.0;
    double worst_gen = 0.0;
    const std::vector<std::size_t> sizes =
        full ? std::vector<std::size_t>{2, 5, 15} : std::vector<std::size_t>{2, 5};
    const int trials = full ? 20 : 3;
    const double phi = phase_from_detuning(0.589, 1);
    for (std::size_t n : sizes) {
      for (int t = 0; t < trials; ++t) {
        const auto chi = random_chi(n, rng);
        const Operator u_std = propagator(
            build_global_pulse(chi, HrTarget::standard(), sech).hamiltonian(),
            integrator);
        drift = std::max(drift, unitarity_defect(u_std.matrix()));
        worst_std = std::max(worst_std,
                             frobenius_distance(with_slot0_phase_normalized(u_std),
                                                standard_hr(chi)));
        PulseSpec p = build_global_pulse(chi, HrTarget::standard(), sech);
        p.detuning = 0.589 / p.width();
        const Operator u_gen = propagator(p.hamiltonian(), integrator);
        worst_gen = std::max(worst_gen,
                             frobenius_distance(with_slot0_phase_normalized(u_gen),
                                                generalized_hr(chi, phi)));
      }
    }
    report.checks.push_back({"propagator_unitarity", drift, 1e-9, true,
                             "||U^dagger U - 1||_F per pulse"});
    report.checks.push_back({"propagator_vs_standard_hr", worst_std, 1e-5, true,
                             "resonant rms-2pi sech"});
    report.checks.push_back({"propagator_vs_generalized_hr", worst_gen, 1e-4,
                             true, "delta T = 0.589"});
  }

  if (full) {  // Fitted phase vs the sech formula on random detunings.
    std::uniform_real_distribution<double> dt(-3.0, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const double delta_t = dt(rng);
      PulseSpec p = build_global_pulse(CouplingVector::unit(2, 1),
                                       HrTarget::standard(), sech);
      p.detuning = delta_t / p.width();
      const Operator u = propagator(p.hamiltonian(), integrator);
      const double fitted = fitted_hr_phase(u, p.chi);
      worst = std::max(worst, std::abs(principal_angle(
                                  fitted - phase_from_detuning(delta_t, 1))));
    }
    report.checks.push_back({"fitted_phase", worst, 1e-3, true,
                             "20 random delta T in [-3, 3]"});
  }
  return report;
}

}  // namespace ionsearch::app
