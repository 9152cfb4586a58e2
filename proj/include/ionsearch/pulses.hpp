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

// Laser pulses that realize Householder reflections, and the detuning-phase
// calculus for sech pulses.
//
// A resonant pulse of rms area A = g * int f dt = 2(2l+1) pi (g the rms of
// the per-ion couplings) gives the standard reflection M(chi). A sech pulse
// of rms area 2 pi l with detuning delta gives M(chi; phi) with
//
//   phi = 2 sum_{j=0}^{l-1} arg(delta T + i (2j + 1))     (mod 2 pi).
//
// For other envelopes the (area, detuning) pair is found numerically.

#pragma once

#include "ionsearch/dynamics.hpp"
#include "ionsearch/householder.hpp"
#include "ionsearch/model.hpp"
#include "ionsearch/pulse_shape.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

namespace ionsearch {

class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// A single laser pulse: envelope, coupling direction, rms coupling g
/// (g_n = g * chi_n), detuning and centre time.
struct PulseSpec {
  PulseShape shape = PulseShape::sech(1.0);
  CouplingVector chi = CouplingVector::uniform(1);
  double rms_coupling = 0.0;  ///< g, rad/s
  double detuning = 0.0;      ///< delta, rad/s
  double center = 0.0;

  double width() const { return shape.width(); }

  HamiltonianSpec hamiltonian() const {
    return HamiltonianSpec{rms_coupling * chi.components(), shape, detuning,
                           center};
  }

  PulseSpec centered_at(double t) const {
    PulseSpec p = *this;
    p.center = t;
    return p;
  }
};

/// rms pulse area g * int f over the integration window (half-width in
/// units of T).
inline double rms_area(const PulseSpec& p, double window = 15.0) {
  return p.rms_coupling * p.shape.integral(window * p.width());
}

/// Reduces an angle to (-pi, pi].
inline double principal_angle(double x) {
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

namespace detail {

// The unreduced phase 2 sum_j atan2(2j+1, x): decreasing from 2 pi l at
// x -> -inf to 0 at x -> +inf.
inline double unreduced_phase(double delta_t, int l) {
  double sum = 0.0;
  for (int j = 0; j < l; ++j) sum += std::atan2(2.0 * j + 1.0, delta_t);
  return 2.0 * sum;
}

}  // namespace detail

/// HR phase of a sech pulse with rms area 2 pi l and detuning delta T.
inline double phase_from_detuning(double delta_t, int l) {
  if (l < 1) {
    throw InvalidParameterError("area index l must be >= 1, got " +
                                std::to_string(l));
  }
  return principal_angle(detail::unreduced_phase(delta_t, l));
}

/// Inverse of phase_from_detuning. Returns the detuning (in units of 1/T)
/// whose unreduced phase lies in (0, 2 pi) and equals phi mod 2 pi.
inline double detuning_for_phase(double phi, int l) {
  if (l < 1) {
    throw InvalidParameterError("area index l must be >= 1, got " +
                                std::to_string(l));
  }
  if (!std::isfinite(phi)) throw NoSolutionError("phase is not finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double target = std::fmod(phi, two_pi);
  if (target < 0.0) target += two_pi;
  if (target == 0.0 || target >= two_pi) {
    throw NoSolutionError("phase 0 (mod 2 pi) needs infinite detuning");
  }
  if (l == 1) {
    if (phi == std::numbers::pi) return 0.0;
    return 1.0 / std::tan(0.5 * target);
  }
  const auto f = [&](double x) { return detail::unreduced_phase(x, l) - target; };
  double lo = -1.0;
  double hi = 1.0;
  while (f(lo) < 0.0) lo *= 2.0;
  while (f(hi) > 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

/// Which reflection a pulse should realize. phi = pi is the standard HR.
struct HrTarget {
  double phi = std::numbers::pi;

  static HrTarget standard() { return {}; }
  static HrTarget generalized(double phi) { return {phi}; }
  bool is_standard() const { return phi == std::numbers::pi; }
};

/// (rms area, delta T) of a pulse that realizes a given HR.
struct PulseCalibration {
  double area = 2.0 * std::numbers::pi;
  double delta_t = 0.0;
  double residual_transfer = 0.0;  ///< |<chi|U|psi_0>| left by the solution
};

namespace detail {

struct ProbeResult {
  double transfer;
  double phase;
};

// Two-level probe: one ion, unit chi.
inline ProbeResult probe(const PulseShape& shape, double area, double delta_t,
                         const IntegratorConfig& cfg) {
  const double g = area / shape.total_integral();
  HamiltonianSpec spec{ComplexVector::Constant(1, Complex(g, 0.0)), shape,
                       delta_t / shape.width(), 0.0};
  const Operator u = propagator(spec, cfg);
  return {std::abs(u(1, 0)), std::arg(u(1, 1))};
}

}  // namespace detail

/// Finds (area, delta T) so that `shape` realizes M(chi; phi): zero return
/// transfer out of the manifold and HR phase phi. The sech solution
/// (area 2 pi, delta T = cot(phi/2)) seeds the search. For sech itself the
/// closed form is returned.
inline PulseCalibration calibrate_generalized(const PulseShape& shape,
                                              double phi,
                                              const IntegratorConfig& cfg = {}) {
  const double seed = detuning_for_phase(phi, 1);
  if (shape.kind() == ShapeKind::sech) {
    return {2.0 * std::numbers::pi, seed, 0.0};
  }
  using boost::math::tools::brent_find_minima;
  constexpr double pi = std::numbers::pi;

  // Inner: area near 2 pi that minimizes the return transfer.
  const auto best_area = [&](double delta_t) {
    std::uintmax_t iters = 60;
    const auto res = brent_find_minima(
        [&](double a) {
          return detail::probe(shape, a, delta_t, cfg).transfer;
        },
        1.2 * pi, 2.8 * pi, 40, iters);
    return res;
  };
  const auto phase_error = [&](double delta_t) {
    const auto [area, transfer] = best_area(delta_t);
    return principal_angle(detail::probe(shape, area, delta_t, cfg).phase - phi);
  };

  double lo = seed - 0.5;
  double hi = seed + 0.5;
  for (int i = 0; i < 20 && phase_error(lo) < 0.0; ++i) lo -= 0.5 * (i + 1);
  for (int i = 0; i < 20 && phase_error(hi) > 0.0; ++i) hi += 0.5 * (i + 1);
  if (phase_error(lo) < 0.0 || phase_error(hi) > 0.0) {
    throw NoSolutionError("could not bracket detuning for phase " +
                          std::to_string(phi));
  }
  std::uintmax_t iters = 80;
  const auto [a, b] = boost::math::tools::toms748_solve(
      phase_error, lo, hi, boost::math::tools::eps_tolerance<double>(36),
      iters);
  const double delta_t = 0.5 * (a + b);
  const auto [area, transfer] = best_area(delta_t);
  return {area, delta_t, transfer};
}

namespace detail {

inline PulseSpec reflection_pulse(const CouplingVector& chi, HrTarget target,
                                  const PulseShape& shape, double center,
                                  const IntegratorConfig& cfg) {
  PulseCalibration cal;
  if (!target.is_standard()) cal = calibrate_generalized(shape, target.phi, cfg);
  PulseSpec p{shape, chi, cal.area / shape.total_integral(),
              cal.delta_t / shape.width(), center};
  return p;
}

}  // namespace detail

/// Pulse on all ions with coupling direction chi realizing M(chi) or
/// M(chi; phi). For sech: g = 2/T, delta T from detuning_for_phase(phi, 1).
inline PulseSpec build_global_pulse(const CouplingVector& chi, HrTarget target,
                                    const PulseShape& shape,
                                    double center = 0.0,
                                    const IntegratorConfig& cfg = {}) {
  return detail::reflection_pulse(chi, target, shape, center, cfg);
}

/// Local 2 pi pulse on ion m (1-based) realizing M(e_m) or M(e_m; phi).
inline PulseSpec build_local_pulse(std::size_t m, std::size_t n_ions,
                                   HrTarget target, const PulseShape& shape,
                                   double center = 0.0,
                                   const IntegratorConfig& cfg = {}) {
  return detail::reflection_pulse(CouplingVector::unit(n_ions, m), target,
                                  shape, center, cfg);
}

/// Resonant pulse of rms area `area` along chi (pi for W-state preparation).
inline PulseSpec build_area_pulse(const CouplingVector& chi, double area,
                                  const PulseShape& shape,
                                  double center = 0.0) {
  return PulseSpec{shape, chi, area / shape.total_integral(), 0.0, center};
}

}  // namespace ionsearch
