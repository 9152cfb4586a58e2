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

// Schrodinger integration of the N-pod Hamiltonian (hbar = 1, rad/s):
//
//   H(t) = 1/2 sum_n g_n f(t) |psi_n><psi_0| + h.c. + delta |psi_0><psi_0|
//
// g_n stands for eta_n Omega_n e^{-i phi_n} / sqrt(N) of the laser-ion
// coupling. Column 0 carries g_n so that the bright state reached from
// |psi_0> is chi = g / |g| itself. The detuning enters slot 0 with its full
// value delta: with that choice a sech pulse of rms area 2 pi and
// delta T = 0.589 gives the HR phase 0.661 pi, and delta = 0 gives pi.
//
// The integrator is classical fixed-step RK4. The state (or a block of
// states for propagators) is advanced with an O(N) arrow-shaped product,
// never by forming H densely.

#pragma once

#include "ionsearch/householder.hpp"
#include "ionsearch/model.hpp"
#include "ionsearch/pulse_shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ionsearch {

class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// One pulse of the reduced Hamiltonian.
struct HamiltonianSpec {
  ComplexVector couplings;  ///< g_n, rad/s
  PulseShape envelope = PulseShape::sech(1.0);
  double detuning = 0.0;  ///< delta, rad/s
  double center = 0.0;    ///< time of the envelope peak

  std::size_t n_ions() const {
    return static_cast<std::size_t>(couplings.size());
  }
  double width() const { return envelope.width(); }
};

struct IntegratorConfig {
  int steps_per_pulse = 4000;
  double window = 15.0;  ///< half-width of the integration window, units of T
  double norm_tolerance = 1e-9;
  /// Largest |delta| h per step; strongly detuned pulses get extra steps.
  double max_phase_step = 0.005;
  /// Scale of delta on slot 0. 1 is the calibrated convention; other values
  /// exist only to demonstrate that the calibration matters.
  double detuning_factor = 1.0;

  void validate() const {
    if (steps_per_pulse < 1) {
      throw InvalidParameterError("steps_per_pulse must be >= 1");
    }
    if (!(window > 0.0)) throw InvalidParameterError("window must be > 0");
    if (!(norm_tolerance > 0.0)) {
      throw InvalidParameterError("norm_tolerance must be > 0");
    }
    if (!(max_phase_step > 0.0)) {
      throw InvalidParameterError("max_phase_step must be > 0");
    }
  }
};

inline ComplexMatrix hamiltonian_matrix(const HamiltonianSpec& spec, double t,
                                        double detuning_factor = 1.0) {
  const auto n = static_cast<Eigen::Index>(spec.n_ions());
  ComplexMatrix h = ComplexMatrix::Zero(n + 1, n + 1);
  const double f = spec.envelope(t - spec.center);
  const ComplexVector column = 0.5 * f * spec.couplings;
  h.block(1, 0, n, 1) = column;
  h.block(0, 1, 1, n) = column.adjoint();
  h(0, 0) = detuning_factor * spec.detuning;
  return h;
}

/// Classical fourth-order Runge-Kutta step for y' = rhs(t, y).
template <class State, class Rhs>
void rk4_step(State& y, double t, double h, Rhs&& rhs) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = rhs(t + h, State(y + h * k3));
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

// H at one instant, stored as its arrow: column 0 below the diagonal plus
// the slot-0 diagonal entry.
struct ArrowHamiltonian {
  ComplexVector column;
  double h00 = 0.0;

  // -i H Y for a state vector or a block of column states.
  template <class Block>
  Block times_minus_i(const Block& y) const {
    const auto n = column.size();
    Block out(y.rows(), y.cols());
    const Complex mi(0.0, -1.0);
    out.row(0) = mi * (h00 * y.row(0) + column.adjoint() * y.bottomRows(n));
    out.bottomRows(n) = mi * (column * y.row(0));
    return out;
  }
};

struct ActivePulses {
  std::span<const HamiltonianSpec> pulses;
  std::vector<std::size_t> active;
  double detuning_factor;

  ArrowHamiltonian at(double t) const {
    ArrowHamiltonian h;
    h.column = ComplexVector::Zero(pulses.front().couplings.size());
    for (std::size_t i : active) {
      const auto& p = pulses[i];
      h.column += (0.5 * p.envelope(t - p.center)) * p.couplings;
      h.h00 += detuning_factor * p.detuning;
    }
    return h;
  }
};

struct Segment {
  double begin;
  double end;
  std::vector<std::size_t> active;
  int steps;
};

inline std::vector<Segment> plan_segments(std::span<const HamiltonianSpec> pulses,
                                          const IntegratorConfig& cfg) {
  std::vector<double> cuts;
  for (const auto& p : pulses) {
    cuts.push_back(p.center - cfg.window * p.width());
    cuts.push_back(p.center + cfg.window * p.width());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segments;
  for (std::size_t c = 1; c < cuts.size(); ++c) {
    Segment seg{cuts[c - 1], cuts[c], {}, 0};
    double steps = 0.0;
    double detuning = 0.0;
    for (std::size_t i = 0; i < pulses.size(); ++i) {
      const double lo = pulses[i].center - cfg.window * pulses[i].width();
      const double hi = pulses[i].center + cfg.window * pulses[i].width();
      if (lo <= seg.begin && hi >= seg.end) {
        seg.active.push_back(i);
        const double share = (seg.end - seg.begin) / (hi - lo);
        steps = std::max(steps, cfg.steps_per_pulse * share);
        detuning += pulses[i].detuning;
      }
    }
    steps = std::max(steps, std::abs(cfg.detuning_factor * detuning) *
                                (seg.end - seg.begin) / cfg.max_phase_step);
    seg.steps = seg.active.empty()
                    ? 0
                    : std::max(1, static_cast<int>(std::ceil(steps - 1e-9)));
    segments.push_back(std::move(seg));
  }
  return segments;
}

inline void check_dimensions(std::span<const HamiltonianSpec> pulses,
                             std::size_t n_ions) {
  if (pulses.empty()) throw InvalidParameterError("empty pulse schedule");
  for (const auto& p : pulses) {
    if (p.n_ions() != n_ions) {
      throw DimensionError("pulse couples " + std::to_string(p.n_ions()) +
                           " ions, state has " + std::to_string(n_ions));
    }
  }
}

template <class Block>
double worst_norm_drift(const Block& y) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    worst = std::max(worst, std::abs(y.col(c).norm() - 1.0));
  }
  return worst;
}

// Advances each column of `y` across the schedule. `observe` (optional) sees
// (t, y) every `stride` steps and at every segment boundary.
template <class Block>
void integrate_schedule(
    Block& y, std::span<const HamiltonianSpec> pulses,
    const IntegratorConfig& cfg,
    const std::function<void(double, const Block&)>& observe = {},
    int stride = 0) {
  cfg.validate();
  const auto segments = plan_segments(pulses, cfg);
  if (observe && !segments.empty()) observe(segments.front().begin, y);
  for (const auto& seg : segments) {
    if (seg.steps > 0) {
      const ActivePulses field{pulses, seg.active, cfg.detuning_factor};
      const auto rhs = [&](double t, const Block& v) {
        return field.at(t).times_minus_i(v);
      };
      const double h = (seg.end - seg.begin) / seg.steps;
      for (int k = 0; k < seg.steps; ++k) {
        const double t = seg.begin + k * h;
        rk4_step(y, t, h, rhs);
        if (observe && stride > 0 && (k + 1) % stride == 0 &&
            k + 1 != seg.steps) {
          observe(t + h, y);
        }
      }
      const double drift = worst_norm_drift(y);
      if (!(drift <= cfg.norm_tolerance)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "norm drift %.3e exceeds tolerance %.3e",
                      drift, cfg.norm_tolerance);
        throw IntegrationError(msg);
      }
    }
    if (observe) observe(seg.end, y);
  }
}

}  // namespace detail

using TrajectoryObserver = std::function<void(double, const ComplexVector&)>;

/// Evolves `s` through every pulse of the schedule. Pulses are normally
/// disjoint; overlapping windows are integrated with the summed Hamiltonian.
inline RegisterState evolve_schedule(const RegisterState& s,
                                     std::span<const HamiltonianSpec> pulses,
                                     const IntegratorConfig& cfg,
                                     const TrajectoryObserver& observe = {},
                                     int stride = 0) {
  detail::check_dimensions(pulses, s.n_ions());
  ComplexVector y = s.amplitudes();
  detail::integrate_schedule<ComplexVector>(y, pulses, cfg, observe, stride);
  // Drift is bounded by cfg.norm_tolerance at this point.
  return RegisterState(y / y.norm());
}

/// Evolves `s` across the full window of one pulse.
inline RegisterState evolve(const RegisterState& s, const HamiltonianSpec& spec,
                            const IntegratorConfig& cfg = {}) {
  return evolve_schedule(s, std::span<const HamiltonianSpec>(&spec, 1), cfg);
}

/// Propagator of a schedule; column k is the evolved basis state k.
inline Operator schedule_propagator(std::span<const HamiltonianSpec> pulses,
                                    const IntegratorConfig& cfg = {}) {
  detail::check_dimensions(pulses, pulses.front().n_ions());
  const auto d = static_cast<Eigen::Index>(pulses.front().n_ions()) + 1;
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  detail::integrate_schedule<ComplexMatrix>(u, pulses, cfg);
  // Columns already passed the drift check; allow the matching defect.
  const double tol = std::max(kUnitarityTolerance,
                              4.0 * static_cast<double>(d) * cfg.norm_tolerance);
  return Operator(std::move(u), tol);
}

inline Operator propagator(const HamiltonianSpec& spec,
                           const IntegratorConfig& cfg = {}) {
  return schedule_propagator(std::span<const HamiltonianSpec>(&spec, 1), cfg);
}

/// Exact propagator of a resonant pulse with rms area `area` and direction
/// chi, for any envelope. With delta = 0 the Hamiltonian at different times
/// commutes, so U = exp(-i (A/2) (|chi><psi_0| + h.c.)): a rotation in
/// span{|psi_0>, |chi>} and the identity on states orthogonal to chi.
inline Operator resonant_propagator(const CouplingVector& chi, double area) {
  const auto n = static_cast<Eigen::Index>(chi.size());
  ComplexVector bright = ComplexVector::Zero(n + 1);
  bright.tail(n) = chi.components();
  ComplexVector anc = ComplexVector::Zero(n + 1);
  anc(0) = 1.0;
  const double c = std::cos(0.5 * area);
  const double s = std::sin(0.5 * area);
  ComplexMatrix u = ComplexMatrix::Identity(n + 1, n + 1);
  u += (c - 1.0) * (anc * anc.adjoint() + bright * bright.adjoint());
  u += Complex(0.0, -s) * (bright * anc.adjoint() + anc * bright.adjoint());
  return Operator(std::move(u));
}

/// Phase of <chi|U|chi> over the manifold; the HR phase phi when U is a
/// generalized reflection about chi.
inline double fitted_hr_phase(const Operator& u, const CouplingVector& chi) {
  const ComplexVector& c = chi.components();
  return std::arg(c.dot(u.manifold_block() * c));
}

}  // namespace ionsearch
