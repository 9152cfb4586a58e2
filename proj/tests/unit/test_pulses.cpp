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

#include <gtest/gtest.h>

#include "ionsearch/pulses.hpp"
#include "test_util.hpp"

#include <numbers>
#include <random>

using namespace ionsearch;
constexpr double pi = std::numbers::pi;

TEST(PulseShape, SechIntegral) {
  const auto s = PulseShape::sech(2.0);
  EXPECT_NEAR(s.total_integral(), 2.0 * pi, 1e-14);
  EXPECT_NEAR(s(0.0), 1.0, 1e-15);
  // 2T atan(sinh(w/T)) over [-w, w], w = 30.
  EXPECT_NEAR(s.integral(30.0), 4.0 * std::atan(std::sinh(15.0)), 1e-14);
}

TEST(PulseShape, GaussianIntegral) {
  const auto g = PulseShape::gaussian(1.0);
  EXPECT_NEAR(g.total_integral(), std::sqrt(pi), 1e-14);
  EXPECT_NEAR(g.integral(1.0), std::sqrt(pi) * std::erf(1.0), 1e-14);
}

TEST(PulseShape, TabulatedTrapezoid) {
  const auto t = PulseShape::tabulated(1.0, {-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  EXPECT_NEAR(t(0.5), 0.5, 1e-15);
  EXPECT_EQ(t(2.0), 0.0);
  EXPECT_NEAR(t.total_integral(), 1.0, 1e-15);
}

TEST(RmsArea, SechTwoPi) {
  const auto p = build_global_pulse(CouplingVector::uniform(4), HrTarget::standard(),
                                    PulseShape::sech(1.0));
  EXPECT_NEAR(p.rms_coupling, 2.0, 1e-14);
  EXPECT_NEAR(rms_area(p, 15.0), 2.0 * pi, 1e-5);
  EXPECT_NEAR(p.rms_coupling * p.shape.total_integral(), 2.0 * pi, 1e-14);
}

TEST(RmsArea, ScalesWithWidth) {
  const auto p = build_area_pulse(CouplingVector::uniform(2), pi, PulseShape::sech(3.0));
  EXPECT_NEAR(p.rms_coupling, 1.0 / 3.0, 1e-14);
}

TEST(PhaseCalculus, Examples) {
  EXPECT_NEAR(phase_from_detuning(0.0, 1), pi, 1e-15);
  EXPECT_NEAR(phase_from_detuning(1.0, 1), pi / 2.0, 1e-15);
  EXPECT_NEAR(phase_from_detuning(0.589, 1) / pi, 0.66113, 1e-5);
  EXPECT_NEAR(detuning_for_phase(pi / 2.0, 1), 1.0, 1e-14);
  EXPECT_EQ(detuning_for_phase(pi, 1), 0.0);
  EXPECT_THROW(detuning_for_phase(0.0, 1), NoSolutionError);
  EXPECT_THROW(phase_from_detuning(0.3, 0), InvalidParameterError);
}

TEST(PhaseCalculus, RoundTrip) {
  for (int l = 1; l <= 3; ++l) {
    for (int i = 1; i < 200; ++i) {
      const double phi = pi * i / 200.0;
      EXPECT_NEAR(phase_from_detuning(detuning_for_phase(phi, l), l), phi, 1e-10)
          << "l=" << l << " phi=" << phi;
    }
  }
}

TEST(PhaseCalculus, ResonantHigherAreasAreStandard) {
  // delta = 0 gives phase pi for every l.
  for (int l = 1; l <= 4; ++l) {
    EXPECT_NEAR(std::abs(phase_from_detuning(0.0, l)), pi * (l % 2), 1e-12);
  }
}

TEST(PhaseCalculus, FittedPhaseFromSimulation) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int t = 0; t < 5; ++t) {
    const double dt = dist(rng);
    PulseSpec p = build_global_pulse(CouplingVector::unit(2, 1), HrTarget::standard(),
                                     PulseShape::sech(1.0));
    p.detuning = dt;
    const double fitted = fitted_hr_phase(propagator(p.hamiltonian()), p.chi);
    EXPECT_NEAR(principal_angle(fitted - phase_from_detuning(dt, 1)), 0.0, 1e-3);
  }
}

TEST(AreaRule, FourPiIsNotAReflection) {
  std::mt19937_64 rng(22);
  const auto chi = testutil::random_chi(5, rng);
  const auto p = build_area_pulse(chi, 4.0 * pi, PulseShape::sech(1.0));
  const auto u = with_slot0_phase_normalized(propagator(p.hamiltonian()));
  EXPECT_GT(frobenius_distance(u, standard_hr(chi)), 0.5);
}

TEST(AreaRule, SixPiIsAReflection) {
  std::mt19937_64 rng(23);
  const auto chi = testutil::random_chi(4, rng);
  const auto p = build_area_pulse(chi, 6.0 * pi, PulseShape::sech(1.0));
  IntegratorConfig cfg;
  cfg.steps_per_pulse = 12000;
  const auto u = with_slot0_phase_normalized(propagator(p.hamiltonian(), cfg));
  EXPECT_LT(frobenius_distance(u, standard_hr(chi)), 1e-5);
}

TEST(Pulses, LocalPulseTargetsOneIon) {
  const auto p = build_local_pulse(3, 5, HrTarget::standard(), PulseShape::sech(1.0));
  const auto u = with_slot0_phase_normalized(propagator(p.hamiltonian()));
  EXPECT_LT(frobenius_distance(u, standard_hr(CouplingVector::unit(5, 3))), 1e-5);
  EXPECT_THROW(build_local_pulse(6, 5, HrTarget::standard(), PulseShape::sech(1.0)),
               IndexError);
}

TEST(Pulses, GaussianCalibrationRealizesPhase) {
  const double phi = 0.6 * pi;
  const auto shape = PulseShape::gaussian(1.0);
  const auto cal = calibrate_generalized(shape, phi);
  EXPECT_LT(cal.residual_transfer, 1e-4);
  const auto chi = CouplingVector::uniform(3);
  const auto p = build_global_pulse(chi, HrTarget::generalized(phi), shape);
  const auto u = with_slot0_phase_normalized(propagator(p.hamiltonian()));
  EXPECT_LT(frobenius_distance(u, generalized_hr(chi, phi)), 1e-3);
}

TEST(Pulses, SechCalibrationIsClosedForm) {
  const auto cal = calibrate_generalized(PulseShape::sech(1.0), 0.5 * pi);
  EXPECT_NEAR(cal.area, 2.0 * pi, 1e-15);
  EXPECT_NEAR(cal.delta_t, 1.0, 1e-14);
}
