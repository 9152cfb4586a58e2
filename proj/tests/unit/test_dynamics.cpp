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

#include "ionsearch/app/validate.hpp"
#include "ionsearch/dynamics.hpp"
#include "ionsearch/pulses.hpp"
#include "test_util.hpp"

#include <numbers>
#include <random>
#include <vector>

using namespace ionsearch;
constexpr double pi = std::numbers::pi;

namespace {

HamiltonianSpec sech_spec(const CouplingVector& chi, double area, double delta_t = 0.0) {
  const auto p = build_area_pulse(chi, area, PulseShape::sech(1.0));
  auto h = p.hamiltonian();
  h.detuning = delta_t;
  return h;
}

}  // namespace

TEST(Hamiltonian, ArrowStructureAtPeak) {
  ComplexVector g(2);
  g << 2.0, Complex(0.0, 2.0);
  const HamiltonianSpec spec{g, PulseShape::sech(1.0), 0.5, 0.0};
  const ComplexMatrix h = hamiltonian_matrix(spec, 0.0);
  EXPECT_EQ(h(0, 0), Complex(0.5));
  EXPECT_NEAR(std::abs(h(1, 0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(2, 0) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(0, 2) - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_EQ(h(1, 2), Complex(0.0));
  EXPECT_EQ(h(1, 1), Complex(0.0));
}

TEST(Hamiltonian, HermitianEverywhere) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  for (int k = 0; k < 40; ++k) {
    const auto chi = testutil::random_chi(4, rng);
    const auto spec = sech_spec(chi, 2.0 * pi, 0.7);
    const ComplexMatrix h = hamiltonian_matrix(spec, t(rng));
    EXPECT_LT((h - h.adjoint()).norm(), 1e-15);
  }
}

TEST(Evolve, ZeroCouplingIsIdentityOnManifold) {
  const HamiltonianSpec spec{ComplexVector::Zero(3), PulseShape::sech(1.0), 0.0, 0.0};
  const auto s = uniform_register(3);
  EXPECT_NEAR(fidelity(evolve(s, spec), s), 1.0, 1e-14);
  EXPECT_LT(frobenius_distance(propagator(spec), Operator::identity(4)), 1e-14);
}

TEST(Evolve, TwoPiFlipsAncillaSign) {
  const auto spec = sech_spec(CouplingVector::uniform(3), 2.0 * pi);
  const auto out = evolve(RegisterState::ancilla(3), spec);
  EXPECT_NEAR(out.amplitude(0).real(), -1.0, 1e-7);
}

TEST(Evolve, PiPulseCreatesBrightState) {
  for (std::size_t n : {2u, 4u, 15u}) {
    const auto p = build_area_pulse(CouplingVector::uniform(n), pi, PulseShape::sech(1.0));
    const auto out = evolve(RegisterState::ancilla(n), p.hamiltonian());
    const auto rot = oracle::resonant_rotation(rms_area(p));
    EXPECT_NEAR(std::abs(out.amplitude(0) - rot.ancilla), 0.0, 1e-9);
    for (std::size_t k = 1; k <= n; ++k) {
      const oracle::cplx expect = rot.bright / std::sqrt(static_cast<double>(n));
      EXPECT_NEAR(std::abs(out.amplitude(k) - expect), 0.0, 1e-9) << "N=" << n;
    }
  }
}

TEST(Evolve, RejectsDimensionMismatch) {
  const auto spec = sech_spec(CouplingVector::uniform(3), pi);
  EXPECT_THROW(evolve(uniform_register(4), spec), DimensionError);
}

TEST(Evolve, NormDriftTriggersIntegrationError) {
  IntegratorConfig cfg;
  cfg.steps_per_pulse = 20;
  const auto spec = sech_spec(CouplingVector::uniform(4), 6.0 * pi);
  EXPECT_THROW(evolve(RegisterState::ancilla(4), spec, cfg), IntegrationError);
}

TEST(Propagator, NormPreservedPerPulse) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto chi = testutil::random_chi(2 + k, rng);
    const auto u = propagator(sech_spec(chi, 2.0 * pi, 0.589));
    EXPECT_LT(unitarity_defect(u.matrix()), 1e-10);
  }
}

TEST(Propagator, ResonantMatchesAnalyticRotation) {
  // Area law: any envelope, resonant, equals the two-state rotation.
  std::mt19937_64 rng(6);
  const std::vector<PulseShape> shapes{PulseShape::sech(1.0), PulseShape::gaussian(1.0)};
  for (const auto& shape : shapes) {
    for (double area : {0.5 * pi, pi, 2.0 * pi, 3.3}) {
      const auto chi = testutil::random_chi(4, rng);
      const auto p = build_area_pulse(chi, area, shape);
      // The area actually delivered inside the truncated window.
      EXPECT_LT(frobenius_distance(propagator(p.hamiltonian()),
                                   resonant_propagator(chi, rms_area(p))),
                1e-9)
          << to_string(shape.kind()) << " A=" << area;
    }
  }
}

TEST(Propagator, StandardHrAtTwoPi) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {2u, 5u, 15u}) {
    const auto chi = testutil::random_chi(n, rng);
    const auto u = propagator(sech_spec(chi, 2.0 * pi));
    EXPECT_LT(frobenius_distance(with_slot0_phase_normalized(u), standard_hr(chi)), 1e-5);
  }
}

TEST(Propagator, GeneralizedHrWhenDetuned) {
  std::mt19937_64 rng(9);
  for (double dt : {-1.5, 0.2, 0.589, 2.0}) {
    const auto chi = testutil::random_chi(5, rng);
    const auto u = propagator(sech_spec(chi, 2.0 * pi, dt));
    const double phi = phase_from_detuning(dt, 1);
    EXPECT_LT(frobenius_distance(with_slot0_phase_normalized(u), generalized_hr(chi, phi)),
              1e-4)
        << "delta T = " << dt;
    EXPECT_NEAR(principal_angle(fitted_hr_phase(u, chi) - phi), 0.0, 1e-4);
  }
}

TEST(Propagator, ScheduleEqualsProductOfSingles) {
  const auto chi = CouplingVector::uniform(3);
  auto a = sech_spec(chi, 2.0 * pi, 0.3);
  auto b = sech_spec(CouplingVector::unit(3, 2), 2.0 * pi);
  b.center = 30.0;
  const std::vector<HamiltonianSpec> both{a, b};
  const auto joint = schedule_propagator(both);
  b.center = 0.0;
  const auto prod = compose({propagator(b), propagator(a)});
  // Free evolution between pulses only phases slot 0.
  EXPECT_LT((joint.manifold_block() - prod.manifold_block()).norm(), 1e-8);
}

TEST(Integrator, FourthOrderConvergence) {
  const auto spec = sech_spec(CouplingVector::uniform(3), 2.0 * pi, 0.589);
  const double ratio = app::step_halving_ratio(spec, 300);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Integrator, RejectsBadConfig) {
  IntegratorConfig cfg;
  cfg.steps_per_pulse = 0;
  EXPECT_THROW(cfg.validate(), InvalidParameterError);
  cfg = {};
  cfg.window = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidParameterError);
}

TEST(Rk4, ExponentialDecay) {
  double y = 1.0;
  const double h = 0.01;
  for (int i = 0; i < 100; ++i) {
    rk4_step(y, i * h, h, [](double, double v) { return -v; });
  }
  EXPECT_NEAR(y, std::exp(-1.0), 1e-10);
}
