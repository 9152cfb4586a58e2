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

// Robustness of the search against an inhomogeneous global beam.

#pragma once

#include "ionsearch/beam.hpp"
#include "ionsearch/grover.hpp"
#include "ionsearch/householder.hpp"
#include "ionsearch/model.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ionsearch {

/// Runs fn(i) for i in [0, count) on `jobs` threads. Results are addressed by
/// index, so completion order never matters. The first exception (by index)
/// is rethrown after all workers finish.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SweepConfig {
  std::size_t n_ions = 20;
  std::vector<std::size_t> marked{1, 5, 10};
  std::vector<double> epsilons;
  int steps = 3;
  Mode mode = Mode::physical;
  InitCalibration calibration = InitCalibration::calibrated;
  BeamScaling scaling = BeamScaling::field;
  ReflectionVector reflection = ReflectionVector::adapted;
  PulseDefaults pulse;
  IntegratorConfig integrator;
  unsigned jobs = 1;

  SearchConfig cell(double epsilon, std::size_t m) const {
    SearchConfig c;
    c.n_ions = n_ions;
    c.marked = m;
    c.mode = mode;
    c.variant = Variant::probabilistic;
    c.iterations = steps;
    c.pulse = pulse;
    c.integrator = integrator;
    c.imperfections.beam = {epsilon, scaling};
    c.imperfections.calibration = calibration;
    c.imperfections.reflection = reflection;
    c.trajectory_stride = std::max(1, integrator.steps_per_pulse);
    return c;
  }
};

struct SweepRow {
  double epsilon;
  std::size_t ion;
  double infidelity;
};

/// Evenly spaced grid lo, lo + step, ..., hi (hi included when it lands on
/// the grid within 1e-9 of a step).
inline std::vector<double> epsilon_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw InvalidParameterError("bad epsilon grid");
  }
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

/// 1 - p_marked after `steps` iterations for every (epsilon, ion) cell.
/// Rows are ordered epsilon-major, ions in the given order.
inline std::vector<SweepRow> infidelity_sweep(const SweepConfig& sweep) {
  if (sweep.steps < 1) throw InvalidParameterError("steps must be >= 1");
  if (sweep.marked.empty() || sweep.epsilons.empty()) {
    throw InvalidParameterError("empty sweep grid");
  }
  const std::size_t n_ion = sweep.marked.size();
  std::vector<SweepRow> rows(sweep.epsilons.size() * n_ion);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].epsilon = sweep.epsilons[i / n_ion];
    rows[i].ion = sweep.marked[i % n_ion];
    sweep.cell(rows[i].epsilon, rows[i].ion).validate();
  }
  parallel_for(rows.size(), sweep.jobs, [&](std::size_t i) {
    const SearchResult r = run_search(sweep.cell(rows[i].epsilon, rows[i].ion));
    rows[i].infidelity = 1.0 - r.success_probability;
  });
  return rows;
}

struct StepMaximum {
  double probability = 0.0;
  int step = 0;
};

/// Best marked probability over iterations 1..max_steps of the ideal
/// iteration M(chi) M(e_m) applied to `reg`.
inline StepMaximum max_step_probability(const RegisterState& reg,
                                        const CouplingVector& chi,
                                        std::size_t m, int max_steps) {
  if (chi.size() != reg.n_ions()) {
    throw DimensionError("reflection vector and register differ in N");
  }
  const Operator step =
      compose({standard_hr(chi), standard_hr(CouplingVector::unit(reg.n_ions(), m))});
  StepMaximum best;
  RegisterState s = reg;
  for (int k = 1; k <= max_steps; ++k) {
    s = apply(step, s);
    const double p = marked_probability(s, m);
    if (p > best.probability) best = {p, k};
  }
  return best;
}

/// Register produced by the (calibrated) beam-profiled init pulse, exactly.
inline PerturbedRegister profiled_register(std::size_t n_ions,
                                           const BeamProfile& beam) {
  const RealVector f = beam_factors(n_ions, beam);
  return {RegisterState::from_manifold(
      CouplingVector::normalized(f.cast<Complex>()).components())};
}

}  // namespace ionsearch
