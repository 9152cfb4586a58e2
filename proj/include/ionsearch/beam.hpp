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

// Inhomogeneous laser profiles across the ion chain and the reflection
// vectors adapted to the register they produce.

#pragma once

#include "ionsearch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace ionsearch {

/// How the edge deficit epsilon maps onto the per-ion coupling.
///   field:     edge coupling factor is 1 - epsilon
///   intensity: edge intensity factor is 1 - epsilon, coupling sqrt(1 - epsilon)
enum class BeamScaling { field, intensity };

/// calibrated:   init pulse rms area forced to pi, full transfer into the
///               profile-shaped bright state
/// uncalibrated: laser power set as for a uniform beam; slot 0 keeps a residual
enum class InitCalibration { calibrated, uncalibrated };

/// Direction of the global reflection: adapted to the register (same beam as
/// the initialization, doubled amplitude) or the uniform chi_W.
enum class ReflectionVector { adapted, uniform };

/// Gaussian beam over uniformly spaced abstract positions x_n in [-1, 1]:
///   f_n = (1 - eps_eff)^{x_n^2},  x_n = (2n - N - 1)/(N - 1)
struct BeamProfile {
  double epsilon = 0.0;
  BeamScaling scaling = BeamScaling::field;
};

inline RealVector beam_factors(std::size_t n_ions, double epsilon,
                               BeamScaling scaling = BeamScaling::field) {
  if (n_ions < 2) throw InvalidSizeError("beam profile needs N >= 2");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw InvalidParameterError("epsilon must lie in [0, 1), got " +
                                std::to_string(epsilon));
  }
  const double eff = scaling == BeamScaling::field
                         ? epsilon
                         : 1.0 - std::sqrt(1.0 - epsilon);
  const double n = static_cast<double>(n_ions);
  RealVector f(static_cast<Eigen::Index>(n_ions));
  for (std::size_t i = 1; i <= n_ions; ++i) {
    const double x = (2.0 * static_cast<double>(i) - n - 1.0) / (n - 1.0);
    f(static_cast<Eigen::Index>(i - 1)) = std::pow(1.0 - eff, x * x);
  }
  return f;
}

inline RealVector beam_factors(std::size_t n_ions, const BeamProfile& p) {
  return beam_factors(n_ions, p.epsilon, p.scaling);
}

/// Everything about a run that departs from the uniform ideal.
struct ImperfectionSettings {
  BeamProfile beam;
  InitCalibration calibration = InitCalibration::calibrated;
  ReflectionVector reflection = ReflectionVector::adapted;
  /// Per-ion coupling factors used instead of the Gaussian beam (e.g. the
  /// position-dependent couplings of a higher vibrational mode).
  std::optional<std::vector<double>> factors;

  RealVector resolved_factors(std::size_t n_ions) const {
    if (!factors) return beam_factors(n_ions, beam);
    if (factors->size() != n_ions) {
      throw DimensionError("custom factors: expected " +
                           std::to_string(n_ions) + " entries, got " +
                           std::to_string(factors->size()));
    }
    RealVector f(static_cast<Eigen::Index>(n_ions));
    for (std::size_t i = 0; i < n_ions; ++i) {
      const double v = (*factors)[i];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidParameterError("custom factors must be positive");
      }
      f(static_cast<Eigen::Index>(i)) = v;
    }
    return f;
  }
};

/// Register |Psi_a> = sum a_n |psi_n> (+ slot-0 residual) left by an
/// imperfect initialization.
struct PerturbedRegister {
  RegisterState state;

  ComplexVector manifold_amplitudes() const { return state.manifold(); }
  Complex residual() const { return state.amplitude(0); }
};

/// chi proportional to the register's manifold amplitudes.
inline CouplingVector adapted_chi(const PerturbedRegister& reg) {
  return CouplingVector::normalized(reg.manifold_amplitudes());
}

/// N_a = [pi / (4 |a_m|)], at least 1.
inline int adapted_iteration_count(Complex a_m) {
  const double mag = std::abs(a_m);
  if (!(mag > 0.0)) {
    throw InvalidParameterError("marked amplitude must be nonzero");
  }
  if (mag > 1.0 + 1e-12) {
    throw InvalidParameterError("marked amplitude exceeds 1");
  }
  const int n = static_cast<int>(std::floor(std::numbers::pi / (4.0 * mag)));
  return std::max(1, n);
}

}  // namespace ionsearch
