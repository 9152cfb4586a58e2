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

#pragma once

#include "ionsearch/model.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace ionsearch {

enum class ShapeKind { sech, gaussian, tabulated };

inline std::string_view to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::sech: return "sech";
    case ShapeKind::gaussian: return "gaussian";
    case ShapeKind::tabulated: return "tabulated";
  }
  return "?";
}

/// Dimensionless pulse envelope f(t), centred at t = 0.
///
///   sech:      f(t) = sech(t / T)
///   gaussian:  f(t) = exp(-(t / T)^2)
///   tabulated: piecewise-linear through samples (times in units of T),
///              zero outside the sampled range
class PulseShape {
 public:
  static PulseShape sech(double width) {
    return PulseShape(ShapeKind::sech, width, {}, {});
  }
  static PulseShape gaussian(double width) {
    return PulseShape(ShapeKind::gaussian, width, {}, {});
  }
  /// `times` strictly increasing, in units of `width`; `values` >= 0.
  static PulseShape tabulated(double width, std::vector<double> times,
                              std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size()) {
      throw InvalidParameterError("tabulated shape needs >= 2 matching samples");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (!(times[i] > times[i - 1])) {
        throw InvalidParameterError("tabulated times must increase strictly");
      }
    }
    for (double v : values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidParameterError("tabulated values must be finite and >= 0");
      }
    }
    return PulseShape(ShapeKind::tabulated, width, std::move(times),
                      std::move(values));
  }

  ShapeKind kind() const { return kind_; }
  double width() const { return width_; }

  double operator()(double t) const {
    const double x = t / width_;
    switch (kind_) {
      case ShapeKind::sech:
        return 1.0 / std::cosh(x);
      case ShapeKind::gaussian:
        return std::exp(-x * x);
      case ShapeKind::tabulated: {
        if (x < times_.front() || x > times_.back()) return 0.0;
        if (x == times_.back()) return values_.back();
        const auto it = std::upper_bound(times_.begin(), times_.end(), x);
        const auto i = static_cast<std::size_t>(it - times_.begin());
        const double w = (x - times_[i - 1]) / (times_[i] - times_[i - 1]);
        return values_[i - 1] + w * (values_[i] - values_[i - 1]);
      }
    }
    return 0.0;
  }

  /// Integral of f over [-half_window, +half_window] (same time units as T).
  double integral(double half_window) const {
    const double a = half_window / width_;
    switch (kind_) {
      case ShapeKind::sech:
        // Gudermannian: int_0^a sech = 2 atan(tanh(a/2)).
        return 4.0 * width_ * std::atan(std::tanh(0.5 * a));
      case ShapeKind::gaussian:
        return std::sqrt(std::numbers::pi) * width_ * boost::math::erf(a);
      case ShapeKind::tabulated: {
        double sum = 0.0;
        for (std::size_t i = 1; i < times_.size(); ++i) {
          const double lo = std::max(times_[i - 1], -a);
          const double hi = std::min(times_[i], a);
          if (hi <= lo) continue;
          const auto f = [&](double x) { return (*this)(x * width_); };
          sum += 0.5 * (f(lo) + f(hi)) * (hi - lo);
        }
        return sum * width_;
      }
    }
    return 0.0;
  }

  /// Integral over the whole real line.
  double total_integral() const {
    switch (kind_) {
      case ShapeKind::sech: return std::numbers::pi * width_;
      case ShapeKind::gaussian: return std::sqrt(std::numbers::pi) * width_;
      case ShapeKind::tabulated:
        return integral(width_ * std::max(std::abs(times_.front()),
                                          std::abs(times_.back())));
    }
    return 0.0;
  }

  const std::vector<double>& sample_times() const { return times_; }
  const std::vector<double>& sample_values() const { return values_; }

 private:
  PulseShape(ShapeKind kind, double width, std::vector<double> times,
             std::vector<double> values)
      : kind_(kind), width_(width), times_(std::move(times)),
        values_(std::move(values)) {
    if (!(width_ > 0.0) || !std::isfinite(width_)) {
      throw InvalidParameterError("pulse width must be positive");
    }
  }

  ShapeKind kind_;
  double width_;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace ionsearch
