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

// Householder reflections embedded in the (N+1)-dimensional register space.
//
//   standard:     M(chi)      = 1 - 2 |chi><chi|
//   generalized:  M(chi; phi) = 1 + (e^{i phi} - 1) |chi><chi|
//
// Both act on the ion manifold only; slot 0 is left untouched.

#pragma once

#include "ionsearch/model.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace ionsearch {

/// Default tolerance on ||U^dagger U - 1||_F accepted by Operator.
inline constexpr double kUnitarityTolerance = 1e-9;

inline double unitarity_defect(const ComplexMatrix& m) {
  const auto n = m.rows();
  return (m.adjoint() * m - ComplexMatrix::Identity(n, n)).norm();
}

/// Dense unitary acting on RegisterState.
class Operator {
 public:
  explicit Operator(ComplexMatrix matrix,
                    double tolerance = kUnitarityTolerance)
      : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
      throw DimensionError("Operator must be square with dimension >= 2");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= tolerance)) {
      throw NormalizationError("Operator is not unitary: defect " +
                               detail::sci(defect));
    }
  }

  static Operator identity(std::size_t dimension) {
    const auto d = static_cast<Eigen::Index>(dimension);
    return Operator(ComplexMatrix::Identity(d, d));
  }

  std::size_t dimension() const {
    return static_cast<std::size_t>(matrix_.rows());
  }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row),
                   static_cast<Eigen::Index>(col));
  }
  /// The N x N ion-manifold block.
  ComplexMatrix manifold_block() const {
    const auto n = matrix_.rows() - 1;
    return matrix_.bottomRightCorner(n, n);
  }

 private:
  ComplexMatrix matrix_;
};

namespace detail {

inline Operator manifold_reflection(const CouplingVector& chi, Complex factor) {
  const auto n = static_cast<Eigen::Index>(chi.size());
  const ComplexVector& c = chi.components();
  ComplexMatrix m = ComplexMatrix::Identity(n + 1, n + 1);
  m.bottomRightCorner(n, n) += factor * (c * c.adjoint());
  return Operator(std::move(m));
}

}  // namespace detail

inline Operator standard_hr(const CouplingVector& chi) {
  return detail::manifold_reflection(chi, Complex(-2.0, 0.0));
}

inline Operator generalized_hr(const CouplingVector& chi, double phi) {
  return detail::manifold_reflection(chi, std::polar(1.0, phi) - 1.0);
}

inline RegisterState apply(const Operator& op, const RegisterState& s) {
  if (op.dimension() != s.dimension()) {
    throw DimensionError("apply: operator dimension " +
                         std::to_string(op.dimension()) + " vs state " +
                         std::to_string(s.dimension()));
  }
  return RegisterState(op.matrix() * s.amplitudes());
}

/// Product ops[0] * ops[1] * ... (the last entry acts first). An empty list
/// yields the identity of `empty_dimension`.
inline Operator compose(std::span<const Operator> ops,
                        std::size_t empty_dimension = 0) {
  if (ops.empty()) {
    if (empty_dimension < 2) {
      throw DimensionError("compose: empty list needs an explicit dimension");
    }
    return Operator::identity(empty_dimension);
  }
  ComplexMatrix product = ops.front().matrix();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].dimension() != ops.front().dimension()) {
      throw DimensionError("compose: mixed dimensions");
    }
    product = product * ops[i].matrix();
  }
  return Operator(std::move(product));
}

inline Operator compose(std::initializer_list<Operator> ops) {
  return compose(std::span<const Operator>(ops.begin(), ops.size()));
}

inline Operator power(const Operator& op, unsigned k) {
  ComplexMatrix result = ComplexMatrix::Identity(
      static_cast<Eigen::Index>(op.dimension()),
      static_cast<Eigen::Index>(op.dimension()));
  for (unsigned i = 0; i < k; ++i) result = op.matrix() * result;
  return Operator(std::move(result));
}

inline double frobenius_distance(const Operator& a, const Operator& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError("frobenius_distance: mixed dimensions");
  }
  return (a.matrix() - b.matrix()).norm();
}

/// Rephases row 0 so that element (0,0) is real and nonnegative.
///
/// A complete pulse returns slot 0 to itself with a window-dependent phase
/// (detuned pulses accumulate e^{-i delta t} there), while the manifold block
/// is the reflection. Only that slot-0 phase is removed; the manifold block
/// is unchanged.
inline Operator with_slot0_phase_normalized(const Operator& op) {
  ComplexMatrix m = op.matrix();
  const Complex u00 = m(0, 0);
  if (std::abs(u00) > 0.0) {
    m.row(0) *= std::conj(u00) / std::abs(u00);
  }
  return Operator(std::move(m));
}

}  // namespace ionsearch
