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

// Register states over the single-excitation manifold of an N-ion chain.
//
// Slot 0 holds the ancilla |psi_0>|1> (one phonon, no ionic excitation);
// slots 1..N hold |psi_k>|0>, the k-th ion excited. The vibrational label is
// implicit in the index and never stored.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace ionsearch {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Inputs whose squared norm is within this of 1 are renormalized silently.
inline constexpr double kRenormalizeTolerance = 1e-9;

namespace detail {

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Returns v / |v|, or throws if |v|^2 is farther than kRenormalizeTolerance
// from one.
inline ComplexVector checked_normalize(const ComplexVector& v,
                                       const char* what) {
  const double norm2 = v.squaredNorm();
  if (!std::isfinite(norm2) ||
      std::abs(norm2 - 1.0) > kRenormalizeTolerance) {
    throw NormalizationError(std::string(what) +
                             ": squared norm deviates from 1 by " +
                             sci(norm2 - 1.0));
  }
  return v / std::sqrt(norm2);
}

inline double uniform_amplitude(std::size_t n) {
  return 1.0 / std::sqrt(static_cast<double>(n));
}

}  // namespace detail

/// Normalized complex amplitude vector over {|psi_0>, |psi_1>, ..., |psi_N>}.
/// Immutable after construction.
class RegisterState {
 public:
  /// Takes N+1 amplitudes (slot 0 first). Requires N >= 2.
  explicit RegisterState(ComplexVector amplitudes) {
    if (amplitudes.size() < 3) {
      throw InvalidSizeError("RegisterState needs N >= 2 ions, got " +
                             std::to_string(amplitudes.size() - 1));
    }
    amplitudes_ = detail::checked_normalize(amplitudes, "RegisterState");
  }

  static RegisterState basis(std::size_t n_ions, std::size_t slot) {
    if (slot > n_ions) {
      throw IndexError("basis slot " + std::to_string(slot) +
                       " outside 0.." + std::to_string(n_ions));
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n_ions) + 1);
    v(static_cast<Eigen::Index>(slot)) = 1.0;
    return RegisterState(std::move(v));
  }

  /// Ancilla |psi_0>, the state before initialization.
  static RegisterState ancilla(std::size_t n_ions) { return basis(n_ions, 0); }

  /// Register with slot-0 amplitude zero and the given manifold amplitudes.
  static RegisterState from_manifold(const ComplexVector& manifold) {
    ComplexVector v(manifold.size() + 1);
    v(0) = 0.0;
    v.tail(manifold.size()) = manifold;
    return RegisterState(std::move(v));
  }

  std::size_t n_ions() const {
    return static_cast<std::size_t>(amplitudes_.size() - 1);
  }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t slot) const {
    return amplitudes_(static_cast<Eigen::Index>(slot));
  }
  auto manifold() const { return amplitudes_.tail(amplitudes_.size() - 1); }

  double population(std::size_t slot) const {
    return std::norm(amplitude(slot));
  }
  RealVector populations() const { return amplitudes_.cwiseAbs2(); }

  RegisterState with_global_phase(double theta) const {
    return RegisterState(amplitudes_ * std::polar(1.0, theta));
  }

 private:
  ComplexVector amplitudes_;
};

/// Normalized complex N-vector chi; the direction of a Householder reflection.
class CouplingVector {
 public:
  explicit CouplingVector(ComplexVector components) {
    if (components.size() < 1) {
      throw InvalidSizeError("CouplingVector must be non-empty");
    }
    components_ = detail::checked_normalize(components, "CouplingVector");
  }

  /// Normalizes any nonzero vector; unlike the constructor, scale is free.
  static CouplingVector normalized(const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw InvalidParameterError("cannot normalize a zero coupling vector");
    }
    return CouplingVector(v / norm);
  }

  /// Unit vector e_k, 1-based ion index.
  static CouplingVector unit(std::size_t n_ions, std::size_t ion) {
    if (ion < 1 || ion > n_ions) {
      throw IndexError("ion index " + std::to_string(ion) + " outside 1.." +
                       std::to_string(n_ions));
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n_ions));
    v(static_cast<Eigen::Index>(ion - 1)) = 1.0;
    return CouplingVector(std::move(v));
  }

  /// chi_W = [1, ..., 1]^T / sqrt(N).
  static CouplingVector uniform(std::size_t n_ions) {
    if (n_ions < 1) throw InvalidSizeError("uniform coupling needs N >= 1");
    return CouplingVector(ComplexVector::Constant(
        static_cast<Eigen::Index>(n_ions),
        Complex(detail::uniform_amplitude(n_ions), 0.0)));
  }

  std::size_t size() const {
    return static_cast<std::size_t>(components_.size());
  }
  const ComplexVector& components() const { return components_; }

 private:
  ComplexVector components_;
};

/// The W-state: zero on slot 0, 1/sqrt(N) on every ion.
inline RegisterState uniform_register(std::size_t n_ions) {
  if (n_ions < 2) {
    throw InvalidSizeError("uniform register needs N >= 2, got " +
                           std::to_string(n_ions));
  }
  return RegisterState::from_manifold(CouplingVector::uniform(n_ions).components());
}

/// |<a|b>|^2. Insensitive to the global phase of either argument.
inline double fidelity(const RegisterState& a, const RegisterState& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError("fidelity: N=" + std::to_string(a.n_ions()) +
                         " vs N=" + std::to_string(b.n_ions()));
  }
  const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::min(1.0, f);
}

/// |amplitude[m]|^2 for 1-based ion index m.
inline double marked_probability(const RegisterState& s, std::size_t m) {
  if (m < 1 || m > s.n_ions()) {
    throw IndexError("marked index " + std::to_string(m) + " outside 1.." +
                     std::to_string(s.n_ions()));
  }
  return s.population(m);
}

}  // namespace ionsearch
