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

#include "ionsearch/householder.hpp"
#include "ionsearch/model.hpp"
#include "oracles.hpp"

namespace testutil {

inline ionsearch::ComplexVector to_eigen(const oracle::Vec& v) {
  ionsearch::ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline oracle::Mat to_oracle(const ionsearch::Operator& op) {
  const std::size_t d = op.dimension();
  oracle::Mat m(d, oracle::Vec(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = op(i, j);
  }
  return m;
}

inline oracle::Vec to_oracle(const ionsearch::CouplingVector& chi) {
  const auto& c = chi.components();
  return oracle::Vec(c.data(), c.data() + c.size());
}

inline ionsearch::CouplingVector random_chi(std::size_t n, std::mt19937_64& rng) {
  return ionsearch::CouplingVector(to_eigen(oracle::random_unit(n, rng)));
}

}  // namespace testutil
