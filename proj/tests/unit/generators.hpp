// Copyright 2026 The PhotonFlow Authors
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

#include <cstdint>
#include <random>

#include "photonflow/doubled.hpp"
#include "photonflow/linear_model.hpp"

namespace photonflow::testing {

/// Deterministic source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  cplx complex() { return {normal(), normal()}; }

  CMatrix matrix(Eigen::Index r, Eigen::Index c) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex();
    }
    return m;
  }
  CMatrix hermitian(Eigen::Index n) {
    const CMatrix m = matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }
  CMatrix symmetric(Eigen::Index n) {
    const CMatrix m = matrix(n, n);
    return 0.5 * (m + m.transpose());
  }
  /// Positive semidefinite with unit trace.
  CMatrix density(Eigen::Index n) {
    const CMatrix m = matrix(n, n);
    const CMatrix p = m * m.adjoint();
    return p / p.trace().real();
  }
  CVector state(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex();
    return v / v.norm();
  }
  LinearSystemParams params(Eigen::Index n, Eigen::Index m, bool passive) {
    LinearSystemParams p;
    p.omega_minus = hermitian(n);
    p.omega_plus = passive ? CMatrix::Zero(n, n) : CMatrix(symmetric(n));
    p.c_minus = matrix(m, n);
    p.c_plus = passive ? CMatrix::Zero(m, n) : CMatrix(0.3 * matrix(m, n));
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace photonflow::testing
