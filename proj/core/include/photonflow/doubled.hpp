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

#include <complex>

#include <Eigen/Dense>

namespace photonflow {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

/// J_n = diag(I_n, -I_n).
class SignMatrix {
 public:
  explicit SignMatrix(Eigen::Index n);

  Eigen::Index n() const noexcept { return n_; }
  CMatrix full() const;

  /// J * X without materializing J (negates the lower row block).
  CMatrix apply_left(const CMatrix& x) const;
  /// X * J (negates the right column block).
  CMatrix apply_right(const CMatrix& x) const;

 private:
  Eigen::Index n_;
};

/// The block matrix [[U, V], [conj(V), conj(U)]], stored as the (U, V) pair.
class DoubledUpMatrix {
 public:
  DoubledUpMatrix() = default;
  DoubledUpMatrix(CMatrix upper_left, CMatrix upper_right);

  static DoubledUpMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static DoubledUpMatrix identity(Eigen::Index n);

  /// Reads U and V from the upper row block of a 2r x 2k matrix and checks
  /// that the lower block matches within `tol` (max-abs).
  static DoubledUpMatrix from_full(const CMatrix& full, double tol = 1e-12);

  const CMatrix& upper_left() const noexcept { return u_; }
  const CMatrix& upper_right() const noexcept { return v_; }
  Eigen::Index rows() const noexcept { return u_.rows(); }
  Eigen::Index cols() const noexcept { return u_.cols(); }

  CMatrix full() const;

  /// J_k X^dagger J_r, which for doubled-up X is Delta(U^dagger, -V^T).
  DoubledUpMatrix flat() const;
  DoubledUpMatrix adjoint() const;

  bool is_passive(double tol = 0.0) const;

  DoubledUpMatrix operator*(const DoubledUpMatrix& rhs) const;
  DoubledUpMatrix operator+(const DoubledUpMatrix& rhs) const;
  DoubledUpMatrix operator-(const DoubledUpMatrix& rhs) const;
  DoubledUpMatrix operator-() const;
  /// Real scalars only.
  DoubledUpMatrix operator*(double s) const;

 private:
  CMatrix u_;
  CMatrix v_;
};

inline DoubledUpMatrix operator*(double s, const DoubledUpMatrix& m) { return m * s; }

DoubledUpMatrix delta(const CMatrix& upper_left, const CMatrix& upper_right);

/// X^flat = J_k X^dagger J_r for a 2r x 2k matrix X.
CMatrix flat(const CMatrix& x);

}  // namespace photonflow
