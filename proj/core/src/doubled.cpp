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

#include "photonflow/doubled.hpp"

#include <sstream>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

std::string shape(const CMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

SignMatrix::SignMatrix(Eigen::Index n) : n_(n) {
  if (n < 0) throw DimensionError("SignMatrix: negative dimension");
}

CMatrix SignMatrix::full() const {
  CMatrix j = CMatrix::Identity(2 * n_, 2 * n_);
  j.bottomRightCorner(n_, n_) *= -1.0;
  return j;
}

CMatrix SignMatrix::apply_left(const CMatrix& x) const {
  if (x.rows() != 2 * n_) throw DimensionError("SignMatrix::apply_left: expected " + std::to_string(2 * n_) + " rows, got " + shape(x));
  CMatrix out = x;
  out.bottomRows(n_) *= -1.0;
  return out;
}

CMatrix SignMatrix::apply_right(const CMatrix& x) const {
  if (x.cols() != 2 * n_) throw DimensionError("SignMatrix::apply_right: expected " + std::to_string(2 * n_) + " cols, got " + shape(x));
  CMatrix out = x;
  out.rightCols(n_) *= -1.0;
  return out;
}

DoubledUpMatrix::DoubledUpMatrix(CMatrix upper_left, CMatrix upper_right)
    : u_(std::move(upper_left)), v_(std::move(upper_right)) {
  if (u_.rows() != v_.rows() || u_.cols() != v_.cols()) {
    throw DimensionError("delta: U is " + shape(u_) + " but V is " + shape(v_));
  }
}

DoubledUpMatrix DoubledUpMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return {CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols)};
}

DoubledUpMatrix DoubledUpMatrix::identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

DoubledUpMatrix DoubledUpMatrix::from_full(const CMatrix& full, double tol) {
  if (full.rows() % 2 != 0 || full.cols() % 2 != 0) {
    throw DimensionError("from_full: odd dimension " + shape(full));
  }
  const Eigen::Index r = full.rows() / 2;
  const Eigen::Index k = full.cols() / 2;
  DoubledUpMatrix out(full.topLeftCorner(r, k), full.topRightCorner(r, k));
  const double dev = std::max(
      r * k == 0 ? 0.0 : (full.bottomLeftCorner(r, k) - out.v_.conjugate()).cwiseAbs().maxCoeff(),
      r * k == 0 ? 0.0 : (full.bottomRightCorner(r, k) - out.u_.conjugate()).cwiseAbs().maxCoeff());
  if (dev > tol) {
    std::ostringstream os;
    os << "from_full: lower block deviates from conjugate symmetry by " << dev;
    throw ConsistencyError(os.str());
  }
  return out;
}

CMatrix DoubledUpMatrix::full() const {
  const Eigen::Index r = rows();
  const Eigen::Index k = cols();
  CMatrix out(2 * r, 2 * k);
  out.topLeftCorner(r, k) = u_;
  out.topRightCorner(r, k) = v_;
  out.bottomLeftCorner(r, k) = v_.conjugate();
  out.bottomRightCorner(r, k) = u_.conjugate();
  return out;
}

DoubledUpMatrix DoubledUpMatrix::flat() const { return {u_.adjoint(), -v_.transpose()}; }

DoubledUpMatrix DoubledUpMatrix::adjoint() const { return {u_.adjoint(), v_.transpose()}; }

bool DoubledUpMatrix::is_passive(double tol) const {
  if (v_.size() == 0) return true;
  return v_.cwiseAbs().maxCoeff() <= tol;
}

DoubledUpMatrix DoubledUpMatrix::operator*(const DoubledUpMatrix& rhs) const {
  if (cols() != rhs.rows()) {
    throw DimensionError("doubled-up product: " + shape(u_) + " times " + shape(rhs.u_));
  }
  return {u_ * rhs.u_ + v_ * rhs.v_.conjugate(), u_ * rhs.v_ + v_ * rhs.u_.conjugate()};
}

DoubledUpMatrix DoubledUpMatrix::operator+(const DoubledUpMatrix& rhs) const {
  if (rows() != rhs.rows() || cols() != rhs.cols()) {
    throw DimensionError("doubled-up sum: " + shape(u_) + " plus " + shape(rhs.u_));
  }
  return {u_ + rhs.u_, v_ + rhs.v_};
}

DoubledUpMatrix DoubledUpMatrix::operator-(const DoubledUpMatrix& rhs) const { return *this + (-rhs); }

DoubledUpMatrix DoubledUpMatrix::operator-() const { return {-u_, -v_}; }

DoubledUpMatrix DoubledUpMatrix::operator*(double s) const { return {u_ * s, v_ * s}; }

DoubledUpMatrix delta(const CMatrix& upper_left, const CMatrix& upper_right) {
  return {upper_left, upper_right};
}

CMatrix flat(const CMatrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
    throw DimensionError("flat: odd dimension " + shape(x));
  }
  const SignMatrix jr(x.rows() / 2);
  const SignMatrix jk(x.cols() / 2);
  return jk.apply_left(jr.apply_right(x.adjoint()));
}

}  // namespace photonflow
