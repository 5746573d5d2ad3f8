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

#include "photonflow/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

LinearSystemModel build_state_space(const LinearSystemParams& p) {
  const Eigen::Index n = p.omega_minus.rows();
  const Eigen::Index m = p.c_minus.rows();
  if (p.omega_minus.cols() != n || p.omega_plus.rows() != n || p.omega_plus.cols() != n) {
    throw DimensionError("build_state_space: Omega- and Omega+ must both be n x n");
  }
  if (p.c_minus.cols() != n || p.c_plus.rows() != m || p.c_plus.cols() != n) {
    throw DimensionError("build_state_space: C- and C+ must both be m x n");
  }

  const DoubledUpMatrix omega = delta(p.omega_minus, p.omega_plus);
  const CMatrix omega_full = omega.full();
  const double herm_dev = max_abs(omega_full - omega_full.adjoint());
  if (herm_dev > 1e-12 * std::max(1.0, max_abs(omega_full))) {
    std::ostringstream os;
    os << "build_state_space: Delta(Omega-, Omega+) is not Hermitian (deviation " << herm_dev << ")";
    throw ModelError(os.str());
  }

  LinearSystemModel model;
  model.n_ = n;
  model.m_ = m;
  model.params_ = p;
  model.c_ = delta(p.c_minus, p.c_plus);
  model.b_ = -model.c_.flat();
  // -i J Omega is doubled-up: Delta(-i Omega-, -i Omega+).
  const DoubledUpMatrix hamiltonian_part(-kI * p.omega_minus, -kI * p.omega_plus);
  model.a_ = hamiltonian_part - 0.5 * (model.c_.flat() * model.c_);
  model.passive_ = max_abs(p.omega_plus) == 0.0 && max_abs(p.c_plus) == 0.0;
  model.decoupled_ = max_abs(p.c_minus) == 0.0 && max_abs(p.c_plus) == 0.0;

  const RealizabilityReport report = check_realizability(model);
  if (!report.within(kRealizabilityTol)) {
    std::ostringstream os;
    os << "build_state_space: realizability residuals (" << report.drift_residual << ", "
       << report.coupling_residual << ") exceed " << kRealizabilityTol;
    throw ConsistencyError(os.str());
  }
  return model;
}

LinearSystemModel cavity_linear_model(double omega_c, double kappa) {
  if (!(kappa > 0.0)) throw ParameterError("cavity_linear_model: kappa must be positive");
  LinearSystemParams p;
  p.omega_minus = CMatrix::Constant(1, 1, omega_c);
  p.omega_plus = CMatrix::Zero(1, 1);
  p.c_minus = CMatrix::Constant(1, 1, std::sqrt(kappa));
  p.c_plus = CMatrix::Zero(1, 1);
  return build_state_space(p);
}

std::vector<cplx> LinearSystemModel::drift_eigenvalues() const {
  if (n_ == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> solver(a_.full(), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool LinearSystemModel::hurwitz() const {
  const auto ev = drift_eigenvalues();
  return std::all_of(ev.begin(), ev.end(), [](cplx l) { return l.real() < -kHurwitzMargin; });
}

double LinearSystemModel::slowest_decay_rate() const {
  const auto ev = drift_eigenvalues();
  if (ev.empty()) return 0.0;
  double slowest = std::numeric_limits<double>::infinity();
  for (cplx l : ev) slowest = std::min(slowest, std::abs(l.real()));
  return slowest;
}

void LinearSystemModel::require_hurwitz() const {
  std::vector<cplx> bad;
  for (cplx l : drift_eigenvalues()) {
    if (!(l.real() < -kHurwitzMargin)) bad.push_back(l);
  }
  if (bad.empty()) return;
  std::ostringstream os;
  os << "drift matrix is not Hurwitz; offending eigenvalues:";
  for (cplx l : bad) os << " (" << l.real() << (l.imag() < 0 ? "" : "+") << l.imag() << "i)";
  throw StabilityError(os.str(), std::move(bad));
}

RealizabilityReport realizability_residuals(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.cols() || b.cols() != c.rows()) {
    throw DimensionError("realizability_residuals: non-conformable A, B, C");
  }
  RealizabilityReport r;
  r.drift_residual = (a + flat(a) + b * flat(b)).norm();
  r.coupling_residual = (b + flat(c)).norm();
  return r;
}

RealizabilityReport check_realizability(const LinearSystemModel& model) {
  return realizability_residuals(model.drift().full(), model.input().full(), model.output().full());
}

}  // namespace photonflow
