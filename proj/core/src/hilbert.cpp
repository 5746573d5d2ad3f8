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

#include "photonflow/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

void require_square(const Op& op, Eigen::Index d, const char* name) {
  if (op.rows() != d || op.cols() != d) {
    std::ostringstream os;
    os << "SLHModel: " << name << " is " << op.rows() << "x" << op.cols() << ", expected " << d << "x" << d;
    throw DimensionError(os.str());
  }
}

void require_rate(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ParameterError("decay rate kappa must be positive");
}

}  // namespace

SLHModel::SLHModel(Op scattering, Op coupling, Op hamiltonian)
    : s_(std::move(scattering)), l_(std::move(coupling)), h_(std::move(hamiltonian)) {
  const Eigen::Index d = h_.rows();
  require_square(h_, d, "H");
  require_square(l_, d, "L");
  require_square(s_, d, "S");
  if (d == 0) throw DimensionError("SLHModel: empty Hilbert space");
  const Op eye = Op::Identity(d, d);
  if ((s_.adjoint() * s_ - eye).cwiseAbs().maxCoeff() > kOperatorTol ||
      (s_ * s_.adjoint() - eye).cwiseAbs().maxCoeff() > kOperatorTol) {
    throw ModelError("SLHModel: S is not unitary");
  }
  if (hermiticity_defect(h_) > kOperatorTol) throw ModelError("SLHModel: H is not Hermitian");
  ldl_ = l_.adjoint() * l_;
}

bool SLHModel::scattering_is_identity(double tol) const {
  return (s_ - Op::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

Op sigma_minus() {
  Op s = Op::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

Op sigma_z() {
  Op s = Op::Zero(2, 2);
  s(0, 0) = -1.0;
  s(1, 1) = 1.0;
  return s;
}

Op annihilation(int n_max) {
  if (n_max < 1) throw ParameterError("annihilation: need at least one photon level");
  Op a = Op::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CVector basis_state(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw DimensionError("basis_state: index out of range");
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Op projector(const CVector& psi) { return psi * psi.adjoint(); }

SLHModel atom_model(double omega_a, double kappa) {
  require_rate(kappa);
  return {Op::Identity(2, 2), std::sqrt(kappa) * sigma_minus(), 0.5 * omega_a * sigma_z()};
}

SLHModel cavity_model(double omega_c, double kappa, int n_max) {
  require_rate(kappa);
  const Op a = annihilation(n_max);
  return {Op::Identity(n_max + 1, n_max + 1), std::sqrt(kappa) * a, omega_c * a.adjoint() * a};
}

Op lindbladian(const SLHModel& model, const Op& x) {
  if (x.rows() != model.dim() || x.cols() != model.dim()) throw DimensionError("lindbladian: dimension mismatch");
  const Op& l = model.coupling();
  const Op& ldl = model.coupling_power();
  return -kI * commutator(x, model.hamiltonian()) + l.adjoint() * x * l - 0.5 * (ldl * x + x * ldl);
}

Op liouvillian(const SLHModel& model, const Op& rho) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) throw DimensionError("liouvillian: dimension mismatch");
  const Op& l = model.coupling();
  const Op& ldl = model.coupling_power();
  return -kI * commutator(model.hamiltonian(), rho) + l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

double hermiticity_defect(const Op& rho) {
  if (rho.size() == 0) return 0.0;
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace photonflow
