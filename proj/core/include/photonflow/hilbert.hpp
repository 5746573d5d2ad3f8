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

#include "photonflow/doubled.hpp"

namespace photonflow {

/// Dense operator on a d-dimensional system Hilbert space.
using Op = CMatrix;

inline constexpr double kOperatorTol = 1e-12;
/// Populations of the top Fock level above this flag truncation error.
inline constexpr double kTruncationWarning = 1e-6;
inline constexpr int kDefaultFockCutoff = 10;

/// Open system (S, L, H) with a single field channel. S unitary, H Hermitian.
class SLHModel {
 public:
  SLHModel(Op scattering, Op coupling, Op hamiltonian);

  Eigen::Index dim() const noexcept { return h_.rows(); }
  const Op& scattering() const noexcept { return s_; }
  const Op& coupling() const noexcept { return l_; }
  const Op& hamiltonian() const noexcept { return h_; }
  /// L^dagger L, cached.
  const Op& coupling_power() const noexcept { return ldl_; }
  bool scattering_is_identity(double tol = kOperatorTol) const;

 private:
  Op s_, l_, h_, ldl_;
};

/// Basis ordering {|g>, |e>}: sigma_- = |g><e|, sigma_z = |e><e| - |g><g|.
/// S = 1, L = sqrt(kappa) sigma_-, H = (omega_a / 2) sigma_z.
SLHModel atom_model(double omega_a, double kappa);
/// Fock space truncated at n_max photons (dimension n_max + 1).
/// S = 1, L = sqrt(kappa) a, H = omega_c a^dagger a.
SLHModel cavity_model(double omega_c, double kappa, int n_max = kDefaultFockCutoff);

Op sigma_minus();
Op sigma_z();
/// Truncated annihilation operator, a|n> = sqrt(n)|n-1>.
Op annihilation(int n_max);
CVector basis_state(Eigen::Index dim, Eigen::Index k);
Op projector(const CVector& psi);

inline Op commutator(const Op& a, const Op& b) { return a * b - b * a; }

/// Heisenberg-picture generator: -i[X, H] + L^dag X L - 1/2 {L^dag L, X}.
Op lindbladian(const SLHModel& model, const Op& x);
/// Schroedinger-picture generator: -i[H, rho] + L rho L^dag - 1/2 {L^dag L, rho}.
Op liouvillian(const SLHModel& model, const Op& rho);

/// Largest |entry| of rho - rho^dagger.
double hermiticity_defect(const Op& rho);

}  // namespace photonflow
