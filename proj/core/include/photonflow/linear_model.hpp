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

#include <vector>

#include "photonflow/doubled.hpp"

namespace photonflow {

inline constexpr double kRealizabilityTol = 1e-10;
inline constexpr double kHurwitzMargin = 1e-12;

/// Physical parameters of n coupled oscillators driven by m fields
/// (scattering fixed to the identity).
struct LinearSystemParams {
  CMatrix omega_minus;  // n x n
  CMatrix omega_plus;   // n x n
  CMatrix c_minus;      // m x n
  CMatrix c_plus;       // m x n
};

/// Quantum linear state-space model d(a) = A a dt + B dB, dB_out = C a dt + dB.
///
/// Instances come only from build_state_space(), which derives
///   C = Delta(C-, C+),  B = -C^flat,  A = -i J_n Omega - 1/2 C^flat C
/// and verifies both realizability identities before returning.
class LinearSystemModel {
 public:
  Eigen::Index n() const noexcept { return n_; }
  Eigen::Index m() const noexcept { return m_; }
  const LinearSystemParams& params() const noexcept { return params_; }

  const DoubledUpMatrix& drift() const noexcept { return a_; }
  const DoubledUpMatrix& input() const noexcept { return b_; }
  const DoubledUpMatrix& output() const noexcept { return c_; }
  DoubledUpMatrix hamiltonian_matrix() const { return delta(params_.omega_minus, params_.omega_plus); }

  bool passive() const noexcept { return passive_; }
  /// True when C = 0: the field passes straight through regardless of A.
  bool decoupled() const noexcept { return decoupled_; }

  std::vector<cplx> drift_eigenvalues() const;
  bool hurwitz() const;
  /// Smallest |Re lambda| over the drift spectrum; 0 when n = 0.
  double slowest_decay_rate() const;
  /// Throws StabilityError listing every eigenvalue with Re >= -kHurwitzMargin.
  void require_hurwitz() const;

 private:
  friend LinearSystemModel build_state_space(const LinearSystemParams& params);
  LinearSystemModel() = default;

  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  LinearSystemParams params_;
  DoubledUpMatrix a_, b_, c_;
  bool passive_ = true;
  bool decoupled_ = true;
};

LinearSystemModel build_state_space(const LinearSystemParams& params);

/// Single-mode cavity with detuning omega_c and coupling rate kappa.
LinearSystemModel cavity_linear_model(double omega_c, double kappa);

struct RealizabilityReport {
  double drift_residual = 0.0;     // ||A + A^flat + B B^flat||_F
  double coupling_residual = 0.0;  // ||B + C^flat||_F
  bool within(double tol = kRealizabilityTol) const {
    return drift_residual < tol && coupling_residual < tol;
  }
};

RealizabilityReport check_realizability(const LinearSystemModel& model);
/// Same residuals for arbitrary (not necessarily doubled-up) full matrices.
RealizabilityReport realizability_residuals(const CMatrix& a, const CMatrix& b, const CMatrix& c);

}  // namespace photonflow
