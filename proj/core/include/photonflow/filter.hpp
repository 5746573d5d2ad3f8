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
#include <optional>
#include <vector>

#include "photonflow/hilbert.hpp"
#include "photonflow/pulse.hpp"

namespace photonflow {

/// Conditional state of a system driven by a single photon. rho01 is never
/// stored; it is rho10^dagger by definition.
struct FilterState {
  Op rho11;
  Op rho10;
  Op rho00;
  double t = 0.0;

  Op rho01() const { return rho10.adjoint(); }
  /// rho11 = rho00 = |eta><eta|, rho10 = 0.
  static FilterState initial(const CVector& eta, double t0);
};

/// Entries of the measurement beamsplitter that enter the homodyne gains.
struct HomodyneConfig {
  cplx s11{1.0, 0.0};
  cplx s21{0.0, 0.0};

  static HomodyneConfig perfect() { return {}; }
  /// ParameterError unless |s11|^2 + |s21|^2 = 1.
  void validate() const;
  bool is_perfect(double tol = 1e-15) const;
};

struct FilterGains {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// k1, k2 evaluated on the current state.
FilterGains filter_gains(const SLHModel& model, const HomodyneConfig& cfg, cplx xi, const FilterState& s);
/// k1 only, perfect detection.
double filter_gain_reduced(const SLHModel& model, cplx xi, const FilterState& s);

/// One Euler-Maruyama step of the two-channel single-photon filter. rho11 and
/// rho00 are re-hermitized; DivergenceError carries `step`.
FilterState filter_step(const SLHModel& model, const HomodyneConfig& cfg, cplx xi, const FilterState& s, double dw1,
                        double dw2, double dt, std::size_t step = 0);
/// Perfect-detection filter driven by channel 1 only.
FilterState filter_step_reduced(const SLHModel& model, cplx xi, const FilterState& s, double dw1, double dt,
                                std::size_t step = 0);
/// Vacuum-input homodyne filter on a single density operator.
Op belavkin_step(const SLHModel& model, const Op& rho, double dw, double dt, std::size_t step = 0);

/// Homodyne record on a uniform grid.
struct MeasurementRecord {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> dy1, dy2;
  std::vector<double> k1, k2;

  std::size_t steps() const noexcept { return dy1.size(); }
  double dw1(std::size_t i) const { return dy1[i] - k1[i] * dt; }
  double dw2(std::size_t i) const { return dy2[i] - k2[i] * dt; }
};

struct TrajectoryOptions {
  double t0 = 0.0;
  double t_end = 10.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  /// Keep every n-th state of the path (the first and last are always kept).
  std::size_t record_every = 1;
  /// Zero innovations: the filter drift alone.
  bool noiseless = false;
};

struct Trajectory {
  std::vector<FilterState> path;
  MeasurementRecord record;
};

/// Default start time: -10/beta for rising exponentials, earliest significant
/// time for Gaussians, zero otherwise.
double filter_start_time(const PulseShape& pulse);

/// Samples innovations dW ~ N(0, dt) from mt19937_64(seed), records
/// dY = k dt + dW and integrates the filter.
Trajectory simulate_trajectory(const SLHModel& model, const HomodyneConfig& cfg, const PulseShape& pulse,
                               const CVector& eta, const TrajectoryOptions& opts);

/// Unconditional single-photon master-equation blocks.
struct MasterState {
  Op rho11;
  Op rho10;
  Op rho00;
  double t = 0.0;

  Op rho01() const { return rho10.adjoint(); }
};

/// RK4 integration of the single-photon master equation. S must be the identity.
std::vector<MasterState> master_evolve(const SLHModel& model, const PulseShape& pulse, const CVector& eta, double t0,
                                       double t_end, double dt, std::size_t record_every = 1);
/// RK4 integration of d rho / dt = L* rho.
std::vector<Op> lindblad_evolve(const SLHModel& model, const Op& rho0, double t0, double t_end, double dt,
                                std::size_t record_every = 1);

/// Tr[rho X].
cplx expectation(const Op& rho, const Op& x);

/// int_{-inf}^{t_up} (|xi|^2 - |eta|^2) dt with eta the output of a two-level
/// emitter of linewidth kappa, eta[i w] = (i w - kappa/2) / (i w + kappa/2) xi[i w].
double excitation_balance(const PulseShape& pulse, double kappa, double t_up);
/// Same integral for given input and output samples on `grid`.
double excitation_balance(const std::vector<cplx>& xi, const std::vector<cplx>& eta, const TimeGrid& grid,
                          double t_up);

/// Mean and standard error of Tr[rho11 X] over independent trajectories.
struct EnsembleSummary {
  std::size_t n_traj = 0;
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> stderr_;
};

/// Runs n_traj trajectories with seeds opts.seed + index on up to
/// ensemble_threads() workers and reduces in index order.
EnsembleSummary run_ensemble(const SLHModel& model, const HomodyneConfig& cfg, const PulseShape& pulse,
                             const CVector& eta, const TrajectoryOptions& opts, std::size_t n_traj, const Op& observable);

/// Worker count: hardware concurrency capped by PHOTONFLOW_THREADS.
std::size_t ensemble_threads(std::size_t tasks);

}  // namespace photonflow
