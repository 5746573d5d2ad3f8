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

#include <cmath>
#include <string>

#include "photonflow/errors.hpp"
#include "photonflow/feedback.hpp"
#include "photonflow/filter.hpp"

namespace photonflow {

namespace {

struct Blocks {
  Op b11, b10, b00;
};

Blocks axpy(const Blocks& x, double a, const Blocks& k) { return {x.b11 + a * k.b11, x.b10 + a * k.b10, x.b00 + a * k.b00}; }

Blocks master_rhs(const SLHModel& model, cplx xi, const Blocks& s) {
  const Op& l = model.coupling();
  const Op ld = l.adjoint();
  const Op b01 = s.b10.adjoint();
  return {liouvillian(model, s.b11) + commutator(b01, ld) * xi + commutator(l, s.b10) * std::conj(xi),
          liouvillian(model, s.b10) + commutator(s.b00, ld) * xi, liouvillian(model, s.b00)};
}

std::size_t step_count(double t0, double t_end, double dt, std::size_t record_every) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step dt must be positive");
  if (!(t_end > t0)) throw ParameterError("integration window must have t_end > t0");
  if (record_every == 0) throw ParameterError("record_every must be at least 1");
  return static_cast<std::size_t>(std::llround((t_end - t0) / dt));
}

Op rk4_lindblad(const SLHModel& model, const Op& rho, double dt) {
  const Op k1 = liouvillian(model, rho);
  const Op k2 = liouvillian(model, rho + 0.5 * dt * k1);
  const Op k3 = liouvillian(model, rho + 0.5 * dt * k2);
  const Op k4 = liouvillian(model, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<MasterState> master_evolve(const SLHModel& model, const PulseShape& pulse, const CVector& eta, double t0,
                                       double t_end, double dt, std::size_t record_every) {
  if (!model.scattering_is_identity()) {
    throw UnsupportedError("master_evolve: the single-photon master equation requires S = I");
  }
  if (eta.size() != model.dim()) throw DimensionError("master_evolve: initial state dimension mismatch");
  const std::size_t n = step_count(t0, t_end, dt, record_every);

  const Op p = projector(eta);
  Blocks s{p, Op::Zero(p.rows(), p.cols()), p};
  std::vector<MasterState> path;
  path.reserve(n / record_every + 2);
  path.push_back({s.b11, s.b10, s.b00, t0});
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const cplx x0 = eval_time(pulse, t);
    const cplx xm = eval_time(pulse, t + 0.5 * dt);
    const cplx x1 = eval_time(pulse, t + dt);
    const Blocks k1 = master_rhs(model, x0, s);
    const Blocks k2 = master_rhs(model, xm, axpy(s, 0.5 * dt, k1));
    const Blocks k3 = master_rhs(model, xm, axpy(s, 0.5 * dt, k2));
    const Blocks k4 = master_rhs(model, x1, axpy(s, dt, k3));
    s.b11 += (dt / 6.0) * (k1.b11 + 2.0 * k2.b11 + 2.0 * k3.b11 + k4.b11);
    s.b10 += (dt / 6.0) * (k1.b10 + 2.0 * k2.b10 + 2.0 * k3.b10 + k4.b10);
    s.b00 = rk4_lindblad(model, s.b00, dt);
    if (!s.b11.allFinite() || !s.b10.allFinite() || !s.b00.allFinite()) {
      throw DivergenceError("master equation diverged at step " + std::to_string(i), i);
    }
    if ((i + 1) % record_every == 0 || i + 1 == n) path.push_back({s.b11, s.b10, s.b00, t0 + (i + 1) * dt});
  }
  return path;
}

std::vector<Op> lindblad_evolve(const SLHModel& model, const Op& rho0, double t0, double t_end, double dt,
                                std::size_t record_every) {
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim()) {
    throw DimensionError("lindblad_evolve: dimension mismatch");
  }
  const std::size_t n = step_count(t0, t_end, dt, record_every);
  std::vector<Op> path;
  path.reserve(n / record_every + 2);
  Op rho = rho0;
  path.push_back(rho);
  for (std::size_t i = 0; i < n; ++i) {
    rho = rk4_lindblad(model, rho, dt);
    if (!rho.allFinite()) throw DivergenceError("Lindblad evolution diverged at step " + std::to_string(i), i);
    if ((i + 1) % record_every == 0 || i + 1 == n) path.push_back(rho);
  }
  return path;
}

double excitation_balance(const std::vector<cplx>& xi, const std::vector<cplx>& eta, const TimeGrid& grid,
                          double t_up) {
  if (xi.size() != grid.size || eta.size() != grid.size) throw DimensionError("excitation_balance: sample count mismatch");
  auto f = [&](std::size_t j) { return std::norm(xi[j]) - std::norm(eta[j]); };
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size; ++j) {
    const double a = grid.at(j), b = grid.at(j + 1);
    if (a >= t_up) break;
    if (b <= t_up) {
      acc += 0.5 * (f(j) + f(j + 1)) * grid.dt;
      continue;
    }
    const double w = (t_up - a) / grid.dt;
    const double fu = f(j) + w * (f(j + 1) - f(j));
    acc += 0.5 * (f(j) + fu) * (t_up - a);
  }
  return acc;
}

double excitation_balance(const PulseShape& pulse, double kappa, double t_up) {
  if (!(kappa > 0.0)) throw ParameterError("excitation_balance: kappa must be positive");
  const TimeGrid grid = pulse.analytic() ? default_grid(pulse, kappa, 0.5 * kappa) : pulse.as_sampled()->grid;
  const SpectrumView in = fft_spectrum(pulse, grid);
  std::vector<cplx> out(in.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cavity_response(in.grid[i], 0.0, kappa) * in.values[i];
  return excitation_balance(sample(pulse, grid), inverse_transform(out, grid), grid, t_up);
}

}  // namespace photonflow
