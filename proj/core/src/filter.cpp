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

#include "photonflow/filter.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

Op hermitize(const Op& m) { return 0.5 * (m + m.adjoint()); }

void require_finite(const FilterState& s, std::size_t step) {
  if (!s.rho11.allFinite() || !s.rho10.allFinite() || !s.rho00.allFinite()) {
    std::ostringstream os;
    os << "filter integration diverged at step " << step << " (t = " << s.t << ")";
    throw DivergenceError(os.str(), step);
  }
}

void require_dims(const SLHModel& model, const FilterState& s) {
  const Eigen::Index d = model.dim();
  for (const Op* m : {&s.rho11, &s.rho10, &s.rho00}) {
    if (m->rows() != d || m->cols() != d) throw DimensionError("filter state does not match the model dimension");
  }
}

void require_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step dt must be positive");
}

std::size_t step_count(double t0, double t_end, double dt) {
  require_step(dt);
  if (!(t_end > t0)) throw ParameterError("integration window must have t_end > t0");
  return static_cast<std::size_t>(std::llround((t_end - t0) / dt));
}

}  // namespace

FilterState FilterState::initial(const CVector& eta, double t0) {
  const Op p = projector(eta);
  return {p, Op::Zero(p.rows(), p.cols()), p, t0};
}

void HomodyneConfig::validate() const {
  const double norm = std::norm(s11) + std::norm(s21);
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "homodyne beamsplitter column must be unit norm, |s11|^2 + |s21|^2 = " << norm;
    throw ParameterError(os.str());
  }
}

bool HomodyneConfig::is_perfect(double tol) const { return std::abs(s11 - 1.0) <= tol && std::abs(s21) <= tol; }

FilterGains filter_gains(const SLHModel& model, const HomodyneConfig& cfg, cplx xi, const FilterState& s) {
  const Op& l = model.coupling();
  const Op& sc = model.scattering();
  const Op rho01 = s.rho01();
  const cplx tr_l = (l * s.rho11).trace();
  const cplx tr_ld = (l.adjoint() * s.rho11).trace();
  const cplx tr_s01 = (sc * rho01).trace();
  const cplx tr_sd10 = (sc.adjoint() * s.rho10).trace();
  const cplx s11 = cfg.s11, s21 = cfg.s21;
  const cplx k1 = s11 * tr_l + std::conj(s11) * tr_ld + s11 * tr_s01 * xi + std::conj(s11) * tr_sd10 * std::conj(xi);
  const cplx k2 = -kI * s21 * tr_l + kI * std::conj(s21) * tr_ld - kI * s21 * tr_s01 * xi +
                  kI * std::conj(s21) * tr_sd10 * std::conj(xi);
  return {k1.real(), k2.real()};
}

double filter_gain_reduced(const SLHModel& model, cplx xi, const FilterState& s) {
  const Op& l = model.coupling();
  const Op& sc = model.scattering();
  const cplx k1 = (l * s.rho11).trace() + (l.adjoint() * s.rho11).trace() + (sc * s.rho01()).trace() * xi +
                  (sc.adjoint() * s.rho10).trace() * std::conj(xi);
  return k1.real();
}

FilterState filter_step(const SLHModel& model, const HomodyneConfig& cfg, cplx xi, const FilterState& s, double dw1,
                        double dw2, double dt, std::size_t step) {
  require_dims(model, s);
  require_step(dt);
  const Op& l = model.coupling();
  const Op ld = l.adjoint();
  const Op& sc = model.scattering();
  const Op sd = sc.adjoint();
  const Op rho01 = s.rho01();
  const cplx xic = std::conj(xi);
  const double xi2 = std::norm(xi);
  const cplx s11 = cfg.s11, s11c = std::conj(cfg.s11);
  const cplx s21 = cfg.s21, s21c = std::conj(cfg.s21);
  const FilterGains k = filter_gains(model, cfg, xi, s);

  const Op s_rho01 = sc * rho01;
  const Op rho10_sd = s.rho10 * sd;
  const Op s_rho00 = sc * s.rho00;

  const Op drift11 = liouvillian(model, s.rho11) + commutator(s_rho01, ld) * xi + commutator(l, rho10_sd) * xic +
                     (s_rho00 * sd - s.rho00) * xi2;
  const Op n1_11 = s11c * s.rho11 * ld + s11 * l * s.rho11 + s11c * rho10_sd * xic + s11 * s_rho01 * xi -
                   s.rho11 * k.k1;
  const Op n2_11 = kI * s21c * s.rho11 * ld - kI * s21 * l * s.rho11 + kI * s21c * rho10_sd * xic -
                   kI * s21 * s_rho01 * xi - s.rho11 * k.k2;

  const Op drift10 = liouvillian(model, s.rho10) + commutator(s_rho00, ld) * xi;
  const Op n1_10 = s11c * s.rho10 * ld + s11 * l * s.rho10 + s11 * s_rho00 * xi - s.rho10 * k.k1;
  const Op n2_10 = kI * s21c * s.rho10 * ld - kI * s21 * l * s.rho10 - kI * s21 * s_rho00 * xi - s.rho10 * k.k2;

  const Op drift00 = liouvillian(model, s.rho00);
  const Op n1_00 = s11c * s.rho00 * ld + s11 * l * s.rho00 - s.rho00 * k.k1;
  const Op n2_00 = kI * s21c * s.rho00 * ld - kI * s21 * l * s.rho00 - s.rho00 * k.k2;

  FilterState out;
  out.rho11 = hermitize(s.rho11 + drift11 * dt + n1_11 * dw1 + n2_11 * dw2);
  out.rho10 = s.rho10 + drift10 * dt + n1_10 * dw1 + n2_10 * dw2;
  out.rho00 = hermitize(s.rho00 + drift00 * dt + n1_00 * dw1 + n2_00 * dw2);
  out.t = s.t + dt;
  require_finite(out, step);
  return out;
}

FilterState filter_step_reduced(const SLHModel& model, cplx xi, const FilterState& s, double dw1, double dt,
                                std::size_t step) {
  require_dims(model, s);
  require_step(dt);
  const Op& l = model.coupling();
  const Op ld = l.adjoint();
  const Op& sc = model.scattering();
  const Op sd = sc.adjoint();
  const Op rho01 = s.rho01();
  const cplx xic = std::conj(xi);
  const double xi2 = std::norm(xi);
  const double k1 = filter_gain_reduced(model, xi, s);

  const Op s_rho01 = sc * rho01;
  const Op rho10_sd = s.rho10 * sd;
  const Op s_rho00 = sc * s.rho00;

  const Op drift11 = liouvillian(model, s.rho11) + commutator(s_rho01, ld) * xi + commutator(l, rho10_sd) * xic +
                     (s_rho00 * sd - s.rho00) * xi2;
  const Op n11 = s.rho11 * ld + l * s.rho11 + rho10_sd * xic + s_rho01 * xi - s.rho11 * k1;
  const Op drift10 = liouvillian(model, s.rho10) + commutator(s_rho00, ld) * xi;
  const Op n10 = s.rho10 * ld + l * s.rho10 + s_rho00 * xi - s.rho10 * k1;
  const Op drift00 = liouvillian(model, s.rho00);
  const Op n00 = s.rho00 * ld + l * s.rho00 - s.rho00 * k1;

  FilterState out;
  out.rho11 = hermitize(s.rho11 + drift11 * dt + n11 * dw1);
  out.rho10 = s.rho10 + drift10 * dt + n10 * dw1;
  out.rho00 = hermitize(s.rho00 + drift00 * dt + n00 * dw1);
  out.t = s.t + dt;
  require_finite(out, step);
  return out;
}

Op belavkin_step(const SLHModel& model, const Op& rho, double dw, double dt, std::size_t step) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) throw DimensionError("belavkin_step: dimension mismatch");
  require_step(dt);
  const Op& l = model.coupling();
  const Op ld = l.adjoint();
  const double k = ((l * rho).trace() + (ld * rho).trace()).real();
  const Op out = hermitize(rho + liouvillian(model, rho) * dt + (rho * ld + l * rho - rho * k) * dw);
  if (!out.allFinite()) {
    throw DivergenceError("vacuum filter integration diverged at step " + std::to_string(step), step);
  }
  return out;
}

double filter_start_time(const PulseShape& pulse) {
  switch (pulse.kind()) {
    case PulseKind::kRisingExp:
      return -10.0 / pulse.rate();
    case PulseKind::kGaussian:
      return std::min(0.0, pulse.support(1e-10).first);
    case PulseKind::kSampled:
      return pulse.as_sampled()->grid.t0;
    case PulseKind::kDecayingExp:
      break;
  }
  return 0.0;
}

Trajectory simulate_trajectory(const SLHModel& model, const HomodyneConfig& cfg, const PulseShape& pulse,
                               const CVector& eta, const TrajectoryOptions& opts) {
  cfg.validate();
  if (eta.size() != model.dim()) throw DimensionError("simulate_trajectory: initial state dimension mismatch");
  if (opts.record_every == 0) throw ParameterError("record_every must be at least 1");
  const std::size_t n = step_count(opts.t0, opts.t_end, opts.dt);
  const bool perfect = cfg.is_perfect();

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(opts.dt));

  Trajectory tr;
  tr.record.t0 = opts.t0;
  tr.record.dt = opts.dt;
  for (auto* v : {&tr.record.dy1, &tr.record.dy2, &tr.record.k1, &tr.record.k2}) v->reserve(n);
  tr.path.reserve(n / opts.record_every + 2);

  FilterState s = FilterState::initial(eta, opts.t0);
  tr.path.push_back(s);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = opts.t0 + static_cast<double>(i) * opts.dt;
    s.t = t;
    const cplx xi = eval_time(pulse, t);
    const FilterGains k = perfect ? FilterGains{filter_gain_reduced(model, xi, s), 0.0}
                                  : filter_gains(model, cfg, xi, s);
    double dw1 = 0.0, dw2 = 0.0;
    if (!opts.noiseless) {
      dw1 = normal(rng);
      dw2 = normal(rng);
    }
    tr.record.dy1.push_back(k.k1 * opts.dt + dw1);
    tr.record.dy2.push_back(k.k2 * opts.dt + dw2);
    tr.record.k1.push_back(k.k1);
    tr.record.k2.push_back(k.k2);
    s = perfect ? filter_step_reduced(model, xi, s, dw1, opts.dt, i)
                : filter_step(model, cfg, xi, s, dw1, dw2, opts.dt, i);
    if ((i + 1) % opts.record_every == 0 || i + 1 == n) tr.path.push_back(s);
  }
  return tr;
}

cplx expectation(const Op& rho, const Op& x) {
  if (rho.rows() != x.cols() || rho.cols() != x.rows()) throw DimensionError("expectation: dimension mismatch");
  return (rho * x).trace();
}

}  // namespace photonflow
