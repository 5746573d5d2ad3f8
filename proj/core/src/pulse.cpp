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

#include "photonflow/pulse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw ParameterError(os.str());
  }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// z such that 2 * Phi(-z) = tail, by bisection.
double two_sided_quantile(double tail) {
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * normal_cdf(-mid) > tail) lo = mid; else hi = mid;
  }
  return hi;
}

void require_analytic(const PulseShape& p, const char* op) {
  if (!p.analytic()) throw UnsupportedError(std::string(op) + ": not available for sampled pulses");
}

}  // namespace

PulseShape PulseShape::decaying_exp(double beta) {
  require_positive(beta, "decaying-exp beta");
  return PulseShape(DecayingExp{beta});
}

PulseShape PulseShape::rising_exp(double beta) {
  require_positive(beta, "rising-exp beta");
  return PulseShape(RisingExp{beta});
}

PulseShape PulseShape::gaussian(double bandwidth, double peak_time) {
  require_positive(bandwidth, "gaussian bandwidth");
  if (!std::isfinite(peak_time)) throw ParameterError("gaussian peak time must be finite");
  return PulseShape(GaussianPulse{bandwidth, peak_time});
}

PulseShape PulseShape::sampled(TimeGrid grid, std::vector<cplx> values) {
  if (values.size() != grid.size) throw DimensionError("sampled pulse: value count does not match grid size");
  require_positive(grid.dt, "sampled pulse dt");
  return PulseShape(SampledPulse{grid, std::move(values)});
}

PulseKind PulseShape::kind() const noexcept { return static_cast<PulseKind>(repr_.index()); }

std::string PulseShape::kind_name() const {
  switch (kind()) {
    case PulseKind::kDecayingExp: return "decaying-exp";
    case PulseKind::kRisingExp: return "rising-exp";
    case PulseKind::kGaussian: return "gaussian";
    case PulseKind::kSampled: return "sampled";
  }
  return "unknown";
}

bool PulseShape::has_jump() const noexcept {
  return kind() == PulseKind::kDecayingExp || kind() == PulseKind::kRisingExp;
}

double PulseShape::rate() const noexcept {
  return std::visit(overloaded{
                        [](const DecayingExp& d) { return d.beta; },
                        [](const RisingExp& r) { return r.beta; },
                        [](const GaussianPulse& g) { return g.bandwidth; },
                        [](const SampledPulse& s) { return 1.0 / s.grid.dt; },
                    },
                    repr_);
}

double PulseShape::energy_between(double a, double b) const {
  require_analytic(*this, "energy_between");
  if (b <= a) return 0.0;
  auto cdf = [this](double t) {
    return std::visit(overloaded{
                          [t](const DecayingExp& d) { return t <= 0.0 ? 0.0 : -std::expm1(-d.beta * t); },
                          [t](const RisingExp& r) { return t >= 0.0 ? 1.0 : std::exp(r.beta * t); },
                          [t](const GaussianPulse& g) { return normal_cdf(g.bandwidth * (t - g.peak_time)); },
                          [](const SampledPulse&) { return 0.0; },
                      },
                      repr_);
  };
  return cdf(b) - cdf(a);
}

std::pair<double, double> PulseShape::support(double tail) const {
  require_analytic(*this, "support");
  if (!(tail > 0.0 && tail < 1.0)) throw ParameterError("support: tail must lie in (0, 1)");
  return std::visit(overloaded{
                        [tail](const DecayingExp& d) { return std::pair{0.0, -std::log(tail) / d.beta}; },
                        [tail](const RisingExp& r) { return std::pair{std::log(tail) / r.beta, 0.0}; },
                        [tail](const GaussianPulse& g) {
                          const double z = two_sided_quantile(tail) / g.bandwidth;
                          return std::pair{g.peak_time - z, g.peak_time + z};
                        },
                        [](const SampledPulse& s) { return std::pair{s.grid.t0, s.grid.back()}; },
                    },
                    repr_);
}

cplx PulseShape::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const DecayingExp& d) -> cplx { return t < 0.0 ? 0.0 : std::sqrt(d.beta) * std::exp(-0.5 * d.beta * t); },
          [t](const RisingExp& r) -> cplx { return t > 0.0 ? 0.0 : -std::sqrt(r.beta) * std::exp(0.5 * r.beta * t); },
          [t](const GaussianPulse& g) -> cplx {
            const double w2 = g.bandwidth * g.bandwidth;
            const double dt = t - g.peak_time;
            return std::pow(w2 / (2.0 * kPi), 0.25) * std::exp(-0.25 * w2 * dt * dt);
          },
          [t](const SampledPulse& s) -> cplx {
            if (s.values.empty()) return 0.0;
            const double x = (t - s.grid.t0) / s.grid.dt;
            if (x < 0.0 || x > static_cast<double>(s.values.size() - 1)) return 0.0;
            const auto j = static_cast<std::size_t>(std::floor(x));
            if (j + 1 >= s.values.size()) return s.values.back();
            const double w = x - static_cast<double>(j);
            return (1.0 - w) * s.values[j] + w * s.values[j + 1];
          },
      },
      repr_);
}

cplx eval_time(const PulseShape& p, double t) { return p(t); }

cplx eval_spectrum(const PulseShape& p, double omega) {
  return std::visit(
      overloaded{
          [omega](const DecayingExp& d) -> cplx {
            return kInvSqrt2Pi * std::sqrt(d.beta) / cplx(0.5 * d.beta, omega);
          },
          [omega](const RisingExp& r) -> cplx {
            return -kInvSqrt2Pi * std::sqrt(r.beta) / cplx(0.5 * r.beta, -omega);
          },
          [omega](const GaussianPulse& g) -> cplx {
            // (2pi)^(-1/2) * (W^2/2pi)^(1/4) * sqrt(pi / a) * exp(-w^2 / 4a), a = W^2 / 4.
            const double w = g.bandwidth;
            const double amp = kInvSqrt2Pi * std::pow(w * w / (2.0 * kPi), 0.25) * 2.0 * std::sqrt(kPi) / w;
            return amp * std::exp(-omega * omega / (w * w)) * std::exp(cplx(0.0, -omega * g.peak_time));
          },
          [](const SampledPulse&) -> cplx {
            throw UnsupportedError("eval_spectrum: sampled pulses have no closed form; use fft_spectrum");
          },
      },
      p.repr());
}

double trapezoid_energy(const std::vector<cplx>& values, double dt) {
  if (values.size() < 2) return 0.0;
  double acc = 0.0;
  for (const cplx& v : values) acc += std::norm(v);
  acc -= 0.5 * (std::norm(values.front()) + std::norm(values.back()));
  return acc * dt;
}

double riemann_energy(const std::vector<cplx>& values, double d) {
  double acc = 0.0;
  for (const cplx& v : values) acc += std::norm(v);
  return acc * d;
}

double norm_l2(const PulseShape& p) {
  if (const auto* s = p.as_sampled()) return trapezoid_energy(s->values, s->grid.dt);
  return 1.0;
}

std::vector<cplx> sample(const PulseShape& p, const TimeGrid& grid) {
  if (const auto* sp = p.as_sampled()) {
    if (sp->grid.size == grid.size && sp->grid.t0 == grid.t0 && sp->grid.dt == grid.dt) return sp->values;
  }
  std::vector<cplx> out(grid.size);
  const double jump_tol = 1e-9 * grid.dt;
  for (std::size_t j = 0; j < grid.size; ++j) {
    const double t = grid.at(j);
    if (p.has_jump() && std::abs(t) <= jump_tol) {
      // One limit is the closed-form value at 0, the other is 0.
      out[j] = 0.5 * p(0.0);
    } else {
      out[j] = p(t);
    }
  }
  return out;
}

TimeGrid default_grid(const PulseShape& p, double fastest_rate, double slowest_decay) {
  require_analytic(p, "default_grid");
  const double rate = std::max(p.rate(), fastest_rate);
  double dt = 0.01 / rate;
  if (p.has_jump()) dt = std::min(dt, 2e-4 / p.rate());

  auto [start, end] = p.support(1e-10);
  const double span = end - start;
  start -= 0.05 * span;
  end += 0.05 * span;
  if (slowest_decay > 0.0) end += 30.0 / slowest_decay;

  const auto needed = static_cast<std::size_t>(std::ceil((end - start) / dt)) + 1;
  TimeGrid g;
  g.t0 = start;
  g.dt = dt;
  g.size = std::bit_ceil(needed);
  // t = 0 is a grid point.
  if (p.has_jump()) g.t0 = std::floor(start / dt) * dt;
  return g;
}

double energy_coverage(const PulseShape& p, const TimeGrid& grid) {
  if (!p.analytic()) return 1.0;
  return p.energy_between(grid.t0, grid.back());
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(size);
  for (std::size_t j = 0; j < size; ++j) out[j] = at(j);
  return out;
}

}  // namespace photonflow
