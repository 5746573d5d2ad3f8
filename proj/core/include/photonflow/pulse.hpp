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
#include <string>
#include <variant>
#include <vector>

#include "photonflow/grid.hpp"

namespace photonflow {

using cplx = std::complex<double>;

/// sqrt(beta) exp(-beta t / 2) for t >= 0, zero before.
struct DecayingExp {
  double beta;
};

/// -sqrt(beta) exp(beta t / 2) for t <= 0, zero after.
struct RisingExp {
  double beta;
};

/// (Omega^2 / 2pi)^(1/4) exp(-Omega^2 (t - tau)^2 / 4).
struct GaussianPulse {
  double bandwidth;
  double peak_time;
};

struct SampledPulse {
  TimeGrid grid;
  std::vector<cplx> values;
};

enum class PulseKind { kDecayingExp, kRisingExp, kGaussian, kSampled };

/// Single-photon temporal wavepacket xi(t). Analytic kinds are unit-norm by
/// construction; sampled pulses keep whatever norm their samples carry.
///
/// The unitary transform xi[i w] = (2 pi)^(-1/2) int exp(-i w t) xi(t) dt is
/// used throughout, so int |xi[i w]|^2 dw = int |xi(t)|^2 dt.
class PulseShape {
 public:
  using Repr = std::variant<DecayingExp, RisingExp, GaussianPulse, SampledPulse>;

  static PulseShape decaying_exp(double beta);
  static PulseShape rising_exp(double beta);
  static PulseShape gaussian(double bandwidth, double peak_time);
  static PulseShape sampled(TimeGrid grid, std::vector<cplx> values);

  PulseKind kind() const noexcept;
  std::string kind_name() const;
  const Repr& repr() const noexcept { return repr_; }
  const SampledPulse* as_sampled() const noexcept { return std::get_if<SampledPulse>(&repr_); }

  bool analytic() const noexcept { return kind() != PulseKind::kSampled; }
  /// Exponential kinds jump at t = 0.
  bool has_jump() const noexcept;
  /// beta or Omega; for sampled pulses 1/dt.
  double rate() const noexcept;

  /// Fraction of the (unit) energy on [a, b]; analytic kinds only.
  double energy_between(double a, double b) const;
  /// Smallest [start, end] carrying 1 - `tail` of the energy; analytic kinds only.
  std::pair<double, double> support(double tail = 1e-4) const;

  cplx operator()(double t) const;

 private:
  explicit PulseShape(Repr r) : repr_(std::move(r)) {}
  Repr repr_;
};

cplx eval_time(const PulseShape& p, double t);
/// Closed-form unitary Fourier transform; UnsupportedError for sampled pulses.
cplx eval_spectrum(const PulseShape& p, double omega);
/// int |xi(t)|^2 dt; exact 1 for analytic kinds, trapezoid rule for sampled ones.
double norm_l2(const PulseShape& p);

/// Samples `p` on `grid`. At the jump of an exponential pulse the sample is the
/// mean of the left and right limits.
std::vector<cplx> sample(const PulseShape& p, const TimeGrid& grid);

/// Default sampling grid for `p` (analytic kinds).
///
/// `fastest_rate` is the largest rate of any system the pulse will drive and
/// `slowest_decay` the smallest decay rate, which sets the padding for the
/// response tail. Smooth pulses get rate * dt <= 0.01; jump pulses get
/// beta * dt <= 2e-4. Sizes are rounded up to a power of two.
TimeGrid default_grid(const PulseShape& p, double fastest_rate = 0.0, double slowest_decay = 0.0);

/// Fraction of the pulse energy inside [grid.t0, grid.back()].
double energy_coverage(const PulseShape& p, const TimeGrid& grid);

inline constexpr double kMinCoverage = 0.9999;

/// Frequency-domain view of a sampled pulse.
struct SpectrumView {
  TimeGrid time_grid;       // grid the spectrum was taken on (needed to invert)
  FrequencyGrid grid;       // ascending, FFT layout
  std::vector<cplx> values; // xi[i omega] at each grid point
  double d_omega = 0.0;
  double omega_max = 0.0;
};

/// Discrete unitary transform of `p` sampled on `grid`. Throws GridError when
/// the window holds less than kMinCoverage of the energy.
SpectrumView fft_spectrum(const PulseShape& p, const TimeGrid& grid);
SpectrumView fft_spectrum(const PulseShape& p);
/// Exact inverse of fft_spectrum on the stored time grid.
PulseShape ifft_pulse(const SpectrumView& s);

/// Raw transforms between samples on `grid` and values on FrequencyGrid::fft(grid).
std::vector<cplx> forward_transform(const std::vector<cplx>& samples, const TimeGrid& grid);
std::vector<cplx> inverse_transform(const std::vector<cplx>& spectrum, const TimeGrid& grid);

/// Trapezoid integral of |values|^2 on a uniform grid.
double trapezoid_energy(const std::vector<cplx>& values, double dt);
/// sum |values|^2 * d (rectangle rule).
double riemann_energy(const std::vector<cplx>& values, double d);

}  // namespace photonflow
