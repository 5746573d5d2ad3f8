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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "photonflow/errors.hpp"
#include "photonflow/grid.hpp"
#include "photonflow/pulse.hpp"

namespace photonflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalized DFT, sign -1 (forward) or +1 (backward).
void dft(std::vector<cplx>& data, int sign) {
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Signed DFT frequency index held at ascending position i.
long long signed_bin(std::size_t i, std::size_t n) {
  return static_cast<long long>(i) - static_cast<long long>(n / 2);
}

std::size_t dft_slot(long long k, std::size_t n) {
  const auto nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> omega) : omega_(std::move(omega)) {
  if (!std::is_sorted(omega_.begin(), omega_.end())) {
    throw ParameterError("FrequencyGrid: points must be ascending");
  }
  mirror_.assign(omega_.size(), npos);
  complete_mirrors_ = true;
  double scale = 0.0;
  for (double w : omega_) scale = std::max(scale, std::abs(w));
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    const double target = -omega_[i];
    auto it = std::lower_bound(omega_.begin(), omega_.end(), target - tol);
    if (it != omega_.end() && std::abs(*it - target) <= tol) {
      mirror_[i] = static_cast<std::size_t>(it - omega_.begin());
    } else {
      complete_mirrors_ = false;
    }
  }
}

FrequencyGrid FrequencyGrid::fft(std::size_t n, double dt) {
  if (n == 0 || !(dt > 0.0)) throw ParameterError("FrequencyGrid::fft: need n > 0 and dt > 0");
  FrequencyGrid g;
  const double dw = kTwoPi / (static_cast<double>(n) * dt);
  g.omega_.resize(n);
  g.mirror_.resize(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = signed_bin(i, n);
    g.omega_[i] = static_cast<double>(k) * dw;
    // -k, taken modulo n and mapped back to the ascending layout.
    long long mk = -k;
    if (mk >= static_cast<long long>(n - half)) mk -= static_cast<long long>(n);
    g.mirror_[i] = static_cast<std::size_t>(mk + static_cast<long long>(half));
  }
  g.complete_mirrors_ = true;
  return g;
}

FrequencyGrid FrequencyGrid::symmetric(double omega_max, std::size_t n) {
  if (n < 2 || !(omega_max > 0.0)) throw ParameterError("FrequencyGrid::symmetric: need n >= 2, omega_max > 0");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = -omega_max + 2.0 * omega_max * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  // Exact antisymmetry: omega[mirror(i)] == -omega[i] bit for bit.
  for (std::size_t i = 0; i < n / 2; ++i) w[n - 1 - i] = -w[i];
  if (n % 2 == 1) w[n / 2] = 0.0;
  return FrequencyGrid(std::move(w));
}

bool FrequencyGrid::same_as(const FrequencyGrid& other, double tol) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(omega_[i] - other.omega_[i]) > tol * std::max(1.0, std::abs(omega_[i]))) return false;
  }
  return true;
}

std::vector<cplx> forward_transform(const std::vector<cplx>& samples, const TimeGrid& grid) {
  if (samples.size() != grid.size) throw DimensionError("forward_transform: sample count does not match grid");
  const std::size_t n = grid.size;
  std::vector<cplx> raw = samples;
  dft(raw, FFTW_FORWARD);
  const double dw = kTwoPi / (static_cast<double>(n) * grid.dt);
  const double scale = grid.dt / std::sqrt(kTwoPi);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = signed_bin(i, n);
    const double w = static_cast<double>(k) * dw;
    out[i] = scale * std::polar(1.0, -w * grid.t0) * raw[dft_slot(k, n)];
  }
  return out;
}

std::vector<cplx> inverse_transform(const std::vector<cplx>& spectrum, const TimeGrid& grid) {
  if (spectrum.size() != grid.size) throw DimensionError("inverse_transform: value count does not match grid");
  const std::size_t n = grid.size;
  const double dw = kTwoPi / (static_cast<double>(n) * grid.dt);
  std::vector<cplx> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = signed_bin(i, n);
    const double w = static_cast<double>(k) * dw;
    raw[dft_slot(k, n)] = std::polar(1.0, w * grid.t0) * spectrum[i];
  }
  dft(raw, FFTW_BACKWARD);
  const double scale = dw / std::sqrt(kTwoPi);
  for (cplx& v : raw) v *= scale;
  return raw;
}

SpectrumView fft_spectrum(const PulseShape& p, const TimeGrid& grid) {
  if (grid.size < 2) throw ParameterError("fft_spectrum: grid needs at least two points");
  const double coverage = energy_coverage(p, grid);
  if (coverage < kMinCoverage) {
    std::ostringstream os;
    os << "fft_spectrum: grid [" << grid.t0 << ", " << grid.back() << "] covers only " << coverage * 100.0
       << "% of the pulse energy (need " << kMinCoverage * 100.0 << "%)";
    throw GridError(os.str(), coverage);
  }
  SpectrumView s;
  s.time_grid = grid;
  s.grid = FrequencyGrid::fft(grid.size, grid.dt);
  s.values = forward_transform(sample(p, grid), grid);
  s.d_omega = kTwoPi / (static_cast<double>(grid.size) * grid.dt);
  s.omega_max = std::abs(s.grid[0]);
  return s;
}

SpectrumView fft_spectrum(const PulseShape& p) {
  if (const auto* sp = p.as_sampled()) return fft_spectrum(p, sp->grid);
  return fft_spectrum(p, default_grid(p));
}

PulseShape ifft_pulse(const SpectrumView& s) {
  return PulseShape::sampled(s.time_grid, inverse_transform(s.values, s.time_grid));
}

}  // namespace photonflow
