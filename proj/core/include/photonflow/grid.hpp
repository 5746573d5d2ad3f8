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

#include <cstddef>
#include <limits>
#include <vector>

namespace photonflow {

/// Uniform time grid t_j = t0 + j * dt, j = 0 .. size-1.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t size = 0;

  double at(std::size_t j) const noexcept { return t0 + static_cast<double>(j) * dt; }
  double back() const noexcept { return size == 0 ? t0 : at(size - 1); }
  std::vector<double> times() const;
};

/// Angular-frequency sample points, sorted ascending.
///
/// `mirror(i)` is the index holding -omega[i]. For grids built from an FFT the
/// unpaired most-negative bin mirrors onto itself (periodic aliasing), which
/// keeps frequency-domain conjugate reflection consistent with the DFT.
class FrequencyGrid {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  FrequencyGrid() = default;
  /// Arbitrary ascending points; mirrors are looked up with a relative tolerance.
  explicit FrequencyGrid(std::vector<double> omega);
  /// The DFT grid for `n` samples at spacing `dt`, reordered ascending.
  static FrequencyGrid fft(std::size_t n, double dt);
  /// `n` points spaced evenly on [-omega_max, omega_max].
  static FrequencyGrid symmetric(double omega_max, std::size_t n);

  std::size_t size() const noexcept { return omega_.size(); }
  double operator[](std::size_t i) const { return omega_[i]; }
  const std::vector<double>& values() const noexcept { return omega_; }
  std::size_t mirror(std::size_t i) const { return mirror_[i]; }
  bool has_mirrors() const noexcept { return complete_mirrors_; }
  bool same_as(const FrequencyGrid& other, double tol = 1e-12) const;

 private:
  std::vector<double> omega_;
  std::vector<std::size_t> mirror_;
  bool complete_mirrors_ = false;
};

}  // namespace photonflow
