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

#include <optional>
#include <vector>

#include "photonflow/doubled.hpp"
#include "photonflow/grid.hpp"
#include "photonflow/linear_model.hpp"
#include "photonflow/pulse.hpp"

namespace photonflow {

/// g_G(t) = delta(t) I - C exp(A t) C^flat for t >= 0, zero before. The delta
/// term is carried as a flag; `smooth` holds the remainder.
struct ImpulseResponse {
  bool has_delta = false;
  DoubledUpMatrix smooth;
};

ImpulseResponse impulse_response(const LinearSystemModel& model, double t);

/// Frequency response Xi_G[i w] = I - C (i w I - A)^{-1} C^flat on a grid.
///
/// The full 2m x 2m matrix is stored per point. Its upper blocks are
/// Xi_G-[i w] and Xi_G+[i w]; its lower blocks are the conjugates of the
/// upper blocks at -w, so a single grid point is not doubled-up on its own.
class TransferFunction {
 public:
  TransferFunction(FrequencyGrid grid, std::vector<CMatrix> full, bool passive);
  static TransferFunction identity(FrequencyGrid grid, Eigen::Index channels);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return full_.size(); }
  Eigen::Index channels() const noexcept { return channels_; }
  bool passive() const noexcept { return passive_; }

  const CMatrix& full(std::size_t i) const { return full_[i]; }
  CMatrix minus(std::size_t i) const { return full_[i].topLeftCorner(channels_, channels_); }
  CMatrix plus(std::size_t i) const { return full_[i].topRightCorner(channels_, channels_); }
  /// Scalar Xi_G-[i w_i] for single-channel systems.
  cplx scalar_minus(std::size_t i) const { return full_[i](0, 0); }

  /// max over the grid of max |sigma(Xi_G-) - 1| over singular values.
  double all_pass_deviation() const;
  /// max over the grid of the largest |entry| of Xi_G+.
  double max_plus_magnitude() const;

 private:
  FrequencyGrid grid_;
  std::vector<CMatrix> full_;
  Eigen::Index channels_ = 0;
  bool passive_ = false;
};

inline constexpr double kAllPassTol = 1e-8;

/// Requires a Hurwitz drift (StabilityError otherwise) unless C = 0, in which
/// case the map is the identity. Passive results are checked all-pass.
TransferFunction transfer_function(const LinearSystemModel& model, const FrequencyGrid& grid);

/// R[i w] per grid point, 2m x 2m.
struct CovarianceSpectrum {
  FrequencyGrid grid;
  std::vector<CMatrix> values;

  /// [[I, 0], [0, 0]] at every point.
  static CovarianceSpectrum vacuum(const FrequencyGrid& grid, Eigen::Index channels);
  /// Xi R Xi^dagger.
  CovarianceSpectrum transformed(const TransferFunction& xi) const;
  double max_deviation(const CovarianceSpectrum& other) const;
};

/// Photon-Gaussian field state: pulse matrix Delta(xi-, xi+) sampled on a
/// mirror-complete frequency grid plus the Gaussian covariance R.
class PhotonGaussianState {
 public:
  PhotonGaussianState(FrequencyGrid grid, std::vector<CMatrix> xi_minus, std::vector<CMatrix> xi_plus,
                      CovarianceSpectrum covariance);

  /// One photon per channel: xi- = diag(spectra), xi+ = 0, vacuum covariance.
  static PhotonGaussianState single_photons(const FrequencyGrid& grid, const std::vector<std::vector<cplx>>& spectra);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  Eigen::Index channels() const noexcept { return channels_; }
  const CMatrix& xi_minus(std::size_t i) const { return xi_minus_[i]; }
  const CMatrix& xi_plus(std::size_t i) const { return xi_plus_[i]; }
  const CovarianceSpectrum& covariance() const noexcept { return covariance_; }

  /// [[xi-(w), xi+(w)], [conj xi+(-w), conj xi-(-w)]].
  CMatrix xi_full(std::size_t i) const;

  /// sum over entries of int (|xi-|^2 - |xi+|^2) dw (trapezoid on the grid).
  double normalization() const;

 private:
  FrequencyGrid grid_;
  std::vector<CMatrix> xi_minus_;
  std::vector<CMatrix> xi_plus_;
  CovarianceSpectrum covariance_;
  Eigen::Index channels_ = 0;
};

PhotonGaussianState propagate_photon_gaussian(const LinearSystemModel& model, const PhotonGaussianState& input);

/// Steady-state output of a single-channel system driven by one photon.
struct PhotonPropagation {
  TimeGrid time_grid;
  FrequencyGrid grid;
  std::vector<cplx> input_spectrum;
  std::vector<cplx> minus_spectrum;
  std::vector<cplx> plus_spectrum;
  PulseShape input = PulseShape::decaying_exp(1.0);
  PulseShape minus_pulse = PulseShape::decaying_exp(1.0);
  PulseShape plus_pulse = PulseShape::decaying_exp(1.0);
  CovarianceSpectrum input_covariance;
  CovarianceSpectrum covariance;
};

/// Picks a grid from the pulse and the model's rates unless `grid` is given.
PhotonPropagation propagate_photon(const LinearSystemModel& model, const PulseShape& input,
                                   std::optional<TimeGrid> grid = std::nullopt);

/// Grid adequate for driving `model` with `pulse`.
TimeGrid propagation_grid(const LinearSystemModel& model, const PulseShape& pulse);

}  // namespace photonflow
