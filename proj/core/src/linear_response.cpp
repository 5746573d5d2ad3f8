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

#include "photonflow/linear_response.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix vacuum_block(Eigen::Index m) {
  CMatrix r = CMatrix::Zero(2 * m, 2 * m);
  r.topLeftCorner(m, m).setIdentity();
  return r;
}

}  // namespace

ImpulseResponse impulse_response(const LinearSystemModel& model, double t) {
  const Eigen::Index m = model.m();
  if (t < 0.0) return {false, DoubledUpMatrix::zero(m, m)};
  const CMatrix c = model.output().full();
  const CMatrix a = model.drift().full();
  const CMatrix smooth = -(c * (a * t).exp() * flat(c));
  return {true, DoubledUpMatrix::from_full(smooth, 1e-9 * std::max(1.0, max_abs(smooth)))};
}

TransferFunction::TransferFunction(FrequencyGrid grid, std::vector<CMatrix> full, bool passive)
    : grid_(std::move(grid)), full_(std::move(full)), passive_(passive) {
  if (full_.size() != grid_.size()) throw DimensionError("TransferFunction: one matrix per grid point required");
  if (!full_.empty()) {
    if (full_[0].rows() % 2 != 0 || full_[0].rows() != full_[0].cols()) {
      throw DimensionError("TransferFunction: values must be square with even dimension");
    }
    channels_ = full_[0].rows() / 2;
    for (const auto& v : full_) {
      if (v.rows() != 2 * channels_ || v.cols() != 2 * channels_) {
        throw DimensionError("TransferFunction: inconsistent channel count across grid");
      }
    }
  }
}

TransferFunction TransferFunction::identity(FrequencyGrid grid, Eigen::Index channels) {
  std::vector<CMatrix> values(grid.size(), CMatrix::Identity(2 * channels, 2 * channels));
  TransferFunction tf(std::move(grid), std::move(values), true);
  tf.channels_ = channels;
  return tf;
}

double TransferFunction::all_pass_deviation() const {
  double dev = 0.0;
  for (std::size_t i = 0; i < full_.size(); ++i) {
    if (channels_ == 1) {
      dev = std::max(dev, std::abs(std::abs(full_[i](0, 0)) - 1.0));
      continue;
    }
    Eigen::JacobiSVD<CMatrix> svd(minus(i));
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      dev = std::max(dev, std::abs(svd.singularValues()(k) - 1.0));
    }
  }
  return dev;
}

double TransferFunction::max_plus_magnitude() const {
  double mag = 0.0;
  for (std::size_t i = 0; i < full_.size(); ++i) mag = std::max(mag, max_abs(plus(i)));
  return mag;
}

TransferFunction transfer_function(const LinearSystemModel& model, const FrequencyGrid& grid) {
  const Eigen::Index m = model.m();
  if (model.decoupled()) return TransferFunction::identity(grid, m);
  model.require_hurwitz();

  const CMatrix a = model.drift().full();
  const CMatrix c = model.output().full();
  const CMatrix c_flat = flat(c);
  const Eigen::Index dim = a.rows();
  const CMatrix eye_m = CMatrix::Identity(2 * m, 2 * m);

  std::vector<CMatrix> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CMatrix resolvent = kI * grid[i] * CMatrix::Identity(dim, dim) - a;
    values[i] = eye_m - c * resolvent.partialPivLu().solve(c_flat);
  }
  TransferFunction tf(grid, std::move(values), model.passive());

  if (model.passive()) {
    const double plus = tf.max_plus_magnitude();
    const double dev = tf.all_pass_deviation();
    if (plus > kAllPassTol || dev > kAllPassTol) {
      std::ostringstream os;
      os << "transfer_function: passive model lost all-pass structure (|Xi+| " << plus << ", modulus deviation "
         << dev << ")";
      throw ConsistencyError(os.str());
    }
  }
  return tf;
}

CovarianceSpectrum CovarianceSpectrum::vacuum(const FrequencyGrid& grid, Eigen::Index channels) {
  return {grid, std::vector<CMatrix>(grid.size(), vacuum_block(channels))};
}

CovarianceSpectrum CovarianceSpectrum::transformed(const TransferFunction& xi) const {
  if (!grid.same_as(xi.grid())) throw DimensionError("covariance transform: grid mismatch");
  CovarianceSpectrum out{grid, std::vector<CMatrix>(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].rows() != xi.full(i).cols()) throw DimensionError("covariance transform: channel mismatch");
    out.values[i] = xi.full(i) * values[i] * xi.full(i).adjoint();
  }
  return out;
}

double CovarianceSpectrum::max_deviation(const CovarianceSpectrum& other) const {
  if (values.size() != other.values.size()) throw DimensionError("covariance comparison: size mismatch");
  double dev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) dev = std::max(dev, max_abs(values[i] - other.values[i]));
  return dev;
}

PhotonGaussianState::PhotonGaussianState(FrequencyGrid grid, std::vector<CMatrix> xi_minus,
                                         std::vector<CMatrix> xi_plus, CovarianceSpectrum covariance)
    : grid_(std::move(grid)),
      xi_minus_(std::move(xi_minus)),
      xi_plus_(std::move(xi_plus)),
      covariance_(std::move(covariance)) {
  const std::size_t n = grid_.size();
  if (xi_minus_.size() != n || xi_plus_.size() != n || covariance_.values.size() != n) {
    throw DimensionError("PhotonGaussianState: every field needs one value per grid point");
  }
  if (!grid_.has_mirrors()) throw ParameterError("PhotonGaussianState: frequency grid must be closed under w -> -w");
  channels_ = n == 0 ? 0 : xi_minus_[0].rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (xi_minus_[i].rows() != channels_ || xi_minus_[i].cols() != channels_ || xi_plus_[i].rows() != channels_ ||
        xi_plus_[i].cols() != channels_ || covariance_.values[i].rows() != 2 * channels_ ||
        covariance_.values[i].cols() != 2 * channels_) {
      throw DimensionError("PhotonGaussianState: inconsistent channel dimensions at grid point " + std::to_string(i));
    }
  }
}

PhotonGaussianState PhotonGaussianState::single_photons(const FrequencyGrid& grid,
                                                        const std::vector<std::vector<cplx>>& spectra) {
  const auto m = static_cast<Eigen::Index>(spectra.size());
  std::vector<CMatrix> minus(grid.size(), CMatrix::Zero(m, m));
  std::vector<CMatrix> plus(grid.size(), CMatrix::Zero(m, m));
  for (Eigen::Index k = 0; k < m; ++k) {
    if (spectra[k].size() != grid.size()) throw DimensionError("single_photons: spectrum length does not match grid");
    for (std::size_t i = 0; i < grid.size(); ++i) minus[i](k, k) = spectra[k][i];
  }
  return {grid, std::move(minus), std::move(plus), CovarianceSpectrum::vacuum(grid, m)};
}

CMatrix PhotonGaussianState::xi_full(std::size_t i) const {
  const Eigen::Index m = channels_;
  const std::size_t j = grid_.mirror(i);
  CMatrix out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = xi_minus_[i];
  out.topRightCorner(m, m) = xi_plus_[i];
  out.bottomLeftCorner(m, m) = xi_plus_[j].conjugate();
  out.bottomRightCorner(m, m) = xi_minus_[j].conjugate();
  return out;
}

double PhotonGaussianState::normalization() const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double f0 = xi_minus_[i].squaredNorm() - xi_plus_[i].squaredNorm();
    const double f1 = xi_minus_[i + 1].squaredNorm() - xi_plus_[i + 1].squaredNorm();
    acc += 0.5 * (f0 + f1) * (grid_[i + 1] - grid_[i]);
  }
  return acc;
}

PhotonGaussianState propagate_photon_gaussian(const LinearSystemModel& model, const PhotonGaussianState& input) {
  if (input.channels() != model.m()) {
    throw DimensionError("propagate_photon_gaussian: state has " + std::to_string(input.channels()) +
                         " channels but the model has " + std::to_string(model.m()));
  }
  const TransferFunction xi = transfer_function(model, input.grid());
  const Eigen::Index m = model.m();
  const std::size_t n = input.grid().size();
  std::vector<CMatrix> minus(n), plus(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix out = xi.full(i) * input.xi_full(i);
    minus[i] = out.topLeftCorner(m, m);
    plus[i] = out.topRightCorner(m, m);
  }
  return {input.grid(), std::move(minus), std::move(plus), input.covariance().transformed(xi)};
}

TimeGrid propagation_grid(const LinearSystemModel& model, const PulseShape& pulse) {
  double fastest = 0.0;
  for (cplx l : model.drift_eigenvalues()) fastest = std::max(fastest, std::abs(l));
  const double slowest = model.decoupled() ? 0.0 : model.slowest_decay_rate();
  return default_grid(pulse, fastest, slowest);
}

PhotonPropagation propagate_photon(const LinearSystemModel& model, const PulseShape& input,
                                   std::optional<TimeGrid> grid) {
  if (model.m() != 1) throw DimensionError("propagate_photon: single-channel models only; use propagate_photon_gaussian");
  if (!model.decoupled()) model.require_hurwitz();
  const TimeGrid tg = grid ? *grid : (input.analytic() ? propagation_grid(model, input) : input.as_sampled()->grid);
  const SpectrumView spectrum = fft_spectrum(input, tg);

  const PhotonGaussianState in = PhotonGaussianState::single_photons(spectrum.grid, {spectrum.values});
  const PhotonGaussianState out = propagate_photon_gaussian(model, in);

  PhotonPropagation r;
  r.time_grid = tg;
  r.grid = spectrum.grid;
  r.input_spectrum = spectrum.values;
  r.minus_spectrum.resize(tg.size);
  r.plus_spectrum.resize(tg.size);
  for (std::size_t i = 0; i < tg.size; ++i) {
    r.minus_spectrum[i] = out.xi_minus(i)(0, 0);
    r.plus_spectrum[i] = out.xi_plus(i)(0, 0);
  }
  r.input = PulseShape::sampled(tg, sample(input, tg));
  r.minus_pulse = PulseShape::sampled(tg, inverse_transform(r.minus_spectrum, tg));
  r.plus_pulse = PulseShape::sampled(tg, inverse_transform(r.plus_spectrum, tg));
  r.input_covariance = in.covariance();
  r.covariance = out.covariance();
  return r;
}

}  // namespace photonflow
