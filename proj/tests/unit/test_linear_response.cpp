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

#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "photonflow/errors.hpp"
#include "photonflow/linear_response.hpp"

namespace photonflow {
namespace {

using testing::Gen;
using testing::max_abs;

CMatrix m1(cplx v) { return CMatrix::Constant(1, 1, v); }

cplx cavity_closed_form(double w, double wc, double kappa) {
  return (kI * (w + wc) - kappa / 2) / (kI * (w + wc) + kappa / 2);
}

/// I - C (i w - A)^{-1} C^flat from the full matrices.
CMatrix dense_transfer(const LinearSystemModel& m, double w) {
  const CMatrix a = m.drift().full(), c = m.output().full();
  const CMatrix j_n = SignMatrix(m.n()).full(), j_m = SignMatrix(m.m()).full();
  const CMatrix c_flat = j_n * c.adjoint() * j_m;
  const CMatrix res = (kI * w * CMatrix::Identity(a.rows(), a.cols()) - a).inverse();
  return CMatrix::Identity(c.rows(), c.rows()) - c * res * c_flat;
}

TEST(ImpulseResponse, ZeroBeforeOrigin) {
  const ImpulseResponse g = impulse_response(cavity_linear_model(0.3, 1.0), -1.0);
  EXPECT_FALSE(g.has_delta);
  EXPECT_EQ(max_abs(g.smooth.full()), 0.0);
}

TEST(ImpulseResponse, CavityAtOrigin) {
  const ImpulseResponse g = impulse_response(cavity_linear_model(0.0, 2.0), 0.0);
  EXPECT_TRUE(g.has_delta);
  EXPECT_NEAR(std::abs(g.smooth.upper_left()(0, 0) - cplx(-2.0)), 0.0, 1e-14);
}

TEST(ImpulseResponse, CavityEnvelope) {
  const double wc = 1.3, kappa = 0.8;
  const LinearSystemModel m = cavity_linear_model(wc, kappa);
  for (double t = 0.0; t < 10.0; t += 0.7) {
    const cplx expected = -kappa * std::exp(-kappa * t / 2) * std::exp(-kI * wc * t);
    EXPECT_LT(std::abs(impulse_response(m, t).smooth.upper_left()(0, 0) - expected), 1e-12);
    EXPECT_LT(std::abs(impulse_response(m, t).smooth.upper_right()(0, 0)), 1e-12);
  }
}

TEST(TransferFunction, CavityClosedForm) {
  const double wc = 0.6, kappa = 1.5;
  const FrequencyGrid grid = FrequencyGrid::symmetric(10.0, 401);
  const TransferFunction tf = transfer_function(cavity_linear_model(wc, kappa), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LT(std::abs(tf.scalar_minus(i) - cavity_closed_form(grid[i], wc, kappa)), 1e-13);
    EXPECT_NEAR(std::abs(tf.scalar_minus(i)), 1.0, 1e-13);
  }
  EXPECT_EQ(tf.max_plus_magnitude(), 0.0);
  EXPECT_LT(tf.all_pass_deviation(), 1e-13);
}

TEST(TransferFunction, CavityAtMinusDetuning) {
  const TransferFunction tf = transfer_function(cavity_linear_model(0.6, 1.5), FrequencyGrid({-0.6}));
  EXPECT_LT(std::abs(tf.scalar_minus(0) + 1.0), 1e-15);
}

TEST(TransferFunction, NonHurwitzThrows) {
  const LinearSystemModel m = build_state_space({m1(1.0), m1(0.0), CMatrix::Zero(1, 1), m1(0.0)});
  const CMatrix w = CMatrix::Identity(2, 2);
  const LinearSystemModel coupled_unstable = build_state_space({w, CMatrix::Zero(2, 2), CMatrix(m1(1.0).replicate(1, 2)),
                                                                CMatrix::Zero(1, 2)});
  EXPECT_THROW(transfer_function(coupled_unstable, FrequencyGrid({0.0})), StabilityError);
  EXPECT_EQ(transfer_function(m, FrequencyGrid({0.0, 1.0})).full(1), CMatrix::Identity(2, 2));
}

TEST(TransferFunction, RandomPassiveModelsAreAllPass) {
  Gen g(21);
  const FrequencyGrid grid = FrequencyGrid::symmetric(30.0, 301);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LinearSystemModel m = build_state_space(g.params(g.integer(1, 4), g.integer(1, 4), true));
    if (!m.hurwitz()) continue;
    ++checked;
    const TransferFunction tf = transfer_function(m, grid);
    EXPECT_LT(tf.all_pass_deviation(), 1e-8);
    EXPECT_EQ(tf.max_plus_magnitude(), 0.0);
  }
  EXPECT_GT(checked, 80);
}

TEST(TransferFunction, MatchesDenseOracleForNonPassive) {
  Gen g(22);
  const FrequencyGrid grid = FrequencyGrid::symmetric(5.0, 21);
  for (int trial = 0; trial < 30; ++trial) {
    const LinearSystemModel m = build_state_space(g.params(g.integer(1, 3), g.integer(1, 3), false));
    if (!m.hurwitz()) continue;
    const TransferFunction tf = transfer_function(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LT(max_abs(tf.full(i) - dense_transfer(m, grid[i])), 1e-10);
  }
}

TEST(PropagatePhoton, CavityOutputSpectrum) {
  const double wc = 0.0, kappa = 1.0;
  const PulseShape xi = PulseShape::gaussian(1.46, 3.0);
  const PhotonPropagation p = propagate_photon(cavity_linear_model(wc, kappa), xi);
  for (std::size_t i = 0; i < p.grid.size(); i += 97) {
    EXPECT_LT(std::abs(p.minus_spectrum[i] - cavity_closed_form(p.grid[i], wc, kappa) * p.input_spectrum[i]), 1e-14);
    EXPECT_EQ(p.plus_spectrum[i], cplx(0.0));
  }
  EXPECT_NEAR(norm_l2(p.minus_pulse), 1.0, 1e-4);
  EXPECT_LT(p.covariance.max_deviation(p.input_covariance), 1e-15);
}

TEST(PropagatePhoton, DecoupledModelIsIdentity) {
  const LinearSystemModel m = build_state_space({m1(0.0), m1(0.0), m1(0.0), m1(0.0)});
  const PulseShape xi = PulseShape::gaussian(2.0, 0.0);
  const PhotonPropagation p = propagate_photon(m, xi);
  EXPECT_EQ(p.minus_spectrum, p.input_spectrum);
  const auto& in = p.input.as_sampled()->values;
  const auto& out = p.minus_pulse.as_sampled()->values;
  for (std::size_t j = 0; j < in.size(); ++j) EXPECT_NEAR(std::abs(out[j] - in[j]), 0.0, 1e-14);
}

TEST(PropagatePhoton, TimeDomainConvolutionOracle) {
  const double kappa = 1.0, wc = 0.4;
  const LinearSystemModel m = cavity_linear_model(wc, kappa);
  const PulseShape xi = PulseShape::gaussian(1.2, 2.0);
  const PhotonPropagation p = propagate_photon(m, xi);
  const double ds = 2e-3;
  for (double t : {0.0, 1.5, 2.0, 3.1, 5.0}) {
    cplx conv = xi(t);
    for (double s = 0.0; s < 40.0; s += ds) {
      const double wgt = s == 0.0 ? 0.5 : 1.0;
      conv += wgt * ds * impulse_response(m, s).smooth.upper_left()(0, 0) * xi(t - s);
    }
    EXPECT_LT(std::abs(p.minus_pulse(t) - conv), 1e-3) << "t = " << t;
  }
}

TEST(PropagatePhoton, RejectsMultiChannel) {
  Gen g(23);
  const LinearSystemModel m = build_state_space(g.params(2, 2, true));
  EXPECT_THROW(propagate_photon(m, PulseShape::gaussian(1.0, 0.0)), DimensionError);
}

TEST(PhotonGaussian, SinglePhotonMatchesPropagatePhoton) {
  const LinearSystemModel m = cavity_linear_model(0.2, 1.1);
  const PulseShape xi = PulseShape::gaussian(1.0, 0.0);
  const PhotonPropagation direct = propagate_photon(m, xi);
  const PhotonGaussianState in = PhotonGaussianState::single_photons(direct.grid, {direct.input_spectrum});
  EXPECT_NEAR(in.normalization(), 1.0, 1e-4);
  const PhotonGaussianState out = propagate_photon_gaussian(m, in);
  for (std::size_t i = 0; i < direct.grid.size(); ++i) EXPECT_EQ(out.xi_minus(i)(0, 0), direct.minus_spectrum[i]);
  EXPECT_NEAR(out.normalization(), 1.0, 1e-4);
}

TEST(PhotonGaussian, IdentitySystemLeavesStateUnchanged) {
  const LinearSystemModel m = build_state_space({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2),
                                                 CMatrix::Zero(2, 2)});
  const FrequencyGrid grid = FrequencyGrid::symmetric(4.0, 33);
  Gen g(24);
  std::vector<cplx> a(grid.size()), b(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    a[i] = g.complex();
    b[i] = g.complex();
  }
  const PhotonGaussianState in = PhotonGaussianState::single_photons(grid, {a, b});
  const PhotonGaussianState out = propagate_photon_gaussian(m, in);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(out.xi_minus(i), in.xi_minus(i));
    EXPECT_EQ(out.xi_plus(i), in.xi_plus(i));
  }
  EXPECT_EQ(out.covariance().max_deviation(in.covariance()), 0.0);
}

TEST(PhotonGaussian, NonPassiveModelCreatesPlusComponent) {
  const LinearSystemModel m = build_state_space({m1(0.5), m1(cplx(0.3, 0.1)), m1(1.0), m1(0.2)});
  ASSERT_TRUE(m.hurwitz());
  const FrequencyGrid grid = FrequencyGrid::symmetric(6.0, 61);
  std::vector<cplx> spectrum(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) spectrum[i] = std::exp(-grid[i] * grid[i]) * std::exp(kI * grid[i]);
  const PhotonGaussianState out = propagate_photon_gaussian(m, PhotonGaussianState::single_photons(grid, {spectrum}));
  double biggest = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CMatrix xi = dense_transfer(m, grid[i]);
    const cplx expected_plus = xi(0, 1) * std::conj(spectrum[grid.mirror(i)]);
    const cplx expected_minus = xi(0, 0) * spectrum[i];
    EXPECT_LT(std::abs(out.xi_plus(i)(0, 0) - expected_plus), 1e-12);
    EXPECT_LT(std::abs(out.xi_minus(i)(0, 0) - expected_minus), 1e-12);
    biggest = std::max(biggest, std::abs(out.xi_plus(i)(0, 0)));
  }
  EXPECT_GT(biggest, 1e-3);
  EXPECT_GT(out.covariance().max_deviation(CovarianceSpectrum::vacuum(grid, 1)), 1e-3);
}

TEST(PhotonGaussian, ChannelMismatchThrows) {
  const FrequencyGrid grid = FrequencyGrid::symmetric(1.0, 5);
  const PhotonGaussianState in = PhotonGaussianState::single_photons(grid, {std::vector<cplx>(5, 1.0)});
  Gen g(25);
  const LinearSystemModel m = build_state_space(g.params(2, 2, true));
  EXPECT_THROW(propagate_photon_gaussian(m, in), DimensionError);
}

TEST(PhotonGaussian, RequiresMirroredGrid) {
  const FrequencyGrid grid({0.0, 1.0, 2.0});
  EXPECT_THROW(PhotonGaussianState::single_photons(grid, {std::vector<cplx>(3, 1.0)}), ParameterError);
}

}  // namespace
}  // namespace photonflow
