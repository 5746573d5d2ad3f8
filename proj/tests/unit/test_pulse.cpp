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
#include <numbers>
#include <sstream>

#include "photonflow/errors.hpp"
#include "photonflow/pulse.hpp"
#include "photonflow/serialize.hpp"

namespace photonflow {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(EvalTime, SpecExamples) {
  EXPECT_DOUBLE_EQ(eval_time(PulseShape::decaying_exp(2.0), 0.0).real(), std::sqrt(2.0));
  EXPECT_EQ(eval_time(PulseShape::rising_exp(2.0), 0.5), cplx(0.0));
  const double w = 2.92;
  EXPECT_DOUBLE_EQ(eval_time(PulseShape::gaussian(w, 0.0), 0.0).real(), std::pow(w * w / (2 * kPi), 0.25));
}

TEST(EvalTime, SupportAndSign) {
  EXPECT_EQ(eval_time(PulseShape::decaying_exp(1.0), -0.1), cplx(0.0));
  EXPECT_LT(eval_time(PulseShape::rising_exp(1.0), -0.1).real(), 0.0);
}

TEST(EvalTime, SampledInterpolatesAndVanishesOutside) {
  const PulseShape p = PulseShape::sampled({0.0, 1.0, 3}, {cplx(0.0), cplx(2.0, 2.0), cplx(4.0)});
  EXPECT_EQ(eval_time(p, 0.5), cplx(1.0, 1.0));
  EXPECT_EQ(eval_time(p, 1.5), cplx(3.0, 1.0));
  EXPECT_EQ(eval_time(p, -0.5), cplx(0.0));
  EXPECT_EQ(eval_time(p, 2.5), cplx(0.0));
}

TEST(EvalTime, TimeReversal) {
  const PulseShape r = PulseShape::rising_exp(1.3), d = PulseShape::decaying_exp(1.3);
  for (double t = 0.05; t < 8.0; t += 0.37) EXPECT_NEAR(std::abs(r(-t)), std::abs(d(t)), 1e-15);
}

TEST(Factories, RejectNonPositiveRates) {
  EXPECT_THROW(PulseShape::decaying_exp(0.0), ParameterError);
  EXPECT_THROW(PulseShape::rising_exp(-1.0), ParameterError);
  EXPECT_THROW(PulseShape::gaussian(0.0, 1.0), ParameterError);
}

TEST(EvalSpectrum, SpecExamples) {
  EXPECT_NEAR(std::norm(eval_spectrum(PulseShape::decaying_exp(2.0), 0.0)), 1.0 / kPi, 1e-15);
  const double w = 2.92;
  EXPECT_NEAR(std::norm(eval_spectrum(PulseShape::gaussian(w, 0.0), 0.0)), 1.0 / (std::sqrt(2 * kPi) * w / 2), 1e-14);
}

TEST(EvalSpectrum, LorentzianFwhm) {
  for (double beta : {0.5, 1.0, 2.0, 7.0}) {
    for (const PulseShape& p : {PulseShape::decaying_exp(beta), PulseShape::rising_exp(beta)}) {
      const double peak = std::norm(eval_spectrum(p, 0.0));
      EXPECT_NEAR(std::norm(eval_spectrum(p, beta / 2)), peak / 2, 1e-14 * peak);
      EXPECT_NEAR(std::norm(eval_spectrum(p, -beta / 2)), peak / 2, 1e-14 * peak);
    }
  }
}

TEST(EvalSpectrum, MatchesLorentzianAndGaussianLineshapes) {
  const double beta = 1.7, w = 2.2;
  for (double om = -6.0; om <= 6.0; om += 0.25) {
    EXPECT_NEAR(std::norm(eval_spectrum(PulseShape::decaying_exp(beta), om)),
                beta / (2 * kPi * (om * om + beta * beta / 4)), 1e-14);
    const double s = w / 2;
    EXPECT_NEAR(std::norm(eval_spectrum(PulseShape::gaussian(w, 1.5), om)),
                std::exp(-om * om / (2 * s * s)) / (std::sqrt(2 * kPi) * s), 1e-14);
  }
}

TEST(EvalSpectrum, SampledIsUnsupported) {
  const PulseShape p = PulseShape::sampled({0.0, 1.0, 2}, {cplx(1.0), cplx(1.0)});
  EXPECT_THROW(eval_spectrum(p, 0.0), UnsupportedError);
}

TEST(FftSpectrum, GaussianMatchesClosedForm) {
  const PulseShape p = PulseShape::gaussian(2.92, 0.0);
  const std::size_t n = 1u << 14;
  const TimeGrid grid{-15.0, 30.0 / n, n};
  const SpectrumView s = fft_spectrum(p, grid);
  double err = 0.0;
  for (std::size_t i = n / 10; i < n - n / 10; ++i) err = std::max(err, std::abs(s.values[i] - eval_spectrum(p, s.grid[i])));
  EXPECT_LT(err, 1e-4);
}

TEST(FftSpectrum, ParsevalUnitaryConvention) {
  for (const PulseShape& p : {PulseShape::gaussian(1.46, 3.0), PulseShape::decaying_exp(2.0)}) {
    const SpectrumView s = fft_spectrum(p);
    EXPECT_NEAR(riemann_energy(s.values, s.d_omega), 1.0, 1e-4);
  }
}

TEST(FftSpectrum, RoundTripDecayingExp) {
  const PulseShape p = PulseShape::decaying_exp(2.0);
  const SpectrumView s = fft_spectrum(p);
  const PulseShape back = ifft_pulse(s);
  const auto& v = back.as_sampled()->values;
  const TimeGrid& g = s.time_grid;
  double smooth = 0.0, jump = 0.0;
  for (std::size_t j = 0; j < g.size; ++j) {
    const double t = g.at(j);
    const bool at_jump = std::abs(t) < 0.5 * g.dt;
    double& worst = at_jump ? jump : smooth;
    worst = std::max(worst, std::abs(v[j] - (at_jump ? 0.5 * p(0.0) : p(t))));
  }
  EXPECT_LT(smooth, 1e-6);
  EXPECT_LT(jump, 5e-2);
}

TEST(FftSpectrum, DiscreteImpulseHasFlatMagnitude) {
  const std::size_t n = 256;
  std::vector<cplx> v(n, 0.0);
  v[n / 2] = 1.0;
  const PulseShape p = PulseShape::sampled({-1.28, 0.01, n}, v);
  const SpectrumView s = fft_spectrum(p, p.as_sampled()->grid);
  for (const cplx& x : s.values) EXPECT_NEAR(std::abs(x), std::abs(s.values[0]), 1e-14);
}

TEST(FftSpectrum, CoverageFailureReportsFraction) {
  const PulseShape p = PulseShape::gaussian(1.0, 0.0);
  try {
    fft_spectrum(p, TimeGrid{-1.0, 0.01, 256});
    FAIL() << "expected GridError";
  } catch (const GridError& e) {
    EXPECT_LT(e.coverage(), kMinCoverage);
    EXPECT_GT(e.coverage(), 0.5);
  }
}

TEST(NormL2, AnalyticAndSampled) {
  EXPECT_EQ(norm_l2(PulseShape::decaying_exp(3.0)), 1.0);
  EXPECT_EQ(norm_l2(PulseShape::gaussian(0.7, -2.0)), 1.0);
  const PulseShape g = PulseShape::gaussian(2.0, 0.0);
  const TimeGrid grid{-10.0, 0.005, 4001};
  EXPECT_NEAR(norm_l2(PulseShape::sampled(grid, sample(g, grid))), 1.0, 1e-6);
}

TEST(Sample, JumpTakesMeanOfLimits) {
  const PulseShape p = PulseShape::decaying_exp(4.0);
  const std::vector<cplx> v = sample(p, {-0.1, 0.05, 5});
  EXPECT_EQ(v[1], cplx(0.0));
  EXPECT_DOUBLE_EQ(v[2].real(), 1.0);
}

TEST(DefaultGrid, CoversEnergyAndResolvesRates) {
  for (const PulseShape& p : {PulseShape::decaying_exp(2.0), PulseShape::rising_exp(1.0), PulseShape::gaussian(2.92, 0.0)}) {
    const TimeGrid g = default_grid(p, 1.0, 0.5);
    EXPECT_GE(energy_coverage(p, g), kMinCoverage) << p.kind_name();
    EXPECT_LE(p.rate() * g.dt, 0.01 + 1e-15) << p.kind_name();
    EXPECT_EQ(g.size & (g.size - 1), 0u) << p.kind_name();
  }
}

TEST(Serialize, CsvColumnsAndRoundTrip) {
  const TimeGrid grid{-1.0, 0.25, 9};
  const PulseShape g = PulseShape::gaussian(2.0, 0.0);
  const PulseShape p = PulseShape::sampled(grid, sample(g, grid));
  const std::string text = pulse_table(p).str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,re,im");
  std::istringstream in(text);
  const PulseShape back = read_pulse_csv(in);
  ASSERT_EQ(back.as_sampled()->values.size(), 9u);
  for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(back.as_sampled()->values[j], p.as_sampled()->values[j]);
}

TEST(Serialize, JsonRoundTrip) {
  for (const PulseShape& p : {PulseShape::decaying_exp(2.0), PulseShape::gaussian(1.46, 3.0)}) {
    const PulseShape back = pulse_from_json(pulse_to_json(p));
    EXPECT_EQ(back.kind(), p.kind());
    EXPECT_EQ(back(0.7), p(0.7));
  }
  const TimeGrid grid{0.0, 0.5, 3};
  const PulseShape s = PulseShape::sampled(grid, {cplx(1, 2), cplx(3, 4), cplx(5, 6)});
  EXPECT_EQ(pulse_from_json(pulse_to_json(s)).as_sampled()->values, s.as_sampled()->values);
}

TEST(Serialize, SeventeenDigits) {
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace photonflow
