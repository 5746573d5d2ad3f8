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

#include <benchmark/benchmark.h>

#include <random>

#include "photonflow/feedback.hpp"
#include "photonflow/filter.hpp"
#include "photonflow/hilbert.hpp"
#include "photonflow/linear_response.hpp"

namespace {

using namespace photonflow;

void BM_FilterStepReduced(benchmark::State& state) {
  const SLHModel model = cavity_model(0.0, 1.0, static_cast<int>(state.range(0)));
  FilterState s = FilterState::initial(basis_state(model.dim(), 0), 0.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> dw(0.0, 0.03);
  for (auto _ : state) {
    s = filter_step_reduced(model, 0.5, s, dw(rng), 1e-3);
    benchmark::DoNotOptimize(s.rho11.data());
  }
}
BENCHMARK(BM_FilterStepReduced)->Arg(1)->Arg(4)->Arg(10);

void BM_FilterStepImperfect(benchmark::State& state) {
  const SLHModel model = atom_model(0.0, 1.0);
  const HomodyneConfig cfg{std::sqrt(0.5) * cplx(1.0), std::sqrt(0.5) * cplx(1.0)};
  FilterState s = FilterState::initial(basis_state(2, 0), 0.0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> dw(0.0, 0.03);
  for (auto _ : state) {
    s = filter_step(model, cfg, 0.5, s, dw(rng), dw(rng), 1e-3);
    benchmark::DoNotOptimize(s.rho11.data());
  }
}
BENCHMARK(BM_FilterStepImperfect);

void BM_TransferFunction(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  const Eigen::Index n = state.range(0);
  LinearSystemParams p;
  p.omega_minus = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p.omega_minus(i, i) = g(rng);
  p.omega_plus = CMatrix::Zero(n, n);
  p.c_minus = CMatrix::Identity(n, n);
  p.c_plus = CMatrix::Zero(n, n);
  const LinearSystemModel model = build_state_space(p);
  const FrequencyGrid grid = FrequencyGrid::symmetric(20.0, 1025);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_function(model, grid));
}
BENCHMARK(BM_TransferFunction)->Arg(1)->Arg(4);

void BM_CavityShape(benchmark::State& state) {
  const PulseShape xi = PulseShape::gaussian(2.92, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(cavity_shape(0.0, 1.0, xi));
}
BENCHMARK(BM_CavityShape)->Unit(benchmark::kMillisecond);

void BM_ClosedLoopTransfer(benchmark::State& state) {
  const FrequencyGrid grid = FrequencyGrid::symmetric(20.0, 1025);
  const TransferFunction plant = transfer_function(cavity_linear_model(0.0, 1.0), grid);
  const TransferFunction id = TransferFunction::identity(grid, 1);
  const Beamsplitter bs = Beamsplitter::from_transmissivity(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(compose_feedback(plant, id, bs));
}
BENCHMARK(BM_ClosedLoopTransfer);

void BM_MasterEvolve(benchmark::State& state) {
  const SLHModel atom = atom_model(0.0, 1.0);
  const PulseShape xi = PulseShape::gaussian(1.46, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(master_evolve(atom, xi, basis_state(2, 0), filter_start_time(xi), 8.0, 1e-3, 100));
  }
}
BENCHMARK(BM_MasterEvolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
