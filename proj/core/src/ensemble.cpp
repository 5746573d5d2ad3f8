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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "photonflow/errors.hpp"
#include "photonflow/filter.hpp"

namespace photonflow {

std::size_t ensemble_threads(std::size_t tasks) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("PHOTONFLOW_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v > 0) n = std::min(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

EnsembleSummary run_ensemble(const SLHModel& model, const HomodyneConfig& cfg, const PulseShape& pulse,
                             const CVector& eta, const TrajectoryOptions& opts, std::size_t n_traj,
                             const Op& observable) {
  if (n_traj == 0) throw ParameterError("run_ensemble: n_traj must be positive");
  if (observable.rows() != model.dim() || observable.cols() != model.dim()) {
    throw DimensionError("run_ensemble: observable dimension mismatch");
  }
  cfg.validate();

  std::vector<std::vector<double>> curves(n_traj);
  std::vector<double> times;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_traj; i = next++) {
      try {
        TrajectoryOptions o = opts;
        o.seed = opts.seed + i;
        const Trajectory tr = simulate_trajectory(model, cfg, pulse, eta, o);
        std::vector<double> c(tr.path.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = expectation(tr.path[j].rho11, observable).real();
        curves[i] = std::move(c);
        if (i == 0) {
          times.resize(tr.path.size());
          for (std::size_t j = 0; j < times.size(); ++j) times[j] = tr.path[j].t;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_traj;
      }
    }
  };

  const std::size_t workers = ensemble_threads(n_traj);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  EnsembleSummary out;
  out.n_traj = n_traj;
  out.times = times;
  const std::size_t len = times.size();
  out.mean.assign(len, 0.0);
  out.stderr_.assign(len, 0.0);
  for (const auto& c : curves) {
    for (std::size_t j = 0; j < len; ++j) out.mean[j] += c[j];
  }
  for (double& m : out.mean) m /= static_cast<double>(n_traj);
  if (n_traj > 1) {
    for (const auto& c : curves) {
      for (std::size_t j = 0; j < len; ++j) out.stderr_[j] += (c[j] - out.mean[j]) * (c[j] - out.mean[j]);
    }
    for (double& s : out.stderr_) s = std::sqrt(s / static_cast<double>(n_traj - 1) / static_cast<double>(n_traj));
  }
  return out;
}

}  // namespace photonflow
