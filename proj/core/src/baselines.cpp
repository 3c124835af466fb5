// Copyright 2026 The PHIA Authors
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

#include "phia/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "phia/error.hpp"
#include "phia/rng.hpp"

namespace phia {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Time until x(t) = x cos t + v sin t next reaches zero, in (0, pi].
double time_to_wall(double x, double v) {
  if (x == 0.0) return std::numbers::pi;
  double t = std::fmod(std::atan2(v, x) + std::numbers::pi / 2, std::numbers::pi);
  if (t <= 0.0) t += std::numbers::pi;
  return t;
}

}  // namespace

void SaConfig::validate() const {
  if (sweeps < 1) throw ContractError("sweeps must be >= 1");
  schedule.validate();
}

void GahmcConfig::validate() const {
  if (!(trajectory_time > 0.0)) {
    throw ContractError("trajectory_time must be positive");
  }
  if (outer_steps < 1) throw ContractError("outer_steps must be >= 1");
  schedule.validate();
}

RunResult sa_anneal(const IsingProblem& problem, const SaConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = problem.size();
  CounterRng init_rng(config.seed, StreamPurpose::kInit);
  CounterRng order_rng(config.seed, StreamPurpose::kSweepOrder);
  CounterRng flip_rng(config.seed, StreamPurpose::kFlip);

  SpinConfig s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, init_rng.uniform() < 0.5 ? -1 : 1);
  std::vector<double> field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = local_field(problem, s, i);

  RunResult result;
  result.best_s = s;
  double current = energy(problem, s);
  double best = current;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double beta = config.schedule.beta_start;
  std::size_t accepted = 0;
  std::size_t attempted = 0;

  for (int sweep = 0; sweep < config.sweeps; ++sweep) {
    for (std::size_t k = n; k > 1; --k) {
      std::swap(order[k - 1], order[order_rng.below(k)]);
    }
    std::size_t sweep_accepted = 0;
    for (std::size_t i : order) {
      const double delta = 2.0 * s[i] * field[i];
      const double u = flip_rng.uniform();
      if (delta <= 0.0 || u < std::exp(-beta * delta)) {
        const double change = -2.0 * s[i];
        s.flip(i);
        for (const auto& nb : problem.neighbors(i)) {
          field[nb.index] += nb.weight * change;
        }
        current += delta;
        ++sweep_accepted;
        if (current < best) {
          best = current;
          result.best_s = s;
        }
      }
    }
    accepted += sweep_accepted;
    attempted += n;
    result.outer_steps_run = sweep + 1;
    if (config.record_trace) result.energy_trace.push_back({sweep, best});
    beta = next_beta(beta,
                     static_cast<double>(sweep_accepted) / static_cast<double>(n),
                     config.schedule, config.sweeps);
  }

  result.best_E = energy(problem, result.best_s);
  result.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(attempted);
  result.wall_time = seconds_since(start);
  return result;
}

GahmcTrajectoryStats gahmc_trajectory(const IsingProblem& problem,
                                      GahmcState& state, double beta,
                                      double duration, std::size_t max_events) {
  const std::size_t n = problem.size();
  auto& x = state.phase.x;
  auto& v = state.phase.v;
  if (x.size() != n || v.size() != n || state.spins.size() != n) {
    throw ContractError("GAHMC state does not match problem size");
  }
  if (!(duration >= 0.0)) throw ContractError("duration must be non-negative");

  std::vector<double> field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = local_field(problem, state.spins, i);
  std::vector<double> wall(n);
  for (std::size_t i = 0; i < n; ++i) wall[i] = time_to_wall(x[i], v[i]);

  auto rotate = [&](double dt) {
    const double c = std::cos(dt);
    const double sn = std::sin(dt);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      x[i] = xi * c + v[i] * sn;
      v[i] = v[i] * c - xi * sn;
      wall[i] -= dt;
    }
  };

  GahmcTrajectoryStats stats;
  double remaining = duration;
  while (true) {
    std::size_t hit = n;
    double t_hit = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (wall[i] < t_hit) {
        t_hit = wall[i];
        hit = i;
      }
    }
    if (hit == n || t_hit > remaining) {
      rotate(remaining);
      stats.time += remaining;
      break;
    }
    if (stats.crossings + stats.reflections >= max_events) {
      stats.truncated = true;
      break;
    }
    rotate(t_hit);
    stats.time += t_hit;
    remaining -= t_hit;

    x[hit] = 0.0;
    const double delta_e = beta * 2.0 * state.spins[hit] * field[hit];
    const double kinetic = 0.5 * v[hit] * v[hit];
    if (kinetic > delta_e) {
      const double speed = std::sqrt(v[hit] * v[hit] - 2.0 * delta_e);
      v[hit] = v[hit] >= 0.0 ? speed : -speed;
      const double change = -2.0 * state.spins[hit];
      state.spins.flip(hit);
      for (const auto& nb : problem.neighbors(hit)) {
        field[nb.index] += nb.weight * change;
      }
      ++stats.crossings;
    } else {
      v[hit] = -v[hit];
      ++stats.reflections;
    }
    wall[hit] = std::numbers::pi;
  }
  return stats;
}

double gahmc_hamiltonian(const IsingProblem& problem, const GahmcState& state,
                         double beta) {
  double kinetic = 0.0;
  for (std::size_t i = 0; i < state.phase.size(); ++i) {
    kinetic += state.phase.x[i] * state.phase.x[i] +
               state.phase.v[i] * state.phase.v[i];
  }
  return beta * energy(problem, state.spins) + 0.5 * kinetic;
}

RunResult gahmc_anneal(const IsingProblem& problem, const GahmcConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = problem.size();
  CounterRng init_rng(config.seed, StreamPurpose::kInit);
  CounterRng momentum_rng(config.seed, StreamPurpose::kMomentum);

  GahmcState state{{std::vector<double>(n), std::vector<double>(n)},
                   SpinConfig(n)};
  for (std::size_t i = 0; i < n; ++i) {
    state.phase.x[i] = init_rng.normal();
    state.spins.set(i, sign(state.phase.x[i]));
  }

  RunResult result;
  result.best_s = state.spins;
  double best = energy(problem, state.spins);
  double beta = config.schedule.beta_start;

  for (int outer = 0; outer < config.outer_steps; ++outer) {
    for (double& v : state.phase.v) v = momentum_rng.normal();
    gahmc_trajectory(problem, state, beta, config.trajectory_time,
                     config.max_events);
    const double e = energy(problem, state.spins);
    if (e < best) {
      best = e;
      result.best_s = state.spins;
    }
    result.outer_steps_run = outer + 1;
    if (config.record_trace) result.energy_trace.push_back({outer, best});
    beta = next_beta(beta, 1.0, config.schedule, config.outer_steps);
  }

  result.best_E = energy(problem, result.best_s);
  result.acceptance_rate = 1.0;
  result.wall_time = seconds_since(start);
  return result;
}

}  // namespace phia
