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

#include "phia/annealer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "phia/error.hpp"
#include "phia/rng.hpp"

namespace phia {

void BetaSchedule::validate() const {
  if (!(beta_start > 0.0)) throw ContractError("beta_start must be positive");
  if (!(beta_end >= beta_start)) {
    throw ContractError("beta_end must be >= beta_start");
  }
  if (!(adapt_target > 0.0 && adapt_target < 1.0)) {
    throw ContractError("adapt_target must lie in (0, 1)");
  }
}

void AnnealConfig::validate() const {
  HmcParams probe = hmc;
  probe.beta = schedule.beta_start;
  probe.validate();
  schedule.validate();
  if (outer_steps < 1) throw ContractError("outer_steps must be >= 1");
}

double geometric_ratio(const BetaSchedule& schedule, int outer_steps) {
  return std::pow(schedule.beta_end / schedule.beta_start,
                  1.0 / static_cast<double>(outer_steps));
}

double next_beta(double beta, double acc_rate, const BetaSchedule& schedule,
                 int outer_steps) {
  double r = geometric_ratio(schedule, outer_steps);
  if (schedule.rule == BetaRule::kAdaptive) {
    if (acc_rate > schedule.adapt_target) {
      r *= 1.05;
    } else if (acc_rate < schedule.adapt_target) {
      r /= 1.05;
    }
  }
  return std::clamp(beta * r, schedule.beta_start, schedule.beta_end);
}

double next_beta(double beta, double acc_rate, const AnnealConfig& config) {
  return next_beta(beta, acc_rate, config.schedule, config.outer_steps);
}

namespace {

// H = beta E + |x|^2/2 + |v|^2/2 with E already known.
double kinetic_plus_potential(const PhaseState& state, double beta,
                              double e) {
  double sq = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    sq += state.x[i] * state.x[i] + state.v[i] * state.v[i];
  }
  return beta * e + 0.5 * sq;
}

}  // namespace

RunResult anneal(const IsingProblem& problem, const AnnealConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = problem.size();

  CounterRng init_rng(config.seed, StreamPurpose::kInit);
  CounterRng momentum_rng(config.seed, StreamPurpose::kMomentum);
  CounterRng accept_rng(config.seed, StreamPurpose::kAccept);

  PhaseState current{std::vector<double>(n), std::vector<double>(n)};
  for (double& x : current.x) x = init_rng.normal();

  RunResult result;
  result.best_s = sign_config(current.x);
  double best = energy(problem, result.best_s);
  // E(sgn x) of `current`, carried along so H costs O(n) per trajectory.
  double e_current = best;

  EmIntegrator integrator(problem, config.gradient_mode);
  HmcParams params = config.hmc;
  params.beta = config.schedule.beta_start;
  std::size_t accepted = 0;
  PhaseState proposal;

  for (int outer = 0; outer < config.outer_steps; ++outer) {
    for (double& v : current.v) v = momentum_rng.normal();
    const double h_old = kinetic_plus_potential(current, params.beta, e_current);

    proposal = current;
    bool diverged = false;
    double e = e_current;
    try {
      for (int step = 0; step < params.steps; ++step) {
        e = integrator.step(proposal, params);
        if (e < best) {
          best = e;
          result.best_s = integrator.spins();
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (std::abs(proposal.x[i]) > kDivergenceBound ||
              std::abs(proposal.v[i]) > kDivergenceBound) {
            throw DivergenceError("trajectory left the divergence bound");
          }
        }
      }
    } catch (const DivergenceError&) {
      diverged = true;
      ++result.diverged;
    }

    // Always draw u so the stream position does not depend on divergence.
    const double u = accept_rng.uniform();
    if (!diverged) {
      const bool passed =
          accept(h_old, kinetic_plus_potential(proposal, params.beta, e), u);
      if (passed) ++accepted;
      if (passed || config.accept_rule == AcceptRule::kAlways) {
        current.x.swap(proposal.x);
        e_current = e;
      }
    }

    result.outer_steps_run = outer + 1;
    if (config.record_trace) result.energy_trace.push_back({outer, best});
    const double rate =
        static_cast<double>(accepted) / static_cast<double>(outer + 1);
    params.beta = next_beta(params.beta, rate, config);
  }

  result.best_E = energy(problem, result.best_s);
  result.acceptance_rate = static_cast<double>(accepted) /
                           static_cast<double>(result.outer_steps_run);
  result.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return result;
}

}  // namespace phia
