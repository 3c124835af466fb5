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

#ifndef PHIA_ANNEALER_HPP_
#define PHIA_ANNEALER_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phia/hmc.hpp"
#include "phia/model.hpp"

namespace phia {

enum class BetaRule { kGeometric, kAdaptive };

/// What happens to a trajectory end point.
enum class AcceptRule {
  /// Always move to the end point. The Metropolis test is still evaluated
  /// and its pass rate reported.
  kAlways,
  /// Move only if accept(H_old, H_new, u) passes.
  kMetropolis,
};

/// Inverse-temperature schedule shared by every annealing solver.
struct BetaSchedule {
  double beta_start = 0.1;
  double beta_end = 10.0;
  BetaRule rule = BetaRule::kGeometric;
  /// Target acceptance rate for the adaptive rule.
  double adapt_target = 0.5;

  void validate() const;
};

struct AnnealConfig {
  /// gamma, epsilon and L; `hmc.beta` is overwritten by the schedule.
  HmcParams hmc;
  BetaSchedule schedule;
  int outer_steps = 1000;
  AcceptRule accept_rule = AcceptRule::kAlways;
  std::uint64_t seed = 0;
  bool record_trace = false;
  GradientMode gradient_mode = GradientMode::kHardSign;

  void validate() const;
};

struct TracePoint {
  int step = 0;
  double best_energy = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Outcome of one annealing run, shared by all solvers.
struct RunResult {
  SpinConfig best_s;
  /// Always energy(problem, best_s).
  double best_E = 0.0;
  double wall_time = 0.0;  // seconds
  int outer_steps_run = 0;
  /// Fraction of trajectories that passed the Metropolis test.
  double acceptance_rate = 0.0;
  /// Trajectories rejected because they diverged.
  std::size_t diverged = 0;
  std::vector<TracePoint> energy_trace;
};

/// Multiplicative factor (beta_end / beta_start)^(1 / outer_steps).
double geometric_ratio(const BetaSchedule& schedule, int outer_steps);

/// Next inverse temperature. The geometric rule multiplies by
/// geometric_ratio(); the adaptive rule additionally scales by 1.05 when
/// acc_rate is above target and by 1/1.05 when below. Clamped to
/// [beta_start, beta_end].
double next_beta(double beta, double acc_rate, const BetaSchedule& schedule,
                 int outer_steps);
double next_beta(double beta, double acc_rate, const AnnealConfig& config);

/// Gradient-based HMC annealing. Positions start from N(0, 1); every outer
/// step resamples the momenta, integrates L EM steps, evaluates the
/// Metropolis test on H (enforced only under AcceptRule::kMetropolis) and
/// advances beta. A diverged trajectory is always rejected. The best sign
/// configuration seen after any EM step is returned. Deterministic given
/// (problem, seed).
RunResult anneal(const IsingProblem& problem, const AnnealConfig& config);

}  // namespace phia

#endif  // PHIA_ANNEALER_HPP_
