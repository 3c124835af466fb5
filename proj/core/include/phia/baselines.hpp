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

#ifndef PHIA_BASELINES_HPP_
#define PHIA_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <numbers>

#include "phia/annealer.hpp"
#include "phia/hmc.hpp"
#include "phia/model.hpp"

namespace phia {

/// Single-flip Metropolis simulated annealing.
struct SaConfig {
  int sweeps = 1000;
  BetaSchedule schedule;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
};

/// Each sweep visits every spin once in a fresh random order and flips it
/// with probability min(1, exp(-beta dE)). beta advances once per sweep.
RunResult sa_anneal(const IsingProblem& problem, const SaConfig& config);

/// Exact Gaussian-augmented HMC (no gradient approximation).
struct GahmcConfig {
  double trajectory_time = std::numbers::pi / 2;
  int outer_steps = 1000;
  BetaSchedule schedule;
  std::uint64_t seed = 0;
  /// Zero-crossing events allowed per trajectory before it is cut short.
  std::size_t max_events = 10000;
  bool record_trace = false;

  void validate() const;
};

/// State of an exact trajectory. `spins` is kept alongside x because a
/// coordinate sitting exactly on x_i = 0 after a crossing has a spin that
/// sgn(x_i) alone cannot recover.
struct GahmcState {
  PhaseState phase;
  SpinConfig spins;
};

struct GahmcTrajectoryStats {
  std::size_t crossings = 0;    // wall hits that changed the spin
  std::size_t reflections = 0;  // wall hits that bounced back
  double time = 0.0;            // integration time actually covered
  bool truncated = false;       // stopped by max_events
};

/// Piecewise-harmonic dynamics of H = beta E(s) + |x|^2/2 + |v|^2/2.
/// Between wall hits x_i(t) = x_i cos t + v_i sin t. At x_i = 0 the
/// coordinate crosses with |v_i'| = sqrt(v_i^2 - 2 dE) when v_i^2 / 2 > dE
/// (dE = beta times the flip energy change), otherwise it reflects.
/// Simultaneous hits resolve in time order, lowest index first.
GahmcTrajectoryStats gahmc_trajectory(const IsingProblem& problem,
                                      GahmcState& state, double beta,
                                      double duration, std::size_t max_events);

/// H evaluated with the tracked spins rather than sgn(x).
double gahmc_hamiltonian(const IsingProblem& problem, const GahmcState& state,
                         double beta);

/// Annealing with exact GAHMC trajectories. Every trajectory is accepted;
/// the candidate is the spin state at the trajectory end.
RunResult gahmc_anneal(const IsingProblem& problem, const GahmcConfig& config);

}  // namespace phia

#endif  // PHIA_BASELINES_HPP_
