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

#ifndef PHIA_HMC_HPP_
#define PHIA_HMC_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "phia/model.hpp"

namespace phia {

/// Continuous positions x and momenta v of the augmented system.
struct PhaseState {
  std::vector<double> x;
  std::vector<double> v;

  std::size_t size() const noexcept { return x.size(); }
  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

/// Integrator hyper-parameters. `steps` is the trajectory length L.
struct HmcParams {
  double gamma = 2.0;
  double epsilon = 0.1;
  int steps = 10;
  double beta = 1.0;

  /// Throws ContractError unless gamma > 0, epsilon > 0, steps >= 1, beta > 0.
  void validate() const;
};

/// Where the tanh surrogate enters the momentum update.
enum class GradientMode {
  /// Quasi-gradient on hard signs, smoothed derivative as chain-rule factor.
  kHardSign,
  /// Gradient of the fully smoothed Hamiltonian (tanh inside E as well).
  kFullySmoothed,
};

/// |x_i| or |v_i| beyond this aborts a trajectory.
inline constexpr double kDivergenceBound = 1e6;

/// +1 for x >= 0, -1 otherwise (zero maps to +1).
inline int sign(double x) noexcept { return x >= 0.0 ? 1 : -1; }

double tanh_sign(double x, double gamma);
/// d/dx tanh(gamma x) = gamma (1 - tanh^2(gamma x)).
double dtanh_sign(double x, double gamma);

SpinConfig sign_config(std::span<const double> x);

/// I_i = sum_j J_ij s_j + h_i, i.e. -dE/ds_i at s.
std::vector<double> quasi_gradient(const IsingProblem& problem,
                                   const SpinConfig& s);

/// H(x, v) = beta E(sgn x) + |x|^2 / 2 + |v|^2 / 2.
double hamiltonian(const IsingProblem& problem, const PhaseState& state,
                   double beta);

/// H with sgn replaced by tanh(gamma .) and E evaluated on real arguments.
double smoothed_hamiltonian(const IsingProblem& problem,
                            const PhaseState& state, double beta,
                            double gamma);

/// x-gradient of smoothed_hamiltonian:
///   x_i - beta dtanh(x_i) (sum_j J_ij tanh(gamma x_j) + h_i).
std::vector<double> smoothed_gradient(const IsingProblem& problem,
                                      std::span<const double> x, double beta,
                                      double gamma);

/// Momentum time derivative. In kHardSign mode component i is
/// beta dtanh(x_i) I_i(sgn x) - x_i; kFullySmoothed returns
/// -smoothed_gradient.
std::vector<double> v_dot(const IsingProblem& problem,
                          std::span<const double> x, double beta, double gamma,
                          GradientMode mode = GradientMode::kHardSign);

/// Reusable workspace for the position-then-momentum update
///
///   x' = x + eps v,   v' = v + eps v_dot(x').
///
/// Every component of each half is computed from the pre-update snapshot,
/// so the per-component loops are a data-parallel map.
class EmIntegrator {
 public:
  explicit EmIntegrator(const IsingProblem& problem,
                        GradientMode mode = GradientMode::kHardSign);

  /// Advances `state` in place and returns E(sgn x'), taken from the
  /// quasi-gradient already computed for the momentum half. Throws
  /// DivergenceError on a non-finite component.
  double step(PhaseState& state, const HmcParams& params);

  /// Same update, visiting components in `order` (a permutation of 0..n-1).
  double step(PhaseState& state, const HmcParams& params,
              std::span<const std::size_t> order);

  /// Signs of the positions after the last step.
  const SpinConfig& spins() const noexcept { return spins_; }

 private:
  void rebuild_fields();

  const IsingProblem* problem_;
  GradientMode mode_;
  SpinConfig spins_;
  // Hard-sign quasi-gradient of spins_, maintained across steps by applying
  // sign changes; rebuilt from scratch once the patched flips exceed n.
  std::vector<double> field_;
  bool fields_valid_ = false;
  std::size_t patched_ = 0;
  std::vector<std::size_t> flipped_;
  std::vector<double> smooth_;
  std::vector<std::size_t> identity_;
};

/// One EM update. Throws DivergenceError on a non-finite intermediate.
PhaseState em_update(const IsingProblem& problem, const PhaseState& state,
                     const HmcParams& params,
                     GradientMode mode = GradientMode::kHardSign);

/// A strict improvement of the incumbent seen during a trajectory.
struct Improvement {
  int step = 0;  // 1-based em_update index within the trajectory
  double energy = 0.0;
  SpinConfig spins;
};

struct TrajectoryResult {
  PhaseState state;
  std::vector<Improvement> improvements;
};

/// Applies em_update `params.steps` times, recording every sign
/// configuration that beats `incumbent`. Throws DivergenceError when a
/// component becomes non-finite or exceeds kDivergenceBound.
TrajectoryResult trajectory(
    const IsingProblem& problem, const PhaseState& state,
    const HmcParams& params,
    double incumbent = std::numeric_limits<double>::infinity(),
    GradientMode mode = GradientMode::kHardSign);

/// Metropolis test: u < min(1, exp(-(h_new - h_old))).
bool accept(double h_old, double h_new, double u);

}  // namespace phia

#endif  // PHIA_HMC_HPP_
