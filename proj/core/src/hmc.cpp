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

#include "phia/hmc.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "phia/error.hpp"

namespace phia {
namespace {

void check_length(const IsingProblem& problem, std::size_t length) {
  if (length != problem.size()) {
    throw ContractError("state has length " + std::to_string(length) +
                        ", problem has n = " + std::to_string(problem.size()));
  }
}

void check_state(const IsingProblem& problem, const PhaseState& state) {
  check_length(problem, state.x.size());
  check_length(problem, state.v.size());
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw ContractError("gamma must be positive");
}

double squared_norm(std::span<const double> a) {
  double sum = 0.0;
  for (double x : a) sum += x * x;
  return sum;
}

// -sum_{i<j} J_ij t_i t_j - sum_i h_i t_i for real-valued t.
double relaxed_energy(const IsingProblem& problem, std::span<const double> t) {
  double e = 0.0;
  for (const auto& c : problem.couplings()) e -= c.value * t[c.i] * t[c.j];
  const auto h = problem.fields();
  for (std::size_t i = 0; i < t.size(); ++i) e -= h[i] * t[i];
  return e;
}

}  // namespace

void HmcParams::validate() const {
  if (!(gamma > 0.0)) throw ContractError("gamma must be positive");
  if (!(epsilon > 0.0)) throw ContractError("epsilon must be positive");
  if (steps < 1) throw ContractError("trajectory length L must be >= 1");
  if (!(beta > 0.0)) throw ContractError("beta must be positive");
}

double tanh_sign(double x, double gamma) {
  check_gamma(gamma);
  return std::tanh(gamma * x);
}

double dtanh_sign(double x, double gamma) {
  check_gamma(gamma);
  const double t = std::tanh(gamma * x);
  return gamma * (1.0 - t * t);
}

SpinConfig sign_config(std::span<const double> x) {
  SpinConfig s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s.set(i, sign(x[i]));
  return s;
}

std::vector<double> quasi_gradient(const IsingProblem& problem,
                                   const SpinConfig& s) {
  check_length(problem, s.size());
  std::vector<double> grad(problem.size());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    double field = problem.fields()[i];
    for (const auto& nb : problem.neighbors(i)) field += nb.weight * s[nb.index];
    grad[i] = field;
  }
  return grad;
}

double hamiltonian(const IsingProblem& problem, const PhaseState& state,
                   double beta) {
  check_state(problem, state);
  return beta * energy(problem, sign_config(state.x)) +
         0.5 * squared_norm(state.x) + 0.5 * squared_norm(state.v);
}

double smoothed_hamiltonian(const IsingProblem& problem,
                            const PhaseState& state, double beta,
                            double gamma) {
  check_state(problem, state);
  check_gamma(gamma);
  std::vector<double> t(state.x.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::tanh(gamma * state.x[i]);
  return beta * relaxed_energy(problem, t) + 0.5 * squared_norm(state.x) +
         0.5 * squared_norm(state.v);
}

std::vector<double> smoothed_gradient(const IsingProblem& problem,
                                      std::span<const double> x, double beta,
                                      double gamma) {
  check_length(problem, x.size());
  check_gamma(gamma);
  std::vector<double> t(x.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::tanh(gamma * x[i]);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double field = problem.fields()[i];
    for (const auto& nb : problem.neighbors(i)) field += nb.weight * t[nb.index];
    grad[i] = x[i] - beta * gamma * (1.0 - t[i] * t[i]) * field;
  }
  return grad;
}

std::vector<double> v_dot(const IsingProblem& problem,
                          std::span<const double> x, double beta, double gamma,
                          GradientMode mode) {
  check_length(problem, x.size());
  check_gamma(gamma);
  if (mode == GradientMode::kFullySmoothed) {
    auto grad = smoothed_gradient(problem, x, beta, gamma);
    for (double& g : grad) g = -g;
    return grad;
  }
  const auto field = quasi_gradient(problem, sign_config(x));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = beta * dtanh_sign(x[i], gamma) * field[i] - x[i];
  }
  return out;
}

EmIntegrator::EmIntegrator(const IsingProblem& problem, GradientMode mode)
    : problem_(&problem),
      mode_(mode),
      spins_(problem.size()),
      field_(problem.size()),
      smooth_(problem.size()),
      identity_(problem.size()) {
  std::iota(identity_.begin(), identity_.end(), std::size_t{0});
}

double EmIntegrator::step(PhaseState& state, const HmcParams& params) {
  return step(state, params, identity_);
}

double EmIntegrator::step(PhaseState& state, const HmcParams& params,
                          std::span<const std::size_t> order) {
  const IsingProblem& problem = *problem_;
  const std::size_t n = problem.size();
  check_state(problem, state);
  if (order.size() != n) throw ContractError("update order must cover all n");
  const double eps = params.epsilon;
  const double beta = params.beta;
  const double gamma = params.gamma;
  const auto h = problem.fields();
  const bool hard = mode_ == GradientMode::kHardSign;

  for (std::size_t i : order) {
    state.x[i] += eps * state.v[i];
    smooth_[i] = std::tanh(gamma * state.x[i]);
  }

  if (hard) {
    // Sign changes are applied in index order whatever `order` is, so the
    // fields are bit-identical across visiting orders.
    flipped_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (sign(state.x[i]) != spins_[i]) flipped_.push_back(i);
    }
    patched_ += flipped_.size();
    if (!fields_valid_ || patched_ > n) {
      for (std::size_t i : flipped_) spins_.flip(i);
      rebuild_fields();
    } else {
      for (std::size_t j : flipped_) {
        spins_.flip(j);
        const double twice = 2.0 * spins_[j];
        for (const auto& nb : problem.neighbors(j)) {
          field_[nb.index] += twice * nb.weight;
        }
      }
    }
  } else {
    for (std::size_t i : order) spins_.set(i, sign(state.x[i]));
    for (std::size_t i : order) {
      double field = h[i];
      for (const auto& nb : problem.neighbors(i)) {
        field += nb.weight * smooth_[nb.index];
      }
      field_[i] = field;
    }
    fields_valid_ = false;
  }

  bool finite = true;
  for (std::size_t i : order) {
    const double t = smooth_[i];
    const double force = beta * gamma * (1.0 - t * t) * field_[i] - state.x[i];
    state.v[i] += eps * force;
    finite &= std::isfinite(state.x[i]) && std::isfinite(state.v[i]);
  }
  if (!finite) {
    fields_valid_ = false;
    throw DivergenceError("non-finite phase-space value");
  }

  if (!hard) return energy(problem, spins_);
  // E(s) = -(sum_i s_i I_i + sum_i h_i s_i) / 2 with I on hard signs.
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += spins_[i] * (field_[i] + h[i]);
  return -0.5 * twice;
}

void EmIntegrator::rebuild_fields() {
  const IsingProblem& problem = *problem_;
  const auto h = problem.fields();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    double field = h[i];
    for (const auto& nb : problem.neighbors(i)) {
      field += nb.weight * spins_[nb.index];
    }
    field_[i] = field;
  }
  fields_valid_ = true;
  patched_ = 0;
}

PhaseState em_update(const IsingProblem& problem, const PhaseState& state,
                     const HmcParams& params, GradientMode mode) {
  params.validate();
  PhaseState next = state;
  EmIntegrator integrator(problem, mode);
  integrator.step(next, params);
  return next;
}

TrajectoryResult trajectory(const IsingProblem& problem,
                            const PhaseState& state, const HmcParams& params,
                            double incumbent, GradientMode mode) {
  params.validate();
  TrajectoryResult result{state, {}};
  EmIntegrator integrator(problem, mode);
  for (int step = 1; step <= params.steps; ++step) {
    const double e = integrator.step(result.state, params);
    for (std::size_t i = 0; i < result.state.size(); ++i) {
      if (std::abs(result.state.x[i]) > kDivergenceBound ||
          std::abs(result.state.v[i]) > kDivergenceBound) {
        throw DivergenceError("trajectory left the divergence bound at step " +
                              std::to_string(step));
      }
    }
    if (e < incumbent) {
      incumbent = e;
      result.improvements.push_back({step, e, integrator.spins()});
    }
  }
  return result;
}

bool accept(double h_old, double h_new, double u) {
  const double delta = h_new - h_old;
  if (std::isnan(delta)) return false;
  if (delta <= 0.0) return true;
  return u < std::exp(-delta);
}

}  // namespace phia
