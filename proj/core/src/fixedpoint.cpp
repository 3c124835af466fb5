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

#include "phia/fixedpoint.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "phia/error.hpp"
#include "phia/problem_io.hpp"
#include "phia/rng.hpp"

namespace phia {
namespace {

Fixed raw_fixed(std::int64_t raw) { return Fixed{raw}; }

}  // namespace

void FixedFormat::validate() const {
  if (!(frac_bits > 0 && frac_bits < total_bits && total_bits <= 64)) {
    throw ContractError("fixed format needs 0 < frac_bits < total_bits <= 64");
  }
}

std::int64_t FixedFormat::max_raw() const {
  return total_bits == 64 ? INT64_MAX
                          : (std::int64_t{1} << (total_bits - 1)) - 1;
}

std::int64_t FixedFormat::min_raw() const {
  return total_bits == 64 ? INT64_MIN : -(std::int64_t{1} << (total_bits - 1));
}

double FixedFormat::max_value() const {
  return std::ldexp(static_cast<double>(max_raw()), -frac_bits);
}

double FixedFormat::resolution() const { return std::ldexp(1.0, -frac_bits); }

Fixed fx_quantize(double x, const FixedFormat& format,
                  std::uint64_t* saturations) {
  format.validate();
  if (std::isnan(x)) throw ContractError("cannot quantize NaN");
  const double bound = std::ldexp(1.0, format.total_bits - 1);
  // Default rounding mode is round-to-nearest-even.
  const double scaled = std::nearbyint(std::ldexp(x, format.frac_bits));
  if (scaled >= bound || scaled > static_cast<double>(format.max_raw())) {
    if (saturations) ++*saturations;
    return raw_fixed(format.max_raw());
  }
  if (scaled < -bound) {
    if (saturations) ++*saturations;
    return raw_fixed(format.min_raw());
  }
  return raw_fixed(static_cast<std::int64_t>(scaled));
}

double fx_to_real(Fixed a, const FixedFormat& format) {
  return std::ldexp(static_cast<double>(a.raw), -format.frac_bits);
}

FixedArithmetic::FixedArithmetic(FixedFormat format) : format_(format) {
  format_.validate();
}

Fixed FixedArithmetic::quantize(double x) {
  return fx_quantize(x, format_, &saturations_);
}

double FixedArithmetic::to_real(Fixed a) const { return fx_to_real(a, format_); }

Fixed FixedArithmetic::saturate(WideInt raw) {
  if (raw > format_.max_raw()) {
    ++saturations_;
    return raw_fixed(format_.max_raw());
  }
  if (raw < format_.min_raw()) {
    ++saturations_;
    return raw_fixed(format_.min_raw());
  }
  return raw_fixed(static_cast<std::int64_t>(raw));
}

Fixed FixedArithmetic::add(Fixed a, Fixed b) {
  return saturate(static_cast<WideInt>(a.raw) + b.raw);
}

Fixed FixedArithmetic::sub(Fixed a, Fixed b) {
  return saturate(static_cast<WideInt>(a.raw) - b.raw);
}

Fixed FixedArithmetic::mul(Fixed a, Fixed b) {
  const WideInt product = static_cast<WideInt>(a.raw) * b.raw;
  const int f = format_.frac_bits;
  WideInt q = product >> f;  // floor
  const WideInt rem = product - (q << f);
  const WideInt half = static_cast<WideInt>(1) << (f - 1);
  if (rem > half || (rem == half && (q & 1) != 0)) ++q;
  return saturate(q);
}

PolyDtanh::PolyDtanh(double gamma, FixedArithmetic& arith)
    : gamma_(gamma),
      quad_(arith.quantize(DtanhFit::kQuadratic * gamma * gamma * gamma)),
      lin_(arith.quantize(DtanhFit::kLinear * gamma * gamma)),
      constant_(arith.quantize(DtanhFit::kConstant * gamma)),
      x_max_(arith.quantize(DtanhFit::kDomain / gamma)) {
  if (!(gamma > 0.0)) throw ContractError("gamma must be positive");
}

Fixed PolyDtanh::operator()(Fixed x, FixedArithmetic& arith) const {
  const std::int64_t mag = x.raw < 0 ? -x.raw : x.raw;
  if (x.raw == INT64_MIN || mag >= x_max_.raw) return Fixed{};
  const Fixed sq = arith.square(x);
  const Fixed even = arith.mul(quad_, sq);
  const Fixed odd = arith.mul(lin_, x);
  const Fixed value = arith.add(arith.add(even, odd), constant_);
  return value.raw < 0 ? Fixed{} : value;
}

Fixed fx_poly_dtanh(Fixed x, double gamma, const FixedFormat& format) {
  FixedArithmetic arith(format);
  const PolyDtanh poly(gamma, arith);
  return poly(x, arith);
}

double poly_dtanh(double x, double gamma) {
  if (!(gamma > 0.0)) throw ContractError("gamma must be positive");
  if (std::abs(x) >= DtanhFit::kDomain / gamma) return 0.0;
  const double value = DtanhFit::kQuadratic * gamma * gamma * gamma * x * x +
                       DtanhFit::kLinear * gamma * gamma * x +
                       DtanhFit::kConstant * gamma;
  return value < 0.0 ? 0.0 : value;
}

FixedIntegrator::FixedIntegrator(const IsingProblem& problem, double gamma,
                                 FixedArithmetic& arith)
    : problem_(&problem),
      arith_(&arith),
      dtanh_(gamma, arith),
      fields_(problem.size()),
      rows_(problem.size()),
      spins_(problem.size()),
      scratch_(problem.size()) {
  const double limit = arith.format().max_value();
  if (problem.max_abs_coefficient() > limit) {
    throw ContractError("coefficient magnitude " +
                        format_real(problem.max_abs_coefficient()) +
                        " exceeds the fixed format range " +
                        format_real(limit));
  }
  const auto h = problem.fields();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    scratch_[i] = arith.quantize(h[i]);
    for (const auto& nb : problem.neighbors(i)) {
      rows_[i].emplace_back(nb.index, arith.quantize(nb.weight));
    }
  }
}

void FixedIntegrator::compute_fields(const SpinConfig& s) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Fixed field = scratch_[i];
    for (const auto& [j, w] : rows_[i]) {
      field = s[j] > 0 ? arith_->add(field, w) : arith_->sub(field, w);
    }
    fields_[i] = field;
  }
}

Fixed FixedIntegrator::energy_from_fields(const SpinConfig& s) {
  // sum_i s_i (I_i + h_i) = 2 (sum_{i<j} J s s + sum_i h s); exact in raw units.
  WideInt twice = 0;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    const WideInt term = static_cast<WideInt>(fields_[i].raw) + scratch_[i].raw;
    twice += s[i] > 0 ? term : -term;
  }
  return arith_->saturate(-(twice >> 1));
}

Fixed FixedIntegrator::energy_of(const SpinConfig& s) {
  if (s.size() != fields_.size()) {
    throw ContractError("spin configuration does not match problem size");
  }
  compute_fields(s);
  return energy_from_fields(s);
}

Fixed FixedIntegrator::step(FixedPhaseState& state, Fixed beta, Fixed epsilon) {
  const std::size_t n = fields_.size();
  if (state.x.size() != n || state.v.size() != n) {
    throw ContractError("fixed state does not match problem size");
  }
  FixedArithmetic& a = *arith_;
  for (std::size_t i = 0; i < n; ++i) {
    state.x[i] = a.add(state.x[i], a.mul(epsilon, state.v[i]));
    spins_.set(i, state.x[i].raw >= 0 ? 1 : -1);
  }
  compute_fields(spins_);
  for (std::size_t i = 0; i < n; ++i) {
    const Fixed slope = dtanh_(state.x[i], a);
    const Fixed force = a.sub(a.mul(a.mul(beta, slope), fields_[i]), state.x[i]);
    state.v[i] = a.add(state.v[i], a.mul(epsilon, force));
  }
  return energy_from_fields(spins_);
}

Fixed FixedIntegrator::hamiltonian(const FixedPhaseState& state, Fixed beta) {
  FixedArithmetic& a = *arith_;
  SpinConfig s(state.x.size());
  Fixed quadratic{};
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    s.set(i, state.x[i].raw >= 0 ? 1 : -1);
    quadratic = a.add(quadratic, a.square(state.x[i]));
    quadratic = a.add(quadratic, a.square(state.v[i]));
  }
  const Fixed e = energy_of(s);
  // Halving is an arithmetic shift on the raw word.
  return a.add(a.mul(beta, e), Fixed{quadratic.raw >> 1});
}

FixedRunResult fx_anneal(const IsingProblem& problem,
                         const AnnealConfig& config,
                         const FixedFormat& format) {
  config.validate();
  format.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = problem.size();
  FixedArithmetic arith(format);
  FixedIntegrator integrator(problem, config.hmc.gamma, arith);

  CounterRng init_rng(config.seed, StreamPurpose::kInit);
  CounterRng momentum_rng(config.seed, StreamPurpose::kMomentum);
  CounterRng accept_rng(config.seed, StreamPurpose::kAccept);

  FixedPhaseState current{std::vector<Fixed>(n), std::vector<Fixed>(n)};
  for (auto& x : current.x) x = arith.quantize(init_rng.normal());

  FixedRunResult out;
  RunResult& result = out.run;
  result.best_s = SpinConfig(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.best_s.set(i, current.x[i].raw >= 0 ? 1 : -1);
  }
  Fixed best = integrator.energy_of(result.best_s);

  const Fixed epsilon = arith.quantize(config.hmc.epsilon);
  double beta = config.schedule.beta_start;
  std::size_t accepted = 0;
  FixedPhaseState proposal;

  for (int outer = 0; outer < config.outer_steps; ++outer) {
    const Fixed beta_q = arith.quantize(beta);
    for (auto& v : current.v) v = arith.quantize(momentum_rng.normal());
    const Fixed h_old = integrator.hamiltonian(current, beta_q);

    proposal = current;
    for (int step = 0; step < config.hmc.steps; ++step) {
      const Fixed e = integrator.step(proposal, beta_q, epsilon);
      if (e < best) {
        best = e;
        result.best_s = integrator.spins();
      }
    }
    const Fixed h_new = integrator.hamiltonian(proposal, beta_q);
    const double u = accept_rng.uniform();
    const bool passed = accept(arith.to_real(h_old), arith.to_real(h_new), u);
    if (passed) ++accepted;
    if (passed || config.accept_rule == AcceptRule::kAlways) {
      current.x.swap(proposal.x);
    }

    result.outer_steps_run = outer + 1;
    if (config.record_trace) {
      result.energy_trace.push_back({outer, arith.to_real(best)});
    }
    beta = next_beta(beta,
                     static_cast<double>(accepted) / static_cast<double>(outer + 1),
                     config);
  }

  result.best_E = energy(problem, result.best_s);
  result.acceptance_rate = static_cast<double>(accepted) /
                           static_cast<double>(result.outer_steps_run);
  result.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  out.fixed_best_energy = arith.to_real(best);
  out.saturations = arith.saturations();
  return out;
}

std::vector<PhaseState> fx_trace(const IsingProblem& problem,
                                 const PhaseState& start,
                                 const HmcParams& params,
                                 const FixedFormat& format) {
  params.validate();
  FixedArithmetic arith(format);
  FixedIntegrator integrator(problem, params.gamma, arith);
  FixedPhaseState state;
  for (double x : start.x) state.x.push_back(arith.quantize(x));
  for (double v : start.v) state.v.push_back(arith.quantize(v));
  const Fixed beta = arith.quantize(params.beta);
  const Fixed epsilon = arith.quantize(params.epsilon);

  std::vector<PhaseState> out;
  for (int step = 0; step < params.steps; ++step) {
    integrator.step(state, beta, epsilon);
    PhaseState snapshot;
    for (Fixed x : state.x) snapshot.x.push_back(arith.to_real(x));
    for (Fixed v : state.v) snapshot.v.push_back(arith.to_real(v));
    out.push_back(std::move(snapshot));
  }
  return out;
}

std::vector<PhaseState> poly_trace(const IsingProblem& problem,
                                   const PhaseState& start,
                                   const HmcParams& params) {
  params.validate();
  const std::size_t n = problem.size();
  if (start.x.size() != n || start.v.size() != n) {
    throw ContractError("state does not match problem size");
  }
  PhaseState state = start;
  std::vector<PhaseState> out;
  for (int step = 0; step < params.steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) state.x[i] += params.epsilon * state.v[i];
    const auto field = quasi_gradient(problem, sign_config(state.x));
    for (std::size_t i = 0; i < n; ++i) {
      const double force =
          params.beta * poly_dtanh(state.x[i], params.gamma) * field[i] -
          state.x[i];
      state.v[i] += params.epsilon * force;
    }
    out.push_back(state);
  }
  return out;
}

}  // namespace phia
