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

#ifndef PHIA_FIXEDPOINT_HPP_
#define PHIA_FIXEDPOINT_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "phia/annealer.hpp"
#include "phia/hmc.hpp"
#include "phia/model.hpp"

namespace phia {

/// Double-width accumulator for products and sums of raw words.
__extension__ typedef __int128 WideInt;

/// Two's-complement Q format with `frac_bits` fractional bits inside a
/// `total_bits` word. Rounding is to nearest, ties to even; overflow
/// saturates.
struct FixedFormat {
  int total_bits = 32;
  int frac_bits = 16;

  /// Throws ContractError unless 0 < frac_bits < total_bits <= 64.
  void validate() const;
  std::int64_t max_raw() const;
  std::int64_t min_raw() const;
  double max_value() const;
  double resolution() const;
};

/// Raw fixed-point word; value = raw * 2^-frac_bits.
struct Fixed {
  std::int64_t raw = 0;

  friend auto operator<=>(const Fixed&, const Fixed&) = default;
};

/// Arithmetic unit for one format. Every saturating operation bumps the
/// saturation counter instead of failing.
class FixedArithmetic {
 public:
  explicit FixedArithmetic(FixedFormat format);

  const FixedFormat& format() const noexcept { return format_; }
  std::uint64_t saturations() const noexcept { return saturations_; }

  Fixed quantize(double x);
  double to_real(Fixed a) const;
  Fixed add(Fixed a, Fixed b);
  Fixed sub(Fixed a, Fixed b);
  Fixed mul(Fixed a, Fixed b);
  Fixed square(Fixed a) { return mul(a, a); }
  /// Clamps a wide raw value into range.
  Fixed saturate(WideInt raw);

 private:
  FixedFormat format_;
  std::uint64_t saturations_ = 0;
};

/// Nearest representable value; saturates at the range limits and, when
/// `saturations` is given, counts the event there.
Fixed fx_quantize(double x, const FixedFormat& format,
                  std::uint64_t* saturations = nullptr);
double fx_to_real(Fixed a, const FixedFormat& format);

/// Least-squares quadratic fit of sech^2(u) on u in [-3, 3], frozen offline
/// from a 600001-point grid. The odd coefficient vanishes by symmetry.
struct DtanhFit {
  static constexpr double kQuadratic = -0.10298735601424795;
  static constexpr double kLinear = 0.0;
  static constexpr double kConstant = 0.640647479447919;
  /// Half-width of the fitted domain in units of gamma * x.
  static constexpr double kDomain = 3.0;
  /// max |clamped fit - sech^2(u)| over the domain (attained at u = 0).
  static constexpr double kMaxAbsError = 0.359352520552081;
};

/// Quadratic stand-in for gamma (1 - tanh^2(gamma x)):
///   A x^2 + B x + C, with A = a gamma^3, B = b gamma^2, C = c gamma,
/// clamped below at 0 and forced to 0 for |x| >= 3 / gamma. The fixed-point
/// evaluation costs one square, two multiplies and two adds.
class PolyDtanh {
 public:
  PolyDtanh(double gamma, FixedArithmetic& arith);

  Fixed operator()(Fixed x, FixedArithmetic& arith) const;
  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
  Fixed quad_;
  Fixed lin_;
  Fixed constant_;
  Fixed x_max_;
};

Fixed fx_poly_dtanh(Fixed x, double gamma, const FixedFormat& format);
/// The same clamped polynomial evaluated in double precision.
double poly_dtanh(double x, double gamma);

/// Phase state held in fixed point.
struct FixedPhaseState {
  std::vector<Fixed> x;
  std::vector<Fixed> v;
};

/// The EM update computed entirely in fixed point with PolyDtanh.
class FixedIntegrator {
 public:
  /// Throws ContractError if a coefficient does not fit the format.
  FixedIntegrator(const IsingProblem& problem, double gamma,
                  FixedArithmetic& arith);

  /// One position-then-momentum update; returns E(sgn x') in fixed point.
  Fixed step(FixedPhaseState& state, Fixed beta, Fixed epsilon);
  /// E(s) in fixed point (exact for in-range integer coefficients).
  Fixed energy_of(const SpinConfig& s);
  /// beta E(sgn x) + |x|^2/2 + |v|^2/2 in fixed point.
  Fixed hamiltonian(const FixedPhaseState& state, Fixed beta);

  const SpinConfig& spins() const noexcept { return spins_; }

 private:
  void compute_fields(const SpinConfig& s);
  Fixed energy_from_fields(const SpinConfig& s);

  const IsingProblem* problem_;
  FixedArithmetic* arith_;
  PolyDtanh dtanh_;
  std::vector<Fixed> fields_;
  std::vector<std::vector<std::pair<std::size_t, Fixed>>> rows_;
  SpinConfig spins_;
  std::vector<Fixed> scratch_;
};

struct FixedRunResult {
  /// best_E is energy(problem, best_s) in double precision.
  RunResult run;
  /// Best energy as tracked by the fixed-point datapath.
  double fixed_best_energy = 0.0;
  std::uint64_t saturations = 0;
};

/// The annealer loop of anneal() with all state, energies and gradients in
/// fixed point and PolyDtanh replacing dtanh_sign. Uses the same random
/// streams as anneal(), so runs are comparable under matched seeds.
FixedRunResult fx_anneal(const IsingProblem& problem,
                         const AnnealConfig& config,
                         const FixedFormat& format);

/// States after each of params.steps fixed-point EM updates (converted to
/// double). Used to measure precision loss against poly_trace.
std::vector<PhaseState> fx_trace(const IsingProblem& problem,
                                 const PhaseState& start,
                                 const HmcParams& params,
                                 const FixedFormat& format);

/// The same EM updates in double precision with poly_dtanh.
std::vector<PhaseState> poly_trace(const IsingProblem& problem,
                                   const PhaseState& start,
                                   const HmcParams& params);

}  // namespace phia

#endif  // PHIA_FIXEDPOINT_HPP_
