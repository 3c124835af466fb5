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

#ifndef PHIA_CYCLE_MODEL_HPP_
#define PHIA_CYCLE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace phia {

/// Clock-cycle count in exact half-cycle resolution (n/2 terms are
/// fractional for odd n).
class Cycles {
 public:
  constexpr Cycles() = default;
  static constexpr Cycles whole(std::int64_t count) { return Cycles(2 * count); }
  static constexpr Cycles halves(std::int64_t count) { return Cycles(count); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool integral() const { return twice_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
  /// Rounded up to whole cycles.
  constexpr std::int64_t ceil() const { return (twice_ + 1) / 2; }
  std::string str() const;

  constexpr Cycles& operator+=(Cycles o) {
    twice_ += o.twice_;
    return *this;
  }
  friend constexpr Cycles operator+(Cycles a, Cycles b) { return a += b; }
  friend constexpr Cycles operator*(std::int64_t k, Cycles c) {
    return Cycles(k * c.twice_);
  }
  friend constexpr bool operator==(Cycles, Cycles) = default;
  friend constexpr auto operator<=>(Cycles, Cycles) = default;

 private:
  constexpr explicit Cycles(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

/// 100 MHz reference clock.
inline constexpr double kDefaultClockNs = 10.0;

/// Closed-form single-run timing of the reference datapath, in Clk:
///   T_s1  = n/2 + 5
///   T_s2  = n/2 + 10 + (n+2) floor(n/32)
///   T_d   = n + 12 + (n+2) floor(n/32)
///   T_s3  = L (T_d + 13 + n) = L (2n + 25 + (n+2) floor(n/32))
///   T_est = T_s1 + T_s2 + T_s3
///         = (2L+1) n + 15 + 25L + (L+1)(n+2) floor(n/32)
struct CycleEstimate {
  std::size_t n = 0;
  std::size_t steps = 0;
  double clk_ns = kDefaultClockNs;
  Cycles s1, s2, d, s3, est;

  double est_ns() const { return est.value() * clk_ns; }
};

/// Throws ContractError if n < 1 or steps < 1.
CycleEstimate cycle_estimate(std::size_t n, std::size_t steps,
                             double clk_ns = kDefaultClockNs);

/// The five control states, in execution order.
enum class ControlState : int {
  kInitialization = 1,
  kFirstMomentumUpdate = 2,
  kEmIterations = 3,
  kAcceptance = 4,
  kBookkeeping = 5,
};

const char* control_state_name(ControlState state);

struct LedgerEntry {
  std::size_t outer_step = 0;
  ControlState state = ControlState::kInitialization;
  std::size_t iteration = 0;  // 1-based within state 3, 0 elsewhere
  std::string block;
  Cycles cycles;
};

struct CycleLedger {
  std::size_t n = 0;
  std::size_t steps = 0;
  std::size_t outer_steps = 0;
  double clk_ns = kDefaultClockNs;
  std::vector<LedgerEntry> entries;
  /// States in the order they were entered.
  std::vector<ControlState> sequence;

  /// Total cycles spent in `state` during outer step `outer_step`.
  Cycles state_total(ControlState state, std::size_t outer_step = 0) const;
  /// States 1-3 of one outer step, the quantity T_est estimates.
  Cycles run_total(std::size_t outer_step = 0) const;
};

/// Walks the control flow 1 -> 2 -> 3 (L iterations) -> 4 -> 5 once per
/// outer step and records every block's latency. States 1-3 use the
/// datapath latencies behind cycle_estimate(); states 4 and 5 carry small
/// fixed control costs that the closed form leaves out.
CycleLedger state_machine_trace(std::size_t n, std::size_t steps,
                                std::size_t outer_steps = 1,
                                double clk_ns = kDefaultClockNs);

}  // namespace phia

#endif  // PHIA_CYCLE_MODEL_HPP_
