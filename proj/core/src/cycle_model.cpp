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

#include "phia/cycle_model.hpp"

#include "phia/error.hpp"

namespace phia {
namespace {

// ADDER32 is a 5-stage pipeline of 31 ADDER2s.
constexpr std::int64_t kAdder32Stages = 5;
constexpr std::int64_t kMomentumSetupLatency = 10;
constexpr std::int64_t kGradientBlockLatency = 12;
constexpr std::int64_t kHamiltonianBlockLatency = 13;
// Control costs outside the closed form.
constexpr std::int64_t kAcceptanceCycles = 3;
constexpr std::int64_t kCompareCycles = 1;

void check_sizes(std::size_t n, std::size_t steps) {
  if (n < 1) throw ContractError("cycle model needs n >= 1");
  if (steps < 1) throw ContractError("cycle model needs L >= 1");
}

// Two words per clock from dual-port ROM.
Cycles dual_port_stream(std::size_t n) {
  return Cycles::halves(static_cast<std::int64_t>(n));
}

// floor(n/32) ADDER32 passes over n + 2 operands.
Cycles adder_tree_passes(std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  return Cycles::whole((nn + 2) * (nn / 32));
}

}  // namespace

std::string Cycles::str() const {
  std::string out = std::to_string(twice_ / 2);
  if (!integral()) out += ".5";
  return out;
}

CycleEstimate cycle_estimate(std::size_t n, std::size_t steps, double clk_ns) {
  check_sizes(n, steps);
  const auto nn = static_cast<std::int64_t>(n);
  const auto ll = static_cast<std::int64_t>(steps);
  const std::int64_t blocks = (nn + 2) * (nn / 32);
  CycleEstimate e;
  e.n = n;
  e.steps = steps;
  e.clk_ns = clk_ns;
  e.s1 = Cycles::halves(nn) + Cycles::whole(5);
  e.s2 = Cycles::halves(nn) + Cycles::whole(10 + blocks);
  e.d = Cycles::whole(nn + 12 + blocks);
  e.s3 = Cycles::whole(ll * (2 * nn + 25 + blocks));
  e.est = Cycles::whole((2 * ll + 1) * nn + 15 + 25 * ll + (ll + 1) * blocks);
  return e;
}

const char* control_state_name(ControlState state) {
  switch (state) {
    case ControlState::kInitialization: return "initialization";
    case ControlState::kFirstMomentumUpdate: return "first-momentum-update";
    case ControlState::kEmIterations: return "em-iterations";
    case ControlState::kAcceptance: return "acceptance-temperature";
    case ControlState::kBookkeeping: return "best-result-bookkeeping";
  }
  return "unknown";
}

Cycles CycleLedger::state_total(ControlState state,
                                std::size_t outer_step) const {
  Cycles total;
  for (const auto& e : entries) {
    if (e.state == state && e.outer_step == outer_step) total += e.cycles;
  }
  return total;
}

Cycles CycleLedger::run_total(std::size_t outer_step) const {
  return state_total(ControlState::kInitialization, outer_step) +
         state_total(ControlState::kFirstMomentumUpdate, outer_step) +
         state_total(ControlState::kEmIterations, outer_step);
}

CycleLedger state_machine_trace(std::size_t n, std::size_t steps,
                                std::size_t outer_steps, double clk_ns) {
  check_sizes(n, steps);
  if (outer_steps < 1) throw ContractError("trace needs at least one outer step");
  CycleLedger ledger;
  ledger.n = n;
  ledger.steps = steps;
  ledger.outer_steps = outer_steps;
  ledger.clk_ns = clk_ns;
  const auto nn = static_cast<std::int64_t>(n);

  for (std::size_t outer = 0; outer < outer_steps; ++outer) {
    auto record = [&](ControlState state, std::size_t iteration,
                      const char* block, Cycles cycles) {
      ledger.entries.push_back({outer, state, iteration, block, cycles});
    };

    ledger.sequence.push_back(ControlState::kInitialization);
    record(ControlState::kInitialization, 0, "rom-load-x-v", dual_port_stream(n));
    record(ControlState::kInitialization, 0, "adder32-pipeline-fill",
           Cycles::whole(kAdder32Stages));

    ledger.sequence.push_back(ControlState::kFirstMomentumUpdate);
    record(ControlState::kFirstMomentumUpdate, 0, "momentum-stream",
           dual_port_stream(n));
    record(ControlState::kFirstMomentumUpdate, 0, "func-setup-latency",
           Cycles::whole(kMomentumSetupLatency));
    record(ControlState::kFirstMomentumUpdate, 0, "adder32-field-passes",
           adder_tree_passes(n));

    ledger.sequence.push_back(ControlState::kEmIterations);
    for (std::size_t it = 1; it <= steps; ++it) {
      // Gradient block: position stream, dtanh/multiply latency, field sums.
      record(ControlState::kEmIterations, it, "gradient-block-stream",
             Cycles::whole(nn));
      record(ControlState::kEmIterations, it, "gradient-block-latency",
             Cycles::whole(kGradientBlockLatency));
      record(ControlState::kEmIterations, it, "adder32-field-passes",
             adder_tree_passes(n));
      // Hamiltonian block.
      record(ControlState::kEmIterations, it, "hamiltonian-block-stream",
             Cycles::whole(nn));
      record(ControlState::kEmIterations, it, "hamiltonian-block-latency",
             Cycles::whole(kHamiltonianBlockLatency));
    }

    ledger.sequence.push_back(ControlState::kAcceptance);
    record(ControlState::kAcceptance, 0, "metropolis-and-beta-update",
           Cycles::whole(kAcceptanceCycles));

    ledger.sequence.push_back(ControlState::kBookkeeping);
    record(ControlState::kBookkeeping, 0, "best-energy-compare",
           Cycles::whole(kCompareCycles));
    record(ControlState::kBookkeeping, 0, "best-spin-store",
           Cycles::whole((nn + 31) / 32));
  }
  return ledger;
}

}  // namespace phia
