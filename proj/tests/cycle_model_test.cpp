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

#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "phia/error.hpp"

namespace phia {
namespace {

const std::vector<std::size_t> kSizes = {8, 16, 32, 64, 100, 200};
const std::vector<std::size_t> kSteps = {1, 10, 100};

// Closed forms in half-cycles so n/2 stays exact.
struct Closed {
  long s1, s2, d, s3, est;
};

Closed closed(long n, long l) {
  const long b = (n + 2) * (n / 32);
  return {n + 10, n + 2 * (10 + b), 2 * (n + 12 + b), 2 * l * (2 * n + 25 + b),
          2 * ((2 * l + 1) * n + 15 + 25 * l + (l + 1) * b)};
}

TEST(CycleEstimateTest, FrozenSpotValues) {
  const auto e = cycle_estimate(32, 100);
  EXPECT_EQ(e.est, Cycles::whole(oracle::kEst32x100));
  EXPECT_EQ(e.s1, Cycles::whole(21));
  EXPECT_EQ(e.s2, Cycles::whole(60));
  EXPECT_EQ(e.d, Cycles::whole(78));
  EXPECT_EQ(e.s3, Cycles::whole(12300));
  EXPECT_DOUBLE_EQ(e.est_ns(), 123810.0);
  EXPECT_EQ(cycle_estimate(8, 1).est, Cycles::whole(oracle::kEst8x1));
}

TEST(CycleEstimateTest, HalfCyclesForOddN) {
  const auto e = cycle_estimate(7, 1);
  EXPECT_FALSE(e.s1.integral());
  EXPECT_EQ(e.s1.value(), 8.5);
  EXPECT_EQ(e.s1.ceil(), 9);
  EXPECT_EQ(e.s1.str(), "8.5");
  EXPECT_TRUE(e.est.integral());
  EXPECT_EQ(e.s1 + e.s2 + e.s3, e.est);
}

TEST(CycleEstimateTest, MatchesClosedFormsOnGrid) {
  for (std::size_t n : kSizes) {
    for (std::size_t l : kSteps) {
      const auto e = cycle_estimate(n, l);
      const auto c = closed(static_cast<long>(n), static_cast<long>(l));
      EXPECT_EQ(e.s1.twice(), c.s1);
      EXPECT_EQ(e.s2.twice(), c.s2);
      EXPECT_EQ(e.d.twice(), c.d);
      EXPECT_EQ(e.s3.twice(), c.s3);
      EXPECT_EQ(e.est.twice(), c.est);
      EXPECT_EQ(e.s1 + e.s2 + e.s3, e.est) << n << " " << l;
    }
  }
}

TEST(CycleEstimateTest, PolynomialBound) {
  // T_est <= c L n^2 / 32 with one c for the whole grid.
  const double c = 32.0;
  for (std::size_t n : kSizes) {
    for (std::size_t l : kSteps) {
      const double bound = c * static_cast<double>(l * n * n) / 32.0;
      EXPECT_LE(cycle_estimate(n, l).est.value(), bound) << n << " " << l;
    }
  }
  // Doubling n never multiplies the cost by more than the quadratic factor.
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    EXPECT_LE(cycle_estimate(2 * n, 10).est.value(),
              4.0 * cycle_estimate(n, 10).est.value());
  }
}

TEST(CycleEstimateTest, RejectsZero) {
  EXPECT_THROW(cycle_estimate(32, 0), ContractError);
  EXPECT_THROW(cycle_estimate(0, 1), ContractError);
  EXPECT_THROW(state_machine_trace(32, 0), ContractError);
}

TEST(StateMachineTest, StateThreeAt32) {
  const auto ledger = state_machine_trace(32, 1);
  EXPECT_EQ(ledger.state_total(ControlState::kEmIterations),
            Cycles::whole(oracle::kState3At32));
}

TEST(StateMachineTest, LedgerTotalsEqualClosedForms) {
  for (std::size_t n : kSizes) {
    for (std::size_t l : kSteps) {
      const auto ledger = state_machine_trace(n, l);
      const auto c = closed(static_cast<long>(n), static_cast<long>(l));
      EXPECT_EQ(ledger.state_total(ControlState::kInitialization).twice(), c.s1);
      EXPECT_EQ(ledger.state_total(ControlState::kFirstMomentumUpdate).twice(),
                c.s2);
      EXPECT_EQ(ledger.state_total(ControlState::kEmIterations).twice(), c.s3);
      EXPECT_EQ(ledger.run_total().twice(), c.est);
    }
  }
}

TEST(StateMachineTest, SequencePerOuterStep) {
  const auto ledger = state_machine_trace(16, 3, 4);
  ASSERT_EQ(ledger.sequence.size(), 20u);
  for (std::size_t k = 0; k < ledger.sequence.size(); ++k) {
    EXPECT_EQ(static_cast<int>(ledger.sequence[k]), static_cast<int>(k % 5) + 1);
  }
  for (std::size_t outer = 0; outer < 4; ++outer) {
    EXPECT_EQ(ledger.run_total(outer), cycle_estimate(16, 3).est);
  }
  std::size_t max_iteration = 0;
  for (const auto& e : ledger.entries) {
    if (e.state == ControlState::kEmIterations) {
      max_iteration = std::max(max_iteration, e.iteration);
      EXPECT_GE(e.iteration, 1u);
    } else {
      EXPECT_EQ(e.iteration, 0u);
    }
  }
  EXPECT_EQ(max_iteration, 3u);
}

}  // namespace
}  // namespace phia
