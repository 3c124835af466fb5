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


#include "phia/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "phia/error.hpp"
#include "phia/problems.hpp"

namespace phia {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(TtsTest, Examples) {
  EXPECT_EQ(tts(2.0, 0.99), 2.0);
  EXPECT_NEAR(tts(2.0, 0.5), oracle::kTtsTwoHalf, 1e-9);
  EXPECT_EQ(tts(1.0, 0.999), 1.0);
  EXPECT_EQ(tts(3.0, 1.0), 3.0);
  EXPECT_EQ(tts(3.0, 0.0), kInf);
  EXPECT_EQ(tts_whole_runs(2.0, 0.5), 14.0);
  EXPECT_THROW(tts(1.0, 1.5), ContractError);
  EXPECT_THROW(tts(1.0, -0.1), ContractError);
  EXPECT_THROW(tts(0.0, 0.5), ContractError);
}

TEST(TtsTest, Properties) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double t1 = 0.001 + 10.0 * unit(gen);
    EXPECT_EQ(tts(t1, 0.99), t1);
    const double p = unit(gen);
    const double q = std::min(1.0, p + 0.1 * unit(gen));
    EXPECT_GE(tts(t1, p), tts(t1, q));
    EXPECT_GE(tts(t1, p), t1);
    EXPECT_NEAR(tts(3.0 * t1, p), 3.0 * tts(t1, p), 1e-9 * tts(3.0 * t1, p));
  }
}

RunResult fixed_result(double e, const IsingProblem& p) {
  RunResult r;
  r.best_E = e;
  r.best_s = SpinConfig(p.size());
  r.wall_time = 0.5;
  return r;
}

TEST(EstimateSuccessTest, AlwaysAndNever) {
  const IsingProblem p(1, {}, {1.0});
  const Solver hit = [](const IsingProblem& q, std::uint64_t) {
    return fixed_result(-1.0, q);
  };
  const Solver miss = [](const IsingProblem& q, std::uint64_t) {
    return fixed_result(1.0, q);
  };
  const auto a = estimate_success(p, hit, -1.0, 10, 1e-9);
  EXPECT_EQ(a.P, 1.0);
  EXPECT_EQ(a.successes, 10);
  EXPECT_EQ(a.tts, a.T1);
  EXPECT_EQ(a.T1, 0.5);
  const auto b = estimate_success(p, miss, -1.0, 10, 1e-9);
  EXPECT_EQ(b.P, 0.0);
  EXPECT_EQ(b.tts, kInf);
}

TEST(EstimateSuccessTest, FailuresAreCountedNotFatal) {
  const IsingProblem p(1, {}, {1.0});
  int calls = 0;
  const Solver flaky = [&calls](const IsingProblem& q, std::uint64_t) {
    if (calls++ % 2 == 0) throw DivergenceError("boom");
    return fixed_result(-1.0, q);
  };
  const auto r = estimate_success(p, flaky, -1.0, 10, 1e-9);
  EXPECT_EQ(r.failures, 5);
  EXPECT_EQ(r.successes, 5);
  EXPECT_EQ(r.P, 0.5);
  EXPECT_EQ(r.T1, 0.5);
  EXPECT_LE(r.successes, r.runs);
}

TEST(EstimateSuccessTest, PhiaOnSmallSkIsing) {
  GenSpec spec;
  spec.family = Family::kSkIsing;
  spec.n = 12;
  spec.seed = 3;
  const auto p = generate(spec);
  const auto g = brute_force_ground(p);
  const auto r =
      estimate_success(p, make_solver(SolverSpec{}), g.energy, 20,
                       success_tolerance(p, g.energy), 7);
  EXPECT_GE(r.P, 0.95);
  EXPECT_EQ(r.P, static_cast<double>(r.successes) / r.runs);
  EXPECT_LE(g.energy, r.best_E);
}

TEST(BruteForceTest, Examples) {
  const IsingProblem ferro(2, {{0, 1, 1.0}}, {0.0, 0.0});
  const auto a = brute_force_ground(ferro);
  EXPECT_EQ(a.energy, -1.0);
  EXPECT_EQ(a.minimizers, 2u);

  const IsingProblem fields(4, {}, {0.5, -2.0, 1.0, -0.25});
  const auto b = brute_force_ground(fields);
  EXPECT_EQ(b.energy, -3.75);
  EXPECT_EQ(b.minimizers, 1u);
  EXPECT_EQ(b.argmin, SpinConfig(std::vector<int>{1, -1, 1, -1}));
}

TEST(BruteForceTest, MatchesDirectEnumeration) {
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto p = oracle::random_problem(16, 0.5, 10 + k, k % 2 == 0, k > 2);
    const auto g = oracle::ground(oracle::dense(p));
    const auto b = brute_force_ground(p);
    EXPECT_NEAR(b.energy, g.energy, 1e-9);
    EXPECT_EQ(b.minimizers, g.count);
    EXPECT_EQ(b.energy, energy(p, b.argmin));
  }
}

TEST(BruteForceTest, RefusesLargeN) {
  const IsingProblem p(25, {}, std::vector<double>(25, 1.0));
  EXPECT_THROW(brute_force_ground(p), ContractError);
}

TEST(ReferenceTest, PolicyChoice) {
  GenSpec spec;
  spec.family = Family::kSkIsing;
  spec.n = 10;
  const auto small = generate(spec);
  EXPECT_EQ(resolve_reference(small, {}, 1).policy, "brute-force");
  ReferencePolicy policy;
  policy.brute_force_max_n = 4;
  policy.ensemble = 4;
  policy.base_sweeps = 100;
  const auto r = resolve_reference(small, policy, 1);
  EXPECT_EQ(r.policy, "sa-ensemble:4x1000sweeps");
  EXPECT_GE(r.energy, brute_force_ground(small).energy);
}

ExperimentSpec small_experiment() {
  ExperimentSpec spec;
  spec.families = {Family::kSkIsing};
  spec.sizes = {8};
  spec.instances = 1;
  spec.runs = 3;
  SolverSpec s;
  s.anneal.outer_steps = 100;
  spec.solvers = {s};
  return spec;
}

TEST(RunExperimentTest, SingleRow) {
  const auto rows = run_experiment(small_experiment());
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  EXPECT_EQ(r.family, "sk_ising");
  EXPECT_EQ(r.n, 8u);
  EXPECT_EQ(r.solver, "phia");
  EXPECT_EQ(r.budget, 100);
  EXPECT_EQ(r.runs, 3);
  EXPECT_EQ(r.reference_policy, "brute-force");
  EXPECT_GE(r.best_E, r.reference_E);
  EXPECT_TRUE(r.error.empty());
}

TEST(RunExperimentTest, DeterministicAndLadderExpands) {
  auto spec = small_experiment();
  spec.instances = 2;
  spec.budgets = {10, 50};
  SolverSpec sa;
  sa.kind = SolverKind::kSa;
  spec.solvers.push_back(sa);
  const auto a = run_experiment(spec);
  const auto b = run_experiment(spec);
  ASSERT_EQ(a.size(), 8u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].instance_seed, b[k].instance_seed);
    EXPECT_EQ(a[k].solver, b[k].solver);
    EXPECT_EQ(a[k].budget, b[k].budget);
    EXPECT_EQ(a[k].P, b[k].P);
    EXPECT_EQ(a[k].best_E, b[k].best_E);
    EXPECT_EQ(a[k].reference_E, b[k].reference_E);
  }
}

TEST(ScalingFitTest, SyntheticPowerLaws) {
  const std::vector<double> n = {64, 128, 256, 512};
  std::vector<double> lin, quad;
  for (double x : n) {
    lin.push_back(3e-6 * x);
    quad.push_back(2e-8 * x * x);
  }
  const auto a = fit_power_law(n, lin);
  EXPECT_NEAR(a.exponent, 1.0, 0.01);
  EXPECT_TRUE(a.bounded);
  EXPECT_LE(a.ci_low, a.exponent);
  EXPECT_GE(a.ci_high, a.exponent);
  EXPECT_NEAR(fit_power_law(n, quad).exponent, 2.0, 0.01);
}

TEST(ScalingFitTest, InfiniteMedianIsUnbounded) {
  const std::vector<double> n = {1, 2, 3};
  const std::vector<double> t = {1, 2, kInf};
  const auto f = fit_power_law(n, t);
  EXPECT_FALSE(f.bounded);
  EXPECT_EQ(f.exponent, kInf);
}

TEST(ScalingFitTest, TooFewSizes) {
  const std::vector<double> n = {1, 2, 2};
  const std::vector<double> t = {1, 2, 2};
  EXPECT_THROW(fit_power_law(n, t), ContractError);
}

ResultRow row(std::string solver, std::size_t n, std::uint64_t inst,
              int budget, double t) {
  ResultRow r;
  r.family = "f";
  r.n = n;
  r.instance_seed = inst;
  r.solver = std::move(solver);
  r.budget = budget;
  r.tts = t;
  r.P = std::isfinite(t) ? 1.0 : 0.0;
  return r;
}

TEST(SummaryTest, OptimalBudgetThenMedian) {
  const std::vector<ResultRow> rows = {
      row("phia", 8, 1, 10, kInf), row("phia", 8, 1, 20, 2.0),
      row("phia", 8, 2, 10, 5.0),  row("phia", 8, 2, 20, 4.0),
      row("phia", 8, 3, 10, 1.0),  row("phia", 8, 3, 20, 1.0)};
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].instances, 3);
  EXPECT_EQ(s[0].median_tts, 2.0);
  EXPECT_EQ(s[0].mean_P, 1.0);
}

TEST(SummaryTest, ScalingReportRatios) {
  std::vector<ResultRow> rows;
  for (std::size_t n : {8u, 16u, 32u}) {
    rows.push_back(row("phia", n, 1, 1, 1e-3 * n));
    rows.push_back(row("sa", n, 1, 1, 1e-3 * n * n));
  }
  const auto report = scaling_report(rows);
  ASSERT_EQ(report.fits.size(), 2u);
  EXPECT_NEAR(report.fits[0].exponent, 1.0, 1e-9);
  EXPECT_NEAR(report.fits[1].exponent, 2.0, 1e-9);
  ASSERT_EQ(report.ratios.size(), 3u);
  EXPECT_NEAR(report.ratios[0].ratio, 1.0 / 8.0, 1e-12);
}

TEST(RecordTest, JsonRoundTrip) {
  ResultRow r = row("gahmc", 64, 123456789012345ull, 32, kInf);
  r.T1 = 0.25;
  r.best_E = -42.5;
  r.reference_E = -43.0;
  r.reference_policy = "sa-ensemble:32x10000sweeps";
  r.runs = 10;
  r.error = "diverged, twice";
  const auto back = row_from_json(row_to_json(r));
  EXPECT_EQ(back.family, r.family);
  EXPECT_EQ(back.instance_seed, r.instance_seed);
  EXPECT_EQ(back.budget, 32);
  EXPECT_EQ(back.tts, kInf);
  EXPECT_EQ(back.best_E, -42.5);
  EXPECT_EQ(back.reference_policy, r.reference_policy);
  EXPECT_EQ(back.error, r.error);

  std::stringstream stream;
  stream << "{\"record\":\"config\"}\n" << row_to_json(r) << "\n\n";
  const auto rows = read_rows(stream);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].solver, "gahmc");
}

TEST(RecordTest, CsvLayout) {
  ResultRow r = row("sa", 8, 3, 100, kInf);
  r.error = "a,b";
  EXPECT_EQ(csv_header().substr(0, 33), "family,n,instance_seed,solver,bud");
  EXPECT_EQ(row_to_csv(r), "f,8,3,sa,100,0,0,inf,0,0,,0,0,\"a,b\"");
}

}  // namespace
}  // namespace phia
