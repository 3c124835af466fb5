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

#ifndef PHIA_BENCH_HPP_
#define PHIA_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phia/annealer.hpp"
#include "phia/baselines.hpp"
#include "phia/fixedpoint.hpp"
#include "phia/model.hpp"
#include "phia/problems.hpp"

namespace phia {

inline constexpr double kTtsConfidence = 0.99;

/// Time to reach the target with 99% confidence from single runs of
/// duration t1 that succeed with probability p:
///   t1 * max(1, log(1 - 0.99) / log(1 - p)),
/// +infinity for p = 0. Throws ContractError for t1 <= 0 or p outside [0, 1].
double tts(double t1, double p);

/// The same quantity with the run count rounded up to an integer,
/// t1 * max(1, ceil(log(0.01) / log(1 - p))).
double tts_whole_runs(double t1, double p);

struct TtsRecord {
  double T1 = 0.0;  // mean wall time of the runs that completed, seconds
  double P = 0.0;   // successes / runs
  double tts = 0.0;
  int runs = 0;
  int successes = 0;
  int failures = 0;  // runs that threw
  double best_E = 0.0;
};

enum class SolverKind { kPhia, kPhiaFixed, kSa, kGahmc };

std::string_view solver_name(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view name);

/// A solver id with its configuration. The per-run seed replaces the seed
/// stored in the nested config.
struct SolverSpec {
  SolverKind kind = SolverKind::kPhia;
  AnnealConfig anneal;
  FixedFormat format;
  SaConfig sa;
  GahmcConfig gahmc;
};

using Solver =
    std::function<RunResult(const IsingProblem& problem, std::uint64_t seed)>;

Solver make_solver(const SolverSpec& spec);

/// The solver's run length: outer steps for phia, phia-fixed and gahmc,
/// sweeps for sa.
int solver_budget(const SolverSpec& spec);
SolverSpec with_budget(SolverSpec spec, int budget);

/// Exact match for integer-coefficient problems (1e-9), otherwise
/// 1e-6 (1 + |reference|).
double success_tolerance(const IsingProblem& problem, double reference);

/// Runs `runs` independently seeded solves; a run succeeds when
/// best_E <= reference + tol.
TtsRecord estimate_success(const IsingProblem& problem, const Solver& solver,
                           double reference_E, int runs, double tol,
                           std::uint64_t base_seed = 0);

inline constexpr std::size_t kBruteForceMaxN = 24;

struct GroundState {
  double energy = 0.0;
  std::uint64_t minimizers = 0;
  SpinConfig argmin;
};

/// Exhaustive minimum by Gray-code enumeration with incremental energy
/// updates. Throws ContractError for n > kBruteForceMaxN.
GroundState brute_force_ground(const IsingProblem& problem);

/// How the target energy of an instance is obtained.
struct ReferencePolicy {
  std::size_t brute_force_max_n = kBruteForceMaxN;
  /// Above brute_force_max_n: best of `ensemble` SA runs with
  /// `budget_multiplier` times `base_sweeps` sweeps each.
  int ensemble = 32;
  int budget_multiplier = 10;
  int base_sweeps = 1000;
  BetaSchedule schedule;
};

struct ReferenceEnergy {
  double energy = 0.0;
  std::string policy;
};

ReferenceEnergy resolve_reference(const IsingProblem& problem,
                                  const ReferencePolicy& policy,
                                  std::uint64_t seed);

struct ExperimentSpec {
  std::vector<Family> families;
  std::vector<std::size_t> sizes;
  int instances = 1;
  int runs = 10;
  std::vector<SolverSpec> solvers;
  /// Budget ladder applied to every solver; empty keeps each solver's own.
  /// Summaries keep the lowest TTS over the ladder per instance.
  std::vector<int> budgets;
  ReferencePolicy reference;
  /// Generator knobs; family, n and seed are filled per instance.
  GenSpec generator;
  std::uint64_t seed = 0;
  /// Worker threads; timings are most faithful with 1.
  unsigned threads = 1;

  void validate() const;
};

struct ResultRow {
  std::string family;
  std::size_t n = 0;
  std::uint64_t instance_seed = 0;
  std::string solver;
  int budget = 0;
  double T1 = 0.0;
  double P = 0.0;
  double tts = 0.0;
  double best_E = 0.0;
  double reference_E = 0.0;
  std::string reference_policy;
  int runs = 0;
  int successes = 0;
  std::string error;
};

/// Generates every (family, n, instance), resolves its reference energy and
/// evaluates each solver. Failures are recorded in the row's `error` field.
/// Rows are sorted by (family, n, instance_seed, solver).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Least-squares fit of log(median TTS) against log(n).
struct ScalingFit {
  std::string family;
  std::string solver;
  double exponent = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;   // 95% confidence interval of the exponent
  double ci_high = 0.0;
  /// false when some median TTS is infinite; exponent is then +infinity.
  bool bounded = true;
  std::vector<std::pair<std::size_t, double>> series;  // (n, median TTS)
};

/// Fits tts ~ c n^k. Throws ContractError with fewer than 3 distinct n.
ScalingFit fit_power_law(std::span<const double> sizes,
                         std::span<const double> tts_values);

struct RatioPoint {
  std::string family;
  std::size_t n = 0;
  std::string solver;
  std::string baseline;
  double ratio = 0.0;  // median TTS(solver) / median TTS(baseline)
};

struct ScalingReport {
  std::vector<ScalingFit> fits;
  std::vector<RatioPoint> ratios;
};

/// Per (family, solver) fits of median TTS over instances, plus ratio
/// curves against `baseline` when it is present in the table.
ScalingReport scaling_report(std::span<const ResultRow> rows,
                             std::string_view baseline = "sa");

double median(std::vector<double> values);

/// Median TTS per (family, n, solver), sorted.
struct SummaryRow {
  std::string family;
  std::size_t n = 0;
  std::string solver;
  double median_tts = 0.0;
  double mean_P = 0.0;  // over the per-instance rows that were kept
  int instances = 0;
};

/// Median over instances of the per-instance optimal TTS (minimum over
/// the budgets present), grouped by (family, n, solver).
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);

// Record formats. JSON lines carry fields in the order
// family, n, instance_seed, solver, T1, P, TTS, best_E, reference_E,
// reference_policy, runs, successes, error; TTS is null when infinite.
std::string row_to_json(const ResultRow& row);
ResultRow row_from_json(std::string_view line);
std::vector<ResultRow> read_rows(std::istream& in);
std::string csv_header();
std::string row_to_csv(const ResultRow& row);

}  // namespace phia

#endif  // PHIA_BENCH_HPP_
