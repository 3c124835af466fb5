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


#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phia/annealer.hpp"
#include "phia/baselines.hpp"
#include "phia/bench.hpp"
#include "phia/cycle_model.hpp"
#include "phia/error.hpp"
#include "phia/fixedpoint.hpp"
#include "phia/model.hpp"
#include "phia/problem_io.hpp"
#include "phia/problems.hpp"
#include "phia/rng.hpp"

namespace phia::cli {
namespace {

using nlohmann::ordered_json;

const std::map<std::string, BetaRule> kBetaRules = {
    {"geometric", BetaRule::kGeometric}, {"adaptive", BetaRule::kAdaptive}};
const std::map<std::string, AcceptRule> kAcceptRules = {
    {"always", AcceptRule::kAlways}, {"metropolis", AcceptRule::kMetropolis}};
const std::map<std::string, GradientMode> kGradientModes = {
    {"hard", GradientMode::kHardSign}, {"smoothed", GradientMode::kFullySmoothed}};

template <typename Enum>
std::string name_of(const std::map<std::string, Enum>& table, Enum value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

std::vector<std::string> family_names() {
  std::vector<std::string> names;
  for (Family f : kAllFamilies) names.emplace_back(family_name(f));
  return names;
}

const std::vector<std::string> kSolverNames = {"phia", "phia-fixed", "sa",
                                               "gahmc"};

// Every solver knob, bound one-to-one to a flag. The schedule is shared by
// all solvers.
struct SolverOptions {
  SolverSpec spec;
  BetaSchedule schedule;
  std::string beta_rule = "geometric";
  std::string accept = "always";
  std::string gradient = "hard";
};

void add_solver_flags(CLI::App* app, SolverOptions& o) {
  auto& a = o.spec.anneal;
  app->add_option("--gamma", a.hmc.gamma, "tanh sharpness")->capture_default_str();
  app->add_option("--epsilon", a.hmc.epsilon, "EM step size")->capture_default_str();
  app->add_option("--steps", a.hmc.steps, "EM steps per trajectory (L)")
      ->capture_default_str();
  app->add_option("--outer-steps", a.outer_steps,
                  "trajectories per run (phia, phia-fixed)")
      ->capture_default_str();
  app->add_option("--accept", o.accept, "trajectory acceptance rule")
      ->check(CLI::IsMember({"always", "metropolis"}))
      ->capture_default_str();
  app->add_option("--gradient", o.gradient, "momentum force form")
      ->check(CLI::IsMember({"hard", "smoothed"}))
      ->capture_default_str();
  app->add_option("--beta-start", o.schedule.beta_start)->capture_default_str();
  app->add_option("--beta-end", o.schedule.beta_end)->capture_default_str();
  app->add_option("--beta-rule", o.beta_rule)
      ->check(CLI::IsMember({"geometric", "adaptive"}))
      ->capture_default_str();
  app->add_option("--adapt-target", o.schedule.adapt_target,
                  "target acceptance rate of the adaptive rule")
      ->capture_default_str();
  app->add_option("--sweeps", o.spec.sa.sweeps, "sweeps per run (sa)")
      ->capture_default_str();
  app->add_option("--trajectory-time", o.spec.gahmc.trajectory_time,
                  "integration time per trajectory (gahmc)")
      ->capture_default_str();
  app->add_option("--gahmc-outer-steps", o.spec.gahmc.outer_steps,
                  "trajectories per run (gahmc)")
      ->capture_default_str();
  app->add_option("--max-events", o.spec.gahmc.max_events,
                  "zero crossings allowed per trajectory (gahmc)")
      ->capture_default_str();
  app->add_option("--total-bits", o.spec.format.total_bits,
                  "fixed-point word size (phia-fixed)")
      ->capture_default_str();
  app->add_option("--frac-bits", o.spec.format.frac_bits,
                  "fixed-point fraction bits (phia-fixed)")
      ->capture_default_str();
}

// Copies the shared fields into every solver config and validates.
SolverSpec resolve(const SolverOptions& o, SolverKind kind) {
  SolverSpec spec = o.spec;
  spec.kind = kind;
  BetaSchedule schedule = o.schedule;
  schedule.rule = kBetaRules.at(o.beta_rule);
  spec.anneal.schedule = spec.sa.schedule = spec.gahmc.schedule = schedule;
  spec.anneal.accept_rule = kAcceptRules.at(o.accept);
  spec.anneal.gradient_mode = kGradientModes.at(o.gradient);
  switch (kind) {
    case SolverKind::kPhia:
      spec.anneal.validate();
      break;
    case SolverKind::kPhiaFixed:
      spec.anneal.validate();
      spec.format.validate();
      break;
    case SolverKind::kSa:
      spec.sa.validate();
      break;
    case SolverKind::kGahmc:
      spec.gahmc.validate();
      break;
  }
  return spec;
}

ordered_json schedule_json(const BetaSchedule& s) {
  return {{"beta_start", s.beta_start},
          {"beta_end", s.beta_end},
          {"beta_rule", name_of(kBetaRules, s.rule)},
          {"adapt_target", s.adapt_target}};
}

ordered_json config_json(const SolverSpec& spec) {
  ordered_json j;
  j["solver"] = std::string(solver_name(spec.kind));
  switch (spec.kind) {
    case SolverKind::kPhia:
    case SolverKind::kPhiaFixed: {
      const auto& a = spec.anneal;
      j["gamma"] = a.hmc.gamma;
      j["epsilon"] = a.hmc.epsilon;
      j["steps"] = a.hmc.steps;
      j["outer_steps"] = a.outer_steps;
      j["accept"] = name_of(kAcceptRules, a.accept_rule);
      j["gradient"] = name_of(kGradientModes, a.gradient_mode);
      j["schedule"] = schedule_json(a.schedule);
      if (spec.kind == SolverKind::kPhiaFixed) {
        j["total_bits"] = spec.format.total_bits;
        j["frac_bits"] = spec.format.frac_bits;
      }
      break;
    }
    case SolverKind::kSa:
      j["sweeps"] = spec.sa.sweeps;
      j["schedule"] = schedule_json(spec.sa.schedule);
      break;
    case SolverKind::kGahmc:
      j["trajectory_time"] = spec.gahmc.trajectory_time;
      j["outer_steps"] = spec.gahmc.outer_steps;
      j["max_events"] = spec.gahmc.max_events;
      j["schedule"] = schedule_json(spec.gahmc.schedule);
      break;
  }
  return j;
}

std::string spin_string(const SpinConfig& s) {
  std::string out(s.size(), '+');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) out[i] = '-';
  }
  return out;
}

Family to_family(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw ContractError("unknown family " + name);
  return *f;
}

SolverKind to_solver(const std::string& name) {
  const auto k = parse_solver(name);
  if (!k) throw ContractError("unknown solver " + name);
  return *k;
}

// Writes to `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string family;
  GenSpec spec;
  std::string out;
};

void setup_gen(CLI::App& root, GenOptions& o) {
  auto* app = root.add_subcommand("gen", "generate a benchmark instance");
  app->add_option("--family", o.family)
      ->required()
      ->check(CLI::IsMember(family_names()));
  app->add_option("--n", o.spec.n, "spin count")->required();
  app->add_option("--seed", o.spec.seed)->capture_default_str();
  app->add_option("--edge-probability", o.spec.edge_probability,
                  "maxcut_dense edge probability")
      ->capture_default_str();
  app->add_option("--clause-ratio", o.spec.clause_ratio,
                  "nae_3_sat clauses per variable")
      ->capture_default_str();
  app->add_option("--sparsity", o.spec.sparsity,
                  "sk_uniform probability of a zero coupling")
      ->capture_default_str();
  app->add_option("-o,--out", o.out,
                  "problem file; a .meta.json sidecar is written beside it");
}

int run_gen(GenOptions& o, std::ostream& out) {
  o.spec.family = to_family(o.family);
  const IsingProblem problem = generate(o.spec);
  if (o.out.empty()) {
    write_problem(out, problem);
    return kExitOk;
  }
  save_problem(o.out, problem);
  ordered_json meta;
  meta["family"] = o.family;
  meta["n"] = o.spec.n;
  meta["seed"] = o.spec.seed;
  meta["edge_probability"] = o.spec.edge_probability;
  meta["clause_ratio"] = o.spec.clause_ratio;
  meta["sparsity"] = o.spec.sparsity;
  meta["couplings"] = problem.couplings().size();
  meta["problem"] = o.out;
  Sink sidecar(o.out + ".meta.json", out);
  sidecar.get() << meta.dump(2) << '\n';
  return kExitOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveOptions {
  SolverOptions solver;
  std::string solver_name = "phia";
  std::string problem;
  std::uint64_t seed = 0;
  bool trace = false;
  std::string out;
};

void setup_solve(CLI::App& root, SolveOptions& o) {
  auto* app = root.add_subcommand("solve", "anneal one problem file");
  app->add_option("problem", o.problem, "problem file")->required();
  app->add_option("--solver", o.solver_name)
      ->check(CLI::IsMember(kSolverNames))
      ->capture_default_str();
  app->add_option("--seed", o.seed)->capture_default_str();
  app->add_flag("--trace", o.trace, "include the best-energy trace");
  app->add_option("-o,--out", o.out, "result file (default stdout)");
  add_solver_flags(app, o.solver);
}

int run_solve(const SolveOptions& o, std::ostream& out) {
  SolverSpec spec = resolve(o.solver, to_solver(o.solver_name));
  spec.anneal.record_trace = spec.sa.record_trace = spec.gahmc.record_trace =
      o.trace;
  const IsingProblem problem = [&] {
    try {
      return load_problem(o.problem);
    } catch (const ParseError& e) {
      throw ParseError(0, o.problem + ": " + e.what());
    }
  }();

  RunResult run;
  std::optional<FixedRunResult> fixed;
  switch (spec.kind) {
    case SolverKind::kPhia:
      spec.anneal.seed = o.seed;
      run = anneal(problem, spec.anneal);
      break;
    case SolverKind::kPhiaFixed:
      spec.anneal.seed = o.seed;
      fixed = fx_anneal(problem, spec.anneal, spec.format);
      run = fixed->run;
      break;
    case SolverKind::kSa:
      spec.sa.seed = o.seed;
      run = sa_anneal(problem, spec.sa);
      break;
    case SolverKind::kGahmc:
      spec.gahmc.seed = o.seed;
      run = gahmc_anneal(problem, spec.gahmc);
      break;
  }

  ordered_json j;
  j["record"] = "solve";
  j["problem"] = o.problem;
  j["n"] = problem.size();
  j["family"] = problem.metadata().family;
  j["seed"] = o.seed;
  j["config"] = config_json(spec);
  j["best_E"] = run.best_E;
  j["best_s"] = spin_string(run.best_s);
  if (is_maxcut(problem)) j["cut_value"] = cut_value(problem, run.best_s);
  j["wall_time"] = run.wall_time;
  j["outer_steps_run"] = run.outer_steps_run;
  j["acceptance_rate"] = run.acceptance_rate;
  j["diverged"] = run.diverged;
  if (fixed) {
    j["fixed_best_E"] = fixed->fixed_best_energy;
    j["saturations"] = fixed->saturations;
  }
  if (o.trace) {
    ordered_json trace = ordered_json::array();
    for (const auto& p : run.energy_trace) trace.push_back({p.step, p.best_energy});
    j["trace"] = std::move(trace);
  }
  Sink sink(o.out, out);
  sink.get() << j.dump() << '\n';
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchOptions {
  SolverOptions solver;
  std::vector<std::string> families = {"maxcut_d3"};
  std::vector<std::size_t> sizes;
  std::vector<std::string> solvers = {"phia", "sa"};
  std::vector<int> budgets;
  int instances = 1;
  int runs = 10;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  ReferencePolicy reference;
  GenSpec generator;
  std::string out;
  std::string csv;
};

void setup_bench(CLI::App& root, BenchOptions& o) {
  auto* app = root.add_subcommand("bench", "time-to-solution experiment");
  app->add_option("--families", o.families)
      ->delimiter(',')
      ->check(CLI::IsMember(family_names()))
      ->capture_default_str();
  app->add_option("--sizes", o.sizes, "problem sizes")->delimiter(',')->required();
  app->add_option("--solvers", o.solvers)
      ->delimiter(',')
      ->check(CLI::IsMember(kSolverNames))
      ->capture_default_str();
  app->add_option("--budgets", o.budgets,
                  "budget ladder (outer steps or sweeps) applied to every solver")
      ->delimiter(',');
  app->add_option("--instances", o.instances)->capture_default_str();
  app->add_option("--runs", o.runs, "seeded runs per instance")->capture_default_str();
  app->add_option("--seed", o.seed)->capture_default_str();
  app->add_option("--threads", o.threads)->capture_default_str();
  app->add_option("--ref-brute-force-max", o.reference.brute_force_max_n,
                  "largest n solved by enumeration")
      ->capture_default_str();
  app->add_option("--ref-ensemble", o.reference.ensemble,
                  "SA runs in the reference ensemble")
      ->capture_default_str();
  app->add_option("--ref-multiplier", o.reference.budget_multiplier)
      ->capture_default_str();
  app->add_option("--ref-base-sweeps", o.reference.base_sweeps)
      ->capture_default_str();
  app->add_option("--edge-probability", o.generator.edge_probability)
      ->capture_default_str();
  app->add_option("--clause-ratio", o.generator.clause_ratio)->capture_default_str();
  app->add_option("--sparsity", o.generator.sparsity)->capture_default_str();
  app->add_option("-o,--out", o.out, "JSONL result file (default stdout)");
  app->add_option("--csv", o.csv, "CSV export of the result rows");
  add_solver_flags(app, o.solver);
}

void print_summary(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << std::left << std::setw(14) << "family" << std::setw(8) << "n"
      << std::setw(12) << "solver" << std::setw(11) << "instances"
      << std::setw(10) << "mean_P" << "median_TTS_s\n";
  for (const auto& s : summarize(rows)) {
    std::ostringstream p;
    p << std::setprecision(3) << s.mean_P;
    std::ostringstream t;
    t << std::setprecision(6) << s.median_tts;
    out << std::left << std::setw(14) << s.family << std::setw(8) << s.n
        << std::setw(12) << s.solver << std::setw(11) << s.instances
        << std::setw(10) << p.str() << t.str() << '\n';
  }
}

int run_bench(BenchOptions& o, std::ostream& out) {
  ExperimentSpec spec;
  for (const auto& f : o.families) spec.families.push_back(to_family(f));
  spec.sizes = o.sizes;
  spec.instances = o.instances;
  spec.runs = o.runs;
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.budgets = o.budgets;
  spec.reference = o.reference;
  o.solver.schedule.rule = kBetaRules.at(o.solver.beta_rule);
  spec.reference.schedule = o.solver.schedule;
  spec.generator = o.generator;
  for (const auto& name : o.solvers) {
    spec.solvers.push_back(resolve(o.solver, to_solver(name)));
  }
  spec.validate();

  ordered_json header;
  header["record"] = "config";
  header["families"] = o.families;
  header["sizes"] = o.sizes;
  header["instances"] = o.instances;
  header["runs"] = o.runs;
  header["seed"] = o.seed;
  header["threads"] = o.threads;
  header["budgets"] = o.budgets;
  header["reference"] = {{"brute_force_max_n", o.reference.brute_force_max_n},
                         {"ensemble", o.reference.ensemble},
                         {"budget_multiplier", o.reference.budget_multiplier},
                         {"base_sweeps", o.reference.base_sweeps},
                         {"schedule", schedule_json(spec.reference.schedule)}};
  header["generator"] = {{"edge_probability", o.generator.edge_probability},
                         {"clause_ratio", o.generator.clause_ratio},
                         {"sparsity", o.generator.sparsity}};
  ordered_json solvers = ordered_json::array();
  for (const auto& s : spec.solvers) solvers.push_back(config_json(s));
  header["solvers"] = std::move(solvers);

  const auto rows = run_experiment(spec);

  Sink jsonl(o.out, out);
  jsonl.get() << header.dump() << '\n';
  for (const auto& r : rows) jsonl.get() << row_to_json(r) << '\n';
  if (!o.csv.empty()) {
    Sink csv(o.csv, out);
    csv.get() << csv_header() << '\n';
    for (const auto& r : rows) csv.get() << row_to_csv(r) << '\n';
  }
  if (!o.out.empty()) print_summary(out, rows);
  return kExitOk;
}

// ---- summary ---------------------------------------------------------------

struct SummaryOptions {
  std::vector<std::string> inputs;
  bool fit = false;
  std::string baseline = "sa";
};

void setup_summary(CLI::App& root, SummaryOptions& o) {
  auto* app = root.add_subcommand(
      "summary", "median TTS per (family, n, solver) from bench output");
  app->add_option("inputs", o.inputs, "JSONL files written by bench")->required();
  app->add_flag("--fit", o.fit, "fit log-log TTS exponents (>= 3 sizes)");
  app->add_option("--baseline", o.baseline, "solver for TTS ratios")
      ->capture_default_str();
}

int run_summary(const SummaryOptions& o, std::ostream& out) {
  std::vector<ResultRow> rows;
  for (const auto& path : o.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    auto part = read_rows(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (rows.empty()) throw ContractError("no result rows in input");
  print_summary(out, rows);
  if (!o.fit) return kExitOk;

  const auto report = scaling_report(rows, o.baseline);
  out << '\n';
  for (const auto& f : report.fits) {
    out << f.family << ' ' << f.solver << ": exponent ";
    if (f.bounded) {
      out << format_real(f.exponent) << " (95% CI " << format_real(f.ci_low)
          << " .. " << format_real(f.ci_high) << ")\n";
    } else {
      out << "unbounded (some median TTS is infinite)\n";
    }
  }
  for (const auto& r : report.ratios) {
    out << r.family << " n=" << r.n << ' ' << r.solver << '/' << r.baseline
        << " TTS ratio " << format_real(r.ratio) << '\n';
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  SolverOptions solver;
  std::string solver_name = "phia";
  std::string family = "sk_ising";
  std::size_t n_max = 12;
  int instances = 100;
  std::uint64_t seed = 0;
  double threshold = 0.95;
  bool details = false;
};

void setup_verify(CLI::App& root, VerifyOptions& o) {
  auto* app = root.add_subcommand(
      "verify", "compare solver results with exhaustive ground states");
  app->add_option("--n-max", o.n_max, "instance size (enumerated exactly)")
      ->capture_default_str();
  app->add_option("--instances", o.instances)->capture_default_str();
  app->add_option("--family", o.family)
      ->check(CLI::IsMember(family_names()))
      ->capture_default_str();
  app->add_option("--solver", o.solver_name)
      ->check(CLI::IsMember(kSolverNames))
      ->capture_default_str();
  app->add_option("--seed", o.seed)->capture_default_str();
  app->add_option("--threshold", o.threshold,
                  "fraction below which the exit status is nonzero")
      ->capture_default_str();
  app->add_flag("--details", o.details, "one record per instance");
  o.solver.spec.anneal.outer_steps = 2000;
  add_solver_flags(app, o.solver);
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  const SolverSpec spec = resolve(o.solver, to_solver(o.solver_name));
  if (o.n_max > kBruteForceMaxN) {
    throw ContractError("--n-max exceeds the enumeration limit of " +
                        std::to_string(kBruteForceMaxN));
  }
  if (o.instances < 1) throw ContractError("--instances must be >= 1");
  const Solver solver = make_solver(spec);
  int matches = 0;
  for (int k = 0; k < o.instances; ++k) {
    GenSpec gen;
    gen.family = to_family(o.family);
    gen.n = o.n_max;
    gen.seed = mix_seed(o.seed, static_cast<std::uint64_t>(k));
    const IsingProblem problem = generate(gen);
    const GroundState ground = brute_force_ground(problem);
    const std::uint64_t run_seed = mix_seed(gen.seed, 1);
    const RunResult run = solver(problem, run_seed);
    const bool match =
        run.best_E <= ground.energy + success_tolerance(problem, ground.energy);
    matches += match ? 1 : 0;
    if (o.details) {
      ordered_json d;
      d["record"] = "verify_instance";
      d["instance_seed"] = gen.seed;
      d["run_seed"] = run_seed;
      d["ground_E"] = ground.energy;
      d["best_E"] = run.best_E;
      d["match"] = match;
      out << d.dump() << '\n';
    }
  }
  const double fraction =
      static_cast<double>(matches) / static_cast<double>(o.instances);
  ordered_json j;
  j["record"] = "verify";
  j["family"] = o.family;
  j["n"] = o.n_max;
  j["instances"] = o.instances;
  j["seed"] = o.seed;
  j["config"] = config_json(spec);
  j["matches"] = matches;
  j["fraction"] = fraction;
  j["threshold"] = o.threshold;
  j["passed"] = fraction >= o.threshold;
  out << j.dump() << '\n';
  return fraction >= o.threshold ? kExitOk : kExitVerifyBelowThreshold;
}

// ---- cycles ----------------------------------------------------------------

struct CyclesOptions {
  std::vector<std::size_t> sizes = {32};
  std::vector<std::size_t> steps = {100};
  std::size_t outer_steps = 1;
  double clk_ns = kDefaultClockNs;
  std::string format = "table";
  bool ledger = false;
};

void setup_cycles(CLI::App& root, CyclesOptions& o) {
  auto* app = root.add_subcommand("cycles", "hardware cycle-cost model");
  app->add_option("--n", o.sizes, "problem sizes")->delimiter(',')->capture_default_str();
  app->add_option("--L", o.steps, "EM iterations per trajectory")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--outer-steps", o.outer_steps)->capture_default_str();
  app->add_option("--clk-ns", o.clk_ns, "clock period")->capture_default_str();
  app->add_option("--format", o.format)
      ->check(CLI::IsMember({"table", "jsonl", "csv"}))
      ->capture_default_str();
  app->add_flag("--ledger", o.ledger, "list every block of the state machine");
}

ordered_json cycles_json(Cycles c) {
  ordered_json j;
  j["exact"] = c.value();
  j["ceil"] = c.ceil();
  return j;
}

int run_cycles(const CyclesOptions& o, std::ostream& out) {
  if (o.outer_steps < 1) throw ContractError("--outer-steps must be >= 1");
  if (!(o.clk_ns > 0.0)) throw ContractError("--clk-ns must be positive");
  if (o.format == "csv") {
    out << "n,L,T_s1,T_s2,T_d,T_s3,T_est,T_est_ceil,T_est_ns,trace_matches\n";
  }
  for (std::size_t n : o.sizes) {
    for (std::size_t steps : o.steps) {
      if (n < 1 || steps < 1) throw ContractError("n and L must be >= 1");
      const CycleEstimate est = cycle_estimate(n, steps, o.clk_ns);
      const CycleLedger ledger =
          state_machine_trace(n, steps, o.outer_steps, o.clk_ns);
      const bool matches =
          ledger.state_total(ControlState::kInitialization) == est.s1 &&
          ledger.state_total(ControlState::kFirstMomentumUpdate) == est.s2 &&
          ledger.state_total(ControlState::kEmIterations) == est.s3 &&
          ledger.run_total() == est.est;

      if (o.format == "csv") {
        out << n << ',' << steps << ',' << est.s1.str() << ',' << est.s2.str()
            << ',' << est.d.str() << ',' << est.s3.str() << ','
            << est.est.str() << ',' << est.est.ceil() << ','
            << format_real(est.est_ns()) << ',' << (matches ? 1 : 0) << '\n';
        continue;
      }
      if (o.format == "jsonl") {
        ordered_json j;
        j["record"] = "cycles";
        j["n"] = n;
        j["L"] = steps;
        j["clk_ns"] = o.clk_ns;
        j["T_s1"] = cycles_json(est.s1);
        j["T_s2"] = cycles_json(est.s2);
        j["T_d"] = cycles_json(est.d);
        j["T_s3"] = cycles_json(est.s3);
        j["T_est"] = cycles_json(est.est);
        j["T_est_ns"] = est.est_ns();
        j["trace_matches"] = matches;
        out << j.dump() << '\n';
        if (o.ledger) {
          for (const auto& e : ledger.entries) {
            ordered_json b;
            b["record"] = "ledger";
            b["n"] = n;
            b["L"] = steps;
            b["outer_step"] = e.outer_step;
            b["state"] = static_cast<int>(e.state);
            b["iteration"] = e.iteration;
            b["block"] = e.block;
            b["cycles"] = e.cycles.value();
            out << b.dump() << '\n';
          }
        }
        continue;
      }

      out << "n=" << n << " L=" << steps << " clk=" << format_real(o.clk_ns)
          << "ns\n";
      out << std::left << std::setw(8) << "state" << std::setw(26) << "name"
          << std::setw(12) << "Clk" << "Clk (ceil)\n";
      for (int s = 1; s <= 5; ++s) {
        const auto state = static_cast<ControlState>(s);
        const Cycles total = ledger.state_total(state);
        out << std::left << std::setw(8) << s << std::setw(26)
            << control_state_name(state) << std::setw(12) << total.str()
            << total.ceil() << '\n';
      }
      out << "T_s1=" << est.s1.str() << " T_s2=" << est.s2.str()
          << " T_d=" << est.d.str() << " T_s3=" << est.s3.str()
          << " T_est=" << est.est.str() << " (ceil " << est.est.ceil() << ") = "
          << format_real(est.est_ns() / 1000.0) << " us\n";
      out << "states 1-3 match the closed form: " << (matches ? "yes" : "no")
          << "\n";
      if (o.ledger) {
        for (const auto& e : ledger.entries) {
          out << "  [" << static_cast<int>(e.state) << "]";
          if (e.iteration > 0) out << " iter " << e.iteration;
          out << ' ' << e.block << ": " << e.cycles.str() << '\n';
        }
      }
      out << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gradient-based HMC Ising annealer", "phia"};
  app.require_subcommand(1, 1);

  GenOptions gen;
  SolveOptions solve;
  BenchOptions bench;
  SummaryOptions summary;
  VerifyOptions verify;
  CyclesOptions cycles;
  setup_gen(app, gen);
  setup_solve(app, solve);
  setup_bench(app, bench);
  setup_summary(app, summary);
  setup_verify(app, verify);
  setup_cycles(app, cycles);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "gen") return run_gen(gen, out);
    if (name == "solve") return run_solve(solve, out);
    if (name == "bench") return run_bench(bench, out);
    if (name == "summary") return run_summary(summary, out);
    if (name == "verify") return run_verify(verify, out);
    if (name == "cycles") return run_cycles(cycles, out);
  } catch (const ParseError& e) {
    err << "error: malformed problem file: " << e.what() << '\n';
    return kExitBadProblemFile;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ContractError& e) {
    err << "error: invalid argument: " << e.what() << '\n';
    return kExitInvalidArgument;
  } catch (const GenerationError& e) {
    err << "error: invalid generator request: " << e.what() << '\n';
    return kExitInvalidArgument;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace phia::cli
