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

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "phia/error.hpp"
#include "phia/problem_io.hpp"
#include "phia/rng.hpp"

namespace phia {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tts_args(double t1, double p) {
  if (!(t1 > 0.0) || !std::isfinite(t1)) {
    throw ContractError("T1 must be positive and finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractError("success probability must lie in [0, 1]");
  }
}

double run_ratio(double p) {
  return std::log(1.0 - kTtsConfidence) / std::log(1.0 - p);
}

std::uint64_t instance_seed(std::uint64_t base, Family family, std::size_t n,
                            int instance) {
  std::uint64_t s = mix_seed(base, static_cast<std::uint64_t>(family));
  s = mix_seed(s, n);
  return mix_seed(s, static_cast<std::uint64_t>(instance));
}

std::uint64_t run_seed(std::uint64_t base, int run) {
  return mix_seed(base, 1000 + static_cast<std::uint64_t>(run));
}

}  // namespace

double tts(double t1, double p) {
  check_tts_args(t1, p);
  if (p == 0.0) return kInf;
  // Covers p = 1 and avoids log(1 - 0.99) != log(0.01) rounding at 0.99.
  if (p >= kTtsConfidence) return t1;
  return t1 * std::max(1.0, run_ratio(p));
}

double tts_whole_runs(double t1, double p) {
  check_tts_args(t1, p);
  if (p == 0.0) return kInf;
  if (p >= kTtsConfidence) return t1;
  return t1 * std::max(1.0, std::ceil(run_ratio(p)));
}

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kPhia: return "phia";
    case SolverKind::kPhiaFixed: return "phia-fixed";
    case SolverKind::kSa: return "sa";
    case SolverKind::kGahmc: return "gahmc";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (auto kind : {SolverKind::kPhia, SolverKind::kPhiaFixed, SolverKind::kSa,
                    SolverKind::kGahmc}) {
    if (solver_name(kind) == name) return kind;
  }
  return std::nullopt;
}

Solver make_solver(const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::kPhia:
      return [cfg = spec.anneal](const IsingProblem& p, std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return anneal(p, c);
      };
    case SolverKind::kPhiaFixed:
      return [cfg = spec.anneal, fmt = spec.format](const IsingProblem& p,
                                                    std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return fx_anneal(p, c, fmt).run;
      };
    case SolverKind::kSa:
      return [cfg = spec.sa](const IsingProblem& p, std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return sa_anneal(p, c);
      };
    case SolverKind::kGahmc:
      return [cfg = spec.gahmc](const IsingProblem& p, std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return gahmc_anneal(p, c);
      };
  }
  throw ContractError("unknown solver kind");
}

int solver_budget(const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::kPhia:
    case SolverKind::kPhiaFixed:
      return spec.anneal.outer_steps;
    case SolverKind::kSa:
      return spec.sa.sweeps;
    case SolverKind::kGahmc:
      return spec.gahmc.outer_steps;
  }
  throw ContractError("unknown solver kind");
}

SolverSpec with_budget(SolverSpec spec, int budget) {
  if (budget < 1) throw ContractError("budget must be >= 1");
  spec.anneal.outer_steps = budget;
  spec.sa.sweeps = budget;
  spec.gahmc.outer_steps = budget;
  return spec;
}

double success_tolerance(const IsingProblem& problem, double reference) {
  return problem.integer_coefficients() ? 1e-9
                                        : 1e-6 * (1.0 + std::abs(reference));
}

TtsRecord estimate_success(const IsingProblem& problem, const Solver& solver,
                           double reference_E, int runs, double tol,
                           std::uint64_t base_seed) {
  if (runs < 1) throw ContractError("runs must be >= 1");
  TtsRecord rec;
  rec.runs = runs;
  rec.best_E = kInf;
  double time_sum = 0.0;
  int completed = 0;
  for (int k = 0; k < runs; ++k) {
    try {
      const RunResult r = solver(problem, run_seed(base_seed, k));
      time_sum += r.wall_time;
      ++completed;
      rec.best_E = std::min(rec.best_E, r.best_E);
      if (r.best_E <= reference_E + tol) ++rec.successes;
    } catch (const std::exception&) {
      ++rec.failures;
    }
  }
  rec.P = static_cast<double>(rec.successes) / static_cast<double>(runs);
  rec.T1 = completed > 0 ? time_sum / completed : 0.0;
  // A run that finishes below timer resolution still took some time.
  const double t1 = std::max(rec.T1, 1e-9);
  rec.tts = completed > 0 ? tts(t1, rec.P) : kInf;
  return rec;
}

GroundState brute_force_ground(const IsingProblem& problem) {
  const std::size_t n = problem.size();
  if (n > kBruteForceMaxN) {
    throw ContractError("brute force is limited to n <= " +
                        std::to_string(kBruteForceMaxN) +
                        "; use the SA-ensemble reference policy");
  }
  SpinConfig s(n);
  std::vector<double> field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = local_field(problem, s, i);

  double current = energy(problem, s);
  GroundState best{current, 1, s};
  double tol = 1e-9 * (1.0 + std::abs(current));
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    current += 2.0 * s[i] * field[i];
    const double change = -2.0 * s[i];
    s.flip(i);
    for (const auto& nb : problem.neighbors(i)) field[nb.index] += nb.weight * change;

    if (current < best.energy - tol) {
      best.energy = current;
      best.minimizers = 1;
      best.argmin = s;
      tol = 1e-9 * (1.0 + std::abs(current));
    } else if (current <= best.energy + tol) {
      ++best.minimizers;
    }
  }
  best.energy = energy(problem, best.argmin);
  return best;
}

ReferenceEnergy resolve_reference(const IsingProblem& problem,
                                  const ReferencePolicy& policy,
                                  std::uint64_t seed) {
  if (problem.size() <= policy.brute_force_max_n &&
      problem.size() <= kBruteForceMaxN) {
    return {brute_force_ground(problem).energy, "brute-force"};
  }
  SaConfig cfg;
  cfg.sweeps = policy.base_sweeps * policy.budget_multiplier;
  cfg.schedule = policy.schedule;
  double best = kInf;
  for (int k = 0; k < policy.ensemble; ++k) {
    cfg.seed = mix_seed(seed, 0x5A000 + static_cast<std::uint64_t>(k));
    best = std::min(best, sa_anneal(problem, cfg).best_E);
  }
  return {best, "sa-ensemble:" + std::to_string(policy.ensemble) + "x" +
                    std::to_string(cfg.sweeps) + "sweeps"};
}

void ExperimentSpec::validate() const {
  if (families.empty()) throw ContractError("experiment needs a family");
  if (sizes.empty()) throw ContractError("experiment needs at least one n");
  if (solvers.empty()) throw ContractError("experiment needs a solver");
  if (instances < 1 || runs < 1) {
    throw ContractError("instances and runs must be >= 1");
  }
  for (int b : budgets) {
    if (b < 1) throw ContractError("budgets must be >= 1");
  }
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    Family family;
    std::size_t n;
    int instance;
  };
  std::vector<Task> tasks;
  for (Family f : spec.families) {
    for (std::size_t n : spec.sizes) {
      for (int k = 0; k < spec.instances; ++k) tasks.push_back({f, n, k});
    }
  }
  std::vector<SolverSpec> specs;
  for (const auto& s : spec.solvers) {
    if (spec.budgets.empty()) {
      specs.push_back(s);
    } else {
      for (int b : spec.budgets) specs.push_back(with_budget(s, b));
    }
  }
  std::vector<Solver> solvers;
  for (const auto& s : specs) solvers.push_back(make_solver(s));

  std::vector<ResultRow> rows;
  std::mutex rows_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const std::uint64_t iseed =
          instance_seed(spec.seed, task.family, task.n, task.instance);
      std::vector<ResultRow> local;
      ResultRow base;
      base.family = std::string(family_name(task.family));
      base.n = task.n;
      base.instance_seed = iseed;
      try {
        GenSpec gen = spec.generator;
        gen.family = task.family;
        gen.n = task.n;
        gen.seed = iseed;
        const IsingProblem problem = generate(gen);
        const ReferenceEnergy ref =
            resolve_reference(problem, spec.reference, iseed);
        base.reference_E = ref.energy;
        base.reference_policy = ref.policy;
        const double tol = success_tolerance(problem, ref.energy);
        for (std::size_t s = 0; s < solvers.size(); ++s) {
          ResultRow row = base;
          row.solver = std::string(solver_name(specs[s].kind));
          row.budget = solver_budget(specs[s]);
          const TtsRecord rec = estimate_success(problem, solvers[s], ref.energy,
                                                 spec.runs, tol, iseed);
          row.T1 = rec.T1;
          row.P = rec.P;
          row.tts = rec.tts;
          row.best_E = rec.best_E;
          row.runs = rec.runs;
          row.successes = rec.successes;
          if (rec.failures > 0) {
            row.error = std::to_string(rec.failures) + " run(s) failed";
          }
          local.push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        for (const auto& s : specs) {
          ResultRow row = base;
          row.solver = std::string(solver_name(s.kind));
          row.budget = solver_budget(s);
          row.tts = kInf;
          row.best_E = kInf;
          row.error = e.what();
          local.push_back(std::move(row));
        }
      }
      std::lock_guard lock(rows_mutex);
      for (auto& r : local) rows.push_back(std::move(r));
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(spec.threads,
                                      static_cast<unsigned>(tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.family, a.n, a.instance_seed, a.solver, a.budget) <
           std::tie(b.family, b.n, b.instance_seed, b.solver, b.budget);
  });
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ContractError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  const double lo = values[mid - 1];
  const double hi = values[mid];
  if (std::isinf(hi)) return hi;
  return 0.5 * (lo + hi);
}

ScalingFit fit_power_law(std::span<const double> sizes,
                         std::span<const double> tts_values) {
  if (sizes.size() != tts_values.size()) {
    throw ContractError("size and TTS series differ in length");
  }
  std::vector<double> distinct(sizes.begin(), sizes.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) {
    throw ContractError("scaling fit needs at least 3 distinct sizes");
  }
  ScalingFit fit;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    fit.series.emplace_back(static_cast<std::size_t>(sizes[k]), tts_values[k]);
    if (!(sizes[k] > 0.0)) throw ContractError("sizes must be positive");
    if (!std::isfinite(tts_values[k])) fit.bounded = false;
    if (!(tts_values[k] > 0.0)) throw ContractError("TTS values must be positive");
  }
  if (!fit.bounded) {
    fit.exponent = fit.ci_low = fit.ci_high = kInf;
    return fit;
  }
  const std::size_t m = sizes.size();
  std::vector<double> lx(m), ly(m);
  for (std::size_t k = 0; k < m; ++k) {
    lx[k] = std::log(sizes[k]);
    ly[k] = std::log(tts_values[k]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = ly[k] - (fit.intercept + fit.exponent * lx[k]);
    sse += r * r;
  }
  const double dof = static_cast<double>(m) - 2.0;
  const double se = std::sqrt(sse / dof / sxx);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.ci_low = fit.exponent - t * se;
  fit.ci_high = fit.exponent + t * se;
  return fit;
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  // Optimal budget per instance first; ties keep the smaller budget.
  std::map<std::tuple<std::string, std::size_t, std::string, std::uint64_t>,
           const ResultRow*>
      per_instance;
  for (const auto& r : rows) {
    auto& slot = per_instance[{r.family, r.n, r.solver, r.instance_seed}];
    if (slot == nullptr || r.tts < slot->tts ||
        (r.tts == slot->tts && r.budget < slot->budget)) {
      slot = &r;
    }
  }
  std::map<std::tuple<std::string, std::size_t, std::string>,
           std::vector<const ResultRow*>>
      groups;
  for (const auto& [key, r] : per_instance) {
    groups[{r->family, r->n, r->solver}].push_back(r);
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    SummaryRow s;
    std::tie(s.family, s.n, s.solver) = key;
    std::vector<double> values;
    double p_sum = 0.0;
    for (const auto* r : members) {
      values.push_back(r->tts);
      p_sum += r->P;
    }
    s.median_tts = median(values);
    s.mean_P = p_sum / static_cast<double>(members.size());
    s.instances = static_cast<int>(members.size());
    out.push_back(std::move(s));
  }
  return out;
}

ScalingReport scaling_report(std::span<const ResultRow> rows,
                             std::string_view baseline) {
  const auto summary = summarize(rows);
  ScalingReport report;
  std::map<std::pair<std::string, std::string>,
           std::pair<std::vector<double>, std::vector<double>>>
      series;
  for (const auto& s : summary) {
    auto& [ns, ts] = series[{s.family, s.solver}];
    ns.push_back(static_cast<double>(s.n));
    ts.push_back(s.median_tts);
  }
  for (const auto& [key, data] : series) {
    ScalingFit fit = fit_power_law(data.first, data.second);
    fit.family = key.first;
    fit.solver = key.second;
    report.fits.push_back(std::move(fit));
  }
  for (const auto& s : summary) {
    if (s.solver == baseline) continue;
    for (const auto& b : summary) {
      if (b.solver == baseline && b.family == s.family && b.n == s.n) {
        report.ratios.push_back({s.family, s.n, s.solver, std::string(baseline),
                                 s.median_tts / b.median_tts});
      }
    }
  }
  return report;
}

std::string row_to_json(const ResultRow& row) {
  using nlohmann::ordered_json;
  auto number = [](double x) -> ordered_json {
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
  };
  ordered_json j;
  j["family"] = row.family;
  j["n"] = row.n;
  j["instance_seed"] = row.instance_seed;
  j["solver"] = row.solver;
  j["budget"] = row.budget;
  j["T1"] = row.T1;
  j["P"] = row.P;
  j["TTS"] = number(row.tts);
  j["best_E"] = number(row.best_E);
  j["reference_E"] = row.reference_E;
  j["reference_policy"] = row.reference_policy;
  j["runs"] = row.runs;
  j["successes"] = row.successes;
  j["error"] = row.error;
  return j.dump();
}

ResultRow row_from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  auto number = [](const nlohmann::json& v) {
    return v.is_null() ? kInf : v.get<double>();
  };
  ResultRow row;
  row.family = j.at("family").get<std::string>();
  row.n = j.at("n").get<std::size_t>();
  row.instance_seed = j.at("instance_seed").get<std::uint64_t>();
  row.solver = j.at("solver").get<std::string>();
  row.budget = j.value("budget", 0);
  row.T1 = j.at("T1").get<double>();
  row.P = j.at("P").get<double>();
  row.tts = number(j.at("TTS"));
  row.best_E = number(j.at("best_E"));
  row.reference_E = j.at("reference_E").get<double>();
  row.reference_policy = j.at("reference_policy").get<std::string>();
  row.runs = j.at("runs").get<int>();
  row.successes = j.at("successes").get<int>();
  row.error = j.value("error", "");
  return row;
}

std::vector<ResultRow> read_rows(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() != '{') continue;
    const auto j = nlohmann::json::parse(line);
    // Only result rows carry a solver key; skip config/header records.
    if (!j.contains("solver") || !j.contains("TTS")) continue;
    rows.push_back(row_from_json(line));
  }
  return rows;
}

std::string csv_header() {
  return "family,n,instance_seed,solver,budget,T1,P,TTS,best_E,reference_E,"
         "reference_policy,runs,successes,error";
}

std::string row_to_csv(const ResultRow& row) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  auto num = [](double x) { return std::isfinite(x) ? format_real(x) : "inf"; };
  std::ostringstream out;
  out << row.family << ',' << row.n << ',' << row.instance_seed << ','
      << row.solver << ',' << row.budget << ',' << num(row.T1) << ',' << num(row.P) << ','
      << num(row.tts) << ',' << num(row.best_E) << ',' << num(row.reference_E)
      << ',' << quote(row.reference_policy) << ',' << row.runs << ','
      << row.successes << ',' << quote(row.error);
  return out.str();
}

}  // namespace phia
