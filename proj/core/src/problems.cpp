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

#include "phia/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "phia/error.hpp"
#include "phia/problem_io.hpp"
#include "phia/rng.hpp"

namespace phia {
namespace {

constexpr int kMaxRegularAttempts = 10000;

std::string knob(double value) { return format_real(value); }

std::vector<Coupling> all_pairs(std::size_t n, auto&& draw) {
  std::vector<Coupling> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double value = draw();
      if (value != 0.0) out.push_back({i, j, value});
    }
  }
  return out;
}

// Configuration model with whole-pairing rejection of loops and multi-edges.
std::vector<Coupling> random_cubic_graph(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> stubs(3 * n);
  for (int attempt = 0; attempt < kMaxRegularAttempts; ++attempt) {
    for (std::size_t k = 0; k < stubs.size(); ++k) stubs[k] = k / 3;
    for (std::size_t k = stubs.size(); k > 1; --k) {
      std::swap(stubs[k - 1], stubs[rng.below(k)]);
    }
    std::vector<Coupling> edges;
    edges.reserve(stubs.size() / 2);
    bool simple = true;
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < stubs.size(); k += 2) {
      const std::size_t a = std::min(stubs[k], stubs[k + 1]);
      const std::size_t b = std::max(stubs[k], stubs[k + 1]);
      if (a == b) {
        simple = false;
        break;
      }
      seen.emplace_back(a, b);
      edges.push_back({a, b, -1.0});
    }
    if (!simple) continue;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) continue;
    return edges;
  }
  throw GenerationError("could not draw a simple 3-regular graph");
}

std::vector<Coupling> nae_couplings(std::size_t n, std::size_t clauses,
                                    CounterRng& rng) {
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  for (std::size_t c = 0; c < clauses; ++c) {
    std::array<std::size_t, 3> var{};
    var[0] = rng.below(n);
    do var[1] = rng.below(n); while (var[1] == var[0]);
    do var[2] = rng.below(n); while (var[2] == var[0] || var[2] == var[1]);
    std::array<int, 3> pol{};
    for (int& p : pol) p = rng.uniform() < 0.5 ? -1 : 1;
    // sum over literal pairs of l_a l_b is -1 when NAE-satisfied, 3 when not.
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const auto lo = std::min(var[a], var[b]);
        const auto hi = std::max(var[a], var[b]);
        acc[{lo, hi}] -= pol[a] * pol[b];
      }
    }
  }
  std::vector<Coupling> out;
  for (const auto& [pair, value] : acc) {
    if (value != 0.0) out.push_back({pair.first, pair.second, value});
  }
  return out;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kMaxcutDense: return "maxcut_dense";
    case Family::kMaxcutD3: return "maxcut_d3";
    case Family::kSkBool: return "sk_bool";
    case Family::kSkIsing: return "sk_ising";
    case Family::kSkUniform: return "sk_uniform";
    case Family::kNae3Sat: return "nae_3_sat";
    case Family::kSpinModel: return "spin_model";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

void GenSpec::validate() const {
  if (n < 2) throw GenerationError("n must be at least 2");
  switch (family) {
    case Family::kMaxcutD3:
      if (n < 4 || n % 2 != 0) {
        throw GenerationError("maxcut_d3 needs an even n >= 4");
      }
      break;
    case Family::kMaxcutDense:
      if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        throw GenerationError("edge probability must lie in [0, 1]");
      }
      break;
    case Family::kSkUniform:
      if (!(sparsity >= 0.0 && sparsity <= 1.0)) {
        throw GenerationError("sparsity must lie in [0, 1]");
      }
      break;
    case Family::kNae3Sat:
      if (n < 3) throw GenerationError("nae_3_sat needs n >= 3");
      if (!(clause_ratio > 0.0) || !std::isfinite(clause_ratio)) {
        throw GenerationError("clause ratio must be positive");
      }
      break;
    default:
      break;
  }
}

IsingProblem generate(const GenSpec& spec) {
  spec.validate();
  CounterRng rng(spec.seed, StreamPurpose::kGenerator);
  const std::size_t n = spec.n;
  std::vector<double> fields(n, 0.0);
  std::vector<Coupling> couplings;
  ProblemMetadata meta;
  meta.family = std::string(family_name(spec.family));
  meta.seed = spec.seed;

  switch (spec.family) {
    case Family::kMaxcutDense:
      couplings = all_pairs(n, [&] {
        return rng.uniform() < spec.edge_probability ? -1.0 : 0.0;
      });
      meta.extra["edge_probability"] = knob(spec.edge_probability);
      break;
    case Family::kMaxcutD3:
      couplings = random_cubic_graph(n, rng);
      break;
    case Family::kSkBool:
      couplings = all_pairs(n, [&] { return rng.uniform() < 0.5 ? 0.0 : 1.0; });
      break;
    case Family::kSkIsing:
      couplings = all_pairs(n, [&] { return rng.uniform() < 0.5 ? -1.0 : 1.0; });
      break;
    case Family::kSkUniform:
      couplings = all_pairs(n, [&] {
        // Draw both variates so the stream layout is knob-independent.
        const double gate = rng.uniform();
        const double value = rng.uniform();
        return gate < spec.sparsity ? 0.0 : value;
      });
      meta.extra["sparsity"] = knob(spec.sparsity);
      break;
    case Family::kNae3Sat: {
      const auto clauses = static_cast<std::size_t>(
          std::llround(spec.clause_ratio * static_cast<double>(n)));
      couplings = nae_couplings(n, clauses, rng);
      meta.extra["clause_ratio"] = knob(spec.clause_ratio);
      meta.extra["clauses"] = std::to_string(clauses);
      break;
    }
    case Family::kSpinModel:
      couplings = all_pairs(n, [&] { return 2.0 * rng.uniform() - 1.0; });
      for (double& h : fields) h = 2.0 * rng.uniform() - 1.0;
      break;
  }
  return IsingProblem(n, std::move(couplings), std::move(fields),
                      std::move(meta));
}

bool is_maxcut(const IsingProblem& problem) {
  const auto& family = problem.metadata().family;
  return family == family_name(Family::kMaxcutDense) ||
         family == family_name(Family::kMaxcutD3);
}

long cut_value(const IsingProblem& problem, const SpinConfig& s) {
  if (!is_maxcut(problem)) {
    throw ContractError("cut_value needs a max-cut instance, got family '" +
                        problem.metadata().family + "'");
  }
  if (s.size() != problem.size()) {
    throw ContractError("spin configuration does not match problem size");
  }
  long edges = 0;
  long aligned = 0;
  for (const auto& c : problem.couplings()) {
    ++edges;
    aligned += s[c.i] * s[c.j];
  }
  return (edges - aligned) / 2;
}

}  // namespace phia
