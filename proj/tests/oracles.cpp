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


#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace phia::oracle {

Dense dense(const IsingProblem& problem) {
  Dense d;
  d.n = problem.size();
  d.J.assign(d.n * d.n, 0.0);
  for (const auto& c : problem.couplings()) {
    d.J[c.i * d.n + c.j] += c.value;
    d.J[c.j * d.n + c.i] += c.value;
  }
  d.h.assign(problem.fields().begin(), problem.fields().end());
  return d;
}

double energy(const Dense& d, const std::vector<int>& s) {
  if (s.size() != d.n) throw std::invalid_argument("oracle: size mismatch");
  long double e = 0.0L;
  for (std::size_t i = 0; i < d.n; ++i) {
    for (std::size_t j = i + 1; j < d.n; ++j) {
      e -= static_cast<long double>(d.J[i * d.n + j]) * s[i] * s[j];
    }
    e -= static_cast<long double>(d.h[i]) * s[i];
  }
  return static_cast<double>(e);
}

std::vector<int> spins_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ((mask >> i) & 1u) ? -1 : 1;
  return s;
}

Ground ground(const Dense& d) {
  if (d.n > 22) throw std::invalid_argument("oracle: n too large");
  Ground g;
  g.energy = energy(d, spins_from_mask(0, d.n));
  g.count = 1;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << d.n); ++m) {
    const double e = energy(d, spins_from_mask(m, d.n));
    const double tol = 1e-9 * (1.0 + std::abs(g.energy));
    if (e < g.energy - tol) {
      g.energy = e;
      g.count = 1;
    } else if (e <= g.energy + tol) {
      ++g.count;
    }
  }
  return g;
}

IsingProblem random_problem(std::size_t n, double density, std::uint64_t seed,
                            bool integer, bool fields) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<Coupling> couplings;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(gen) >= density) continue;
      const double v = integer ? (unit(gen) < 0.5 ? -1.0 : 1.0) : sym(gen);
      if (v != 0.0) couplings.push_back({i, j, v});
    }
  }
  std::vector<double> h(n, 0.0);
  if (fields) {
    for (auto& x : h) x = integer ? std::round(3.0 * sym(gen)) : sym(gen);
  }
  return IsingProblem(n, std::move(couplings), std::move(h));
}

std::vector<int> random_spins(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<int> s(n);
  for (auto& x : s) x = (gen() & 1u) ? 1 : -1;
  return s;
}

}  // namespace phia::oracle
