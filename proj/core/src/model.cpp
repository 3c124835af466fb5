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

#include "phia/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phia/error.hpp"

namespace phia {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_size(const IsingProblem& problem, const SpinConfig& s) {
  if (s.size() != problem.size()) {
    throw ContractError("spin configuration has length " +
                        std::to_string(s.size()) + ", problem has n = " +
                        std::to_string(problem.size()));
  }
}

}  // namespace

IsingProblem::IsingProblem(std::size_t n, std::vector<Coupling> couplings,
                           std::vector<double> fields,
                           ProblemMetadata metadata)
    : n_(n),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)),
      metadata_(std::move(metadata)) {
  if (n_ == 0) throw ContractError("problem must have at least one spin");
  if (fields_.empty()) fields_.assign(n_, 0.0);
  if (fields_.size() != n_) {
    throw ContractError("field vector has length " +
                        std::to_string(fields_.size()) + ", expected " +
                        std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!std::isfinite(fields_[i])) {
      throw ContractError("h_" + std::to_string(i) + " is not finite");
    }
  }
  for (const auto& c : couplings_) {
    if (c.i >= c.j || c.j >= n_) {
      throw ContractError("coupling (" + std::to_string(c.i) + ", " +
                          std::to_string(c.j) +
                          ") violates 0 <= i < j < n");
    }
    if (!std::isfinite(c.value)) {
      throw ContractError("J_" + std::to_string(c.i) + "," +
                          std::to_string(c.j) + " is not finite");
    }
  }
  std::sort(couplings_.begin(), couplings_.end(),
            [](const Coupling& a, const Coupling& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  for (std::size_t k = 1; k < couplings_.size(); ++k) {
    if (couplings_[k].i == couplings_[k - 1].i &&
        couplings_[k].j == couplings_[k - 1].j) {
      throw ContractError("duplicate coupling (" +
                          std::to_string(couplings_[k].i) + ", " +
                          std::to_string(couplings_[k].j) + ")");
    }
  }

  std::vector<std::size_t> degree(n_, 0);
  for (const auto& c : couplings_) {
    ++degree[c.i];
    ++degree[c.j];
  }
  row_offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    row_offsets_[i + 1] = row_offsets_[i] + degree[i];
  }
  adjacency_.resize(row_offsets_[n_]);
  std::vector<std::size_t> cursor(row_offsets_.begin(), row_offsets_.end() - 1);
  // Rows come out sorted by neighbour index because couplings are sorted.
  for (const auto& c : couplings_) {
    adjacency_[cursor[c.i]++] = {c.j, c.value};
  }
  for (const auto& c : couplings_) {
    adjacency_[cursor[c.j]++] = {c.i, c.value};
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) {
                return a.index < b.index;
              });
  }
}

std::span<const Neighbor> IsingProblem::neighbors(std::size_t i) const {
  if (i >= n_) throw ContractError("spin index out of range");
  return std::span<const Neighbor>(adjacency_)
      .subspan(row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]);
}

bool IsingProblem::has_fields() const noexcept {
  return std::any_of(fields_.begin(), fields_.end(),
                     [](double h) { return h != 0.0; });
}

bool IsingProblem::integer_coefficients() const noexcept {
  auto is_int = [](double x) { return std::trunc(x) == x; };
  return std::all_of(fields_.begin(), fields_.end(), is_int) &&
         std::all_of(couplings_.begin(), couplings_.end(),
                     [&](const Coupling& c) { return is_int(c.value); });
}

double IsingProblem::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (double h : fields_) m = std::max(m, std::abs(h));
  for (const auto& c : couplings_) m = std::max(m, std::abs(c.value));
  return m;
}

SpinConfig::SpinConfig(std::vector<int> spins) {
  spins_.reserve(spins.size());
  for (int v : spins) {
    if (v != 1 && v != -1) throw ContractError("spin values must be -1 or +1");
    spins_.push_back(static_cast<std::int8_t>(v));
  }
}

void SpinConfig::set(std::size_t i, int value) {
  if (value != 1 && value != -1) {
    throw ContractError("spin values must be -1 or +1");
  }
  spins_.at(i) = static_cast<std::int8_t>(value);
}

SpinConfig SpinConfig::flipped(std::size_t i) const {
  SpinConfig out = *this;
  out.flip(i);
  return out;
}

SpinConfig SpinConfig::negated() const {
  SpinConfig out = *this;
  for (auto& v : out.spins_) v = static_cast<std::int8_t>(-v);
  return out;
}

double energy(const IsingProblem& problem, const SpinConfig& s) {
  check_size(problem, s);
  CompensatedSum sum;
  for (const auto& c : problem.couplings()) {
    sum.add(-c.value * s[c.i] * s[c.j]);
  }
  const auto h = problem.fields();
  for (std::size_t i = 0; i < h.size(); ++i) sum.add(-h[i] * s[i]);
  return sum.value();
}

double local_field(const IsingProblem& problem, const SpinConfig& s,
                   std::size_t i) {
  check_size(problem, s);
  if (i >= problem.size()) throw ContractError("spin index out of range");
  double field = problem.fields()[i];
  for (const auto& nb : problem.neighbors(i)) field += nb.weight * s[nb.index];
  return field;
}

double flip_delta(const IsingProblem& problem, const SpinConfig& s,
                  std::size_t i) {
  const double field = local_field(problem, s, i);
  return 2.0 * s[i] * field;
}

double boltzmann_weight(double energy, double beta) {
  if (!(beta >= 0.0)) throw ContractError("beta must be non-negative");
  if (beta == 0.0) return 1.0;
  const double w = std::exp(-beta * energy);
  return std::isinf(w) ? std::numeric_limits<double>::max() : w;
}

}  // namespace phia
