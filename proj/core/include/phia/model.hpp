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

#ifndef PHIA_MODEL_HPP_
#define PHIA_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phia {

/// One coupling J_ij, stored once per unordered pair with i < j.
struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Adjacency entry: the other endpoint and the coupling weight.
struct Neighbor {
  std::size_t index = 0;
  double weight = 0.0;
};

/// Provenance of a problem. `family` is empty for hand-written files.
struct ProblemMetadata {
  std::string family;
  std::optional<std::uint64_t> seed;
  /// Generator knobs and any other key/value annotations.
  std::map<std::string, std::string> extra;

  friend bool operator==(const ProblemMetadata&,
                         const ProblemMetadata&) = default;
};

/// Ising energy landscape
///
///   E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i.
///
/// Couplings are kept in canonical (i, j) order together with a per-row
/// adjacency index, so dense and sparse instances share one representation.
/// Immutable after construction; safe to share between threads.
class IsingProblem {
 public:
  /// Throws ContractError if n == 0, any pair is out of range, has i >= j,
  /// is duplicated, or any coefficient is non-finite.
  IsingProblem(std::size_t n, std::vector<Coupling> couplings,
               std::vector<double> fields, ProblemMetadata metadata = {});

  std::size_t size() const noexcept { return n_; }
  std::span<const Coupling> couplings() const noexcept { return couplings_; }
  std::span<const double> fields() const noexcept { return fields_; }
  std::span<const Neighbor> neighbors(std::size_t i) const;
  const ProblemMetadata& metadata() const noexcept { return metadata_; }

  bool has_fields() const noexcept;
  /// True when every J_ij and h_i is an integer.
  bool integer_coefficients() const noexcept;
  /// Largest |J_ij| or |h_i|; 0 for the zero problem.
  double max_abs_coefficient() const noexcept;

  friend bool operator==(const IsingProblem& a, const IsingProblem& b) {
    return a.n_ == b.n_ && a.couplings_ == b.couplings_ &&
           a.fields_ == b.fields_ && a.metadata_ == b.metadata_;
  }

 private:
  std::size_t n_;
  std::vector<Coupling> couplings_;
  std::vector<double> fields_;
  ProblemMetadata metadata_;
  std::vector<std::size_t> row_offsets_;
  std::vector<Neighbor> adjacency_;
};

/// A configuration s in {-1, +1}^n.
class SpinConfig {
 public:
  SpinConfig() = default;
  /// All spins +1.
  explicit SpinConfig(std::size_t n) : spins_(n, 1) {}
  /// Throws ContractError if any entry is not exactly -1 or +1.
  explicit SpinConfig(std::vector<int> spins);

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  std::span<const std::int8_t> spins() const noexcept { return spins_; }

  void set(std::size_t i, int value);
  void flip(std::size_t i) { spins_.at(i) = static_cast<std::int8_t>(-spins_[i]); }
  SpinConfig flipped(std::size_t i) const;
  SpinConfig negated() const;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

double energy(const IsingProblem& problem, const SpinConfig& s);

/// energy(s with spin i flipped) - energy(s), in O(degree(i)).
double flip_delta(const IsingProblem& problem, const SpinConfig& s,
                  std::size_t i);

/// Local field sum_j J_ij s_j + h_i for spin i.
double local_field(const IsingProblem& problem, const SpinConfig& s,
                   std::size_t i);

/// Unnormalised Boltzmann weight exp(-beta * E). The partition function is
/// never formed. Results that would overflow saturate to the largest finite
/// double instead of returning +inf.
double boltzmann_weight(double energy, double beta);

}  // namespace phia

#endif  // PHIA_MODEL_HPP_
