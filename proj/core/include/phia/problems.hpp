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

#ifndef PHIA_PROBLEMS_HPP_
#define PHIA_PROBLEMS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "phia/model.hpp"

namespace phia {

enum class Family {
  kMaxcutDense,
  kMaxcutD3,
  kSkBool,
  kSkIsing,
  kSkUniform,
  kNae3Sat,
  kSpinModel,
};

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::kMaxcutDense, Family::kMaxcutD3,  Family::kSkBool,
    Family::kSkIsing,     Family::kSkUniform, Family::kNae3Sat,
    Family::kSpinModel};

std::string_view family_name(Family family);
/// Inverse of family_name; std::nullopt for unknown names.
std::optional<Family> parse_family(std::string_view name);

/// Instance request. Knobs a family does not use are ignored.
struct GenSpec {
  Family family = Family::kSkIsing;
  std::size_t n = 16;
  std::uint64_t seed = 0;
  double edge_probability = 0.5;  // maxcut_dense
  double clause_ratio = 2.1;      // nae_3_sat, clauses = round(ratio * n)
  double sparsity = 0.5;          // sk_uniform, probability of J_ij = 0

  /// Throws GenerationError for infeasible requests.
  void validate() const;
};

/// Draws an instance. Max-cut edges become J_ij = -1 so that minimising E
/// maximises the cut; zero couplings are never stored. Metadata records
/// the family, seed and the knobs the family uses.
IsingProblem generate(const GenSpec& spec);

/// True if the problem carries a max-cut family tag.
bool is_maxcut(const IsingProblem& problem);

/// Number of edges crossing the partition (|edges| - sum_edges s_i s_j) / 2.
/// Throws ContractError unless the problem is a max-cut instance.
long cut_value(const IsingProblem& problem, const SpinConfig& s);

}  // namespace phia

#endif  // PHIA_PROBLEMS_HPP_
