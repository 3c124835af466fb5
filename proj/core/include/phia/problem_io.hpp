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

#ifndef PHIA_PROBLEM_IO_HPP_
#define PHIA_PROBLEM_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "phia/model.hpp"

namespace phia {

// Text problem format, one record per line:
//
//   ising <n>
//   J <i> <j> <value>      (0-based, i < j)
//   h <i> <value>
//   #@ <key> <value>       metadata (family, seed, generator knobs)
//   # anything             comment
//
// Values are decimal integers or fractions. Duplicate pairs, duplicate
// fields, self couplings, out-of-range indices and non-finite values are
// rejected with a ParseError carrying the offending line number.

IsingProblem parse_problem(std::string_view text);
IsingProblem read_problem(std::istream& in);
IsingProblem load_problem(const std::filesystem::path& path);

/// Canonical form: header, sorted metadata, couplings in (i, j) order, then
/// non-zero fields; numbers use the shortest round-trip representation.
std::string format_problem(const IsingProblem& problem);
void write_problem(std::ostream& out, const IsingProblem& problem);
void save_problem(const std::filesystem::path& path,
                  const IsingProblem& problem);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace phia

#endif  // PHIA_PROBLEM_IO_HPP_
