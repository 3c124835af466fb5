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

#include "phia/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "phia/error.hpp"

namespace phia {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
           line[pos] != '\r') {
      ++pos;
    }
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "invalid index '" + std::string(tok) + "'");
  }
  return value;
}

double parse_decimal(std::string_view tok, std::string_view whole,
                     std::size_t line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "invalid number '" + std::string(whole) + "'");
  }
  return value;
}

// Decimal literal or a ratio "p/q" of two decimals.
double parse_value(std::string_view tok, std::size_t line_no) {
  double value = 0.0;
  if (const auto slash = tok.find('/'); slash != std::string_view::npos) {
    const double num = parse_decimal(tok.substr(0, slash), tok, line_no);
    const double den = parse_decimal(tok.substr(slash + 1), tok, line_no);
    if (den == 0.0) {
      throw ParseError(line_no, "zero denominator in '" + std::string(tok) + "'");
    }
    value = num / den;
  } else {
    value = parse_decimal(tok, tok, line_no);
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, "non-finite value '" + std::string(tok) + "'");
  }
  return value;
}

void apply_metadata(ProblemMetadata& meta, std::string_view key,
                    std::string value, std::size_t line_no) {
  if (key == "family") {
    meta.family = std::move(value);
  } else if (key == "seed") {
    meta.seed = parse_index(value, line_no);
  } else {
    meta.extra[std::string(key)] = std::move(value);
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw ContractError("cannot format value");
  return std::string(buf, ptr);
}

IsingProblem parse_problem(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Coupling> couplings;
  std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
  std::vector<double> fields;
  std::vector<bool> field_seen;
  ProblemMetadata meta;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (line.starts_with("#@")) {
      auto toks = split_ws(line.substr(2));
      if (toks.size() != 2) {
        throw ParseError(line_no, "metadata lines take '#@ <key> <value>'");
      }
      apply_metadata(meta, toks[0], std::string(toks[1]), line_no);
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto toks = split_ws(line);
    if (toks.empty()) continue;

    if (!n) {
      if (toks[0] != "ising" || toks.size() != 2) {
        throw ParseError(line_no, "expected header 'ising <n>'");
      }
      n = parse_index(toks[1], line_no);
      if (*n == 0) throw ParseError(line_no, "n must be at least 1");
      fields.assign(*n, 0.0);
      field_seen.assign(*n, false);
      continue;
    }

    if (toks[0] == "J") {
      if (toks.size() != 4) {
        throw ParseError(line_no, "coupling lines take 'J <i> <j> <value>'");
      }
      const std::size_t i = parse_index(toks[1], line_no);
      const std::size_t j = parse_index(toks[2], line_no);
      if (i >= *n || j >= *n) {
        throw ParseError(line_no, "index out of range for n = " +
                                      std::to_string(*n));
      }
      if (i == j) throw ParseError(line_no, "self coupling J_ii is not allowed");
      if (i > j) throw ParseError(line_no, "coupling indices must satisfy i < j");
      if (!seen_pairs.emplace(i, j).second) {
        throw ParseError(line_no, "duplicate coupling J " + std::to_string(i) +
                                      " " + std::to_string(j));
      }
      couplings.push_back({i, j, parse_value(toks[3], line_no)});
    } else if (toks[0] == "h") {
      if (toks.size() != 3) {
        throw ParseError(line_no, "field lines take 'h <i> <value>'");
      }
      const std::size_t i = parse_index(toks[1], line_no);
      if (i >= *n) {
        throw ParseError(line_no, "index out of range for n = " +
                                      std::to_string(*n));
      }
      if (field_seen[i]) {
        throw ParseError(line_no, "duplicate field h " + std::to_string(i));
      }
      field_seen[i] = true;
      fields[i] = parse_value(toks[2], line_no);
    } else if (toks[0] == "ising") {
      throw ParseError(line_no, "repeated 'ising' header");
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  if (!n) throw ParseError(0, "missing 'ising <n>' header");
  return IsingProblem(*n, std::move(couplings), std::move(fields),
                      std::move(meta));
}

IsingProblem read_problem(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse_problem(text);
}

IsingProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open problem file " + path.string());
  return read_problem(in);
}

std::string format_problem(const IsingProblem& problem) {
  std::ostringstream out;
  out << "ising " << problem.size() << '\n';
  const auto& meta = problem.metadata();
  if (!meta.family.empty()) out << "#@ family " << meta.family << '\n';
  if (meta.seed) out << "#@ seed " << *meta.seed << '\n';
  for (const auto& [key, value] : meta.extra) {
    out << "#@ " << key << ' ' << value << '\n';
  }
  for (const auto& c : problem.couplings()) {
    out << "J " << c.i << ' ' << c.j << ' ' << format_real(c.value) << '\n';
  }
  const auto h = problem.fields();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != 0.0) out << "h " << i << ' ' << format_real(h[i]) << '\n';
  }
  return out.str();
}

void write_problem(std::ostream& out, const IsingProblem& problem) {
  out << format_problem(problem);
}

void save_problem(const std::filesystem::path& path,
                  const IsingProblem& problem) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write problem file " + path.string());
  write_problem(out, problem);
}

}  // namespace phia
