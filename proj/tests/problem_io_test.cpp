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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "phia/error.hpp"
#include "phia/problems.hpp"

namespace phia {
namespace {

std::size_t ErrorLine(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

TEST(ProblemIoTest, ParsesCouplingsFieldsAndComments) {
  const auto p = parse_problem(
      "# a comment\n"
      "ising 3\n"
      "J 0 1 1\n"
      "J 1 2 -0.5   # trailing comment\n"
      "\n"
      "h 2 0.25\n");
  ASSERT_EQ(p.size(), 3u);
  ASSERT_EQ(p.couplings().size(), 2u);
  EXPECT_EQ(p.couplings()[1].value, -0.5);
  EXPECT_EQ(p.fields()[2], 0.25);
  EXPECT_EQ(p.fields()[0], 0.0);
}

TEST(ProblemIoTest, AcceptsRatios) {
  const auto p = parse_problem("ising 2\nJ 0 1 -3/4\nh 1 1/8\n");
  EXPECT_EQ(p.couplings()[0].value, -0.75);
  EXPECT_EQ(p.fields()[1], 0.125);
}

TEST(ProblemIoTest, TwoSpinRoundTrip) {
  const IsingProblem p(2, {{0, 1, 1.5}}, {0.0, -2.0});
  const auto text = format_problem(p);
  EXPECT_EQ(parse_problem(text), p);
  EXPECT_EQ(format_problem(parse_problem(text)), text);
}

TEST(ProblemIoTest, GeneratedFilesAreCanonical) {
  for (Family f : kAllFamilies) {
    GenSpec spec;
    spec.family = f;
    spec.n = 12;
    spec.seed = 5;
    const auto text = format_problem(generate(spec));
    EXPECT_EQ(format_problem(parse_problem(text)), text) << family_name(f);
  }
}

TEST(ProblemIoTest, SaveLoadByteIdentical) {
  GenSpec spec;
  spec.family = Family::kSpinModel;
  spec.n = 20;
  spec.seed = 9;
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "phia_io_a.txt";
  const auto b = dir / "phia_io_b.txt";
  save_problem(a, generate(spec));
  save_problem(b, load_problem(a));
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(ProblemIoTest, MetadataSurvivesRoundTrip) {
  const auto p = parse_problem(
      "ising 2\n#@ family sk_ising\n#@ seed 12\n#@ note hello\nJ 0 1 1\n");
  EXPECT_EQ(p.metadata().family, "sk_ising");
  ASSERT_TRUE(p.metadata().seed.has_value());
  EXPECT_EQ(*p.metadata().seed, 12u);
  EXPECT_EQ(p.metadata().extra.at("note"), "hello");
  EXPECT_EQ(parse_problem(format_problem(p)), p);
}

TEST(ProblemIoTest, DuplicatePairNamesItsLine) {
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 1 1\nJ 0 1 2\n"), 3u);
  try {
    parse_problem("ising 2\nJ 0 1 1\nJ 0 1 2\n");
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ProblemIoTest, RejectsMalformedInput) {
  EXPECT_EQ(ErrorLine("ising 2\nJ 1 0 1\n"), 2u);        // i > j
  EXPECT_EQ(ErrorLine("ising 2\nJ 1 1 1\n"), 2u);        // self coupling
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 2 1\n"), 2u);        // out of range
  EXPECT_EQ(ErrorLine("ising 2\nh 2 1\n"), 2u);          // out of range
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 1 nan\n"), 2u);      // non-finite
  EXPECT_EQ(ErrorLine("ising 2\nh 0 inf\n"), 2u);        // non-finite
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 1 1e999\n"), 2u);    // overflow
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 1 1/0\n"), 2u);      // zero denominator
  EXPECT_EQ(ErrorLine("ising 2\nJ 0 1\n"), 2u);          // missing value
  EXPECT_EQ(ErrorLine("ising 2\nQ 0 1 1\n"), 2u);        // unknown record
  EXPECT_EQ(ErrorLine("ising 2\nh 0 1\nh 0 2\n"), 3u);   // duplicate field
  EXPECT_EQ(ErrorLine("ising 0\n"), 1u);                 // empty problem
  EXPECT_EQ(ErrorLine("ising 2\nising 2\n"), 2u);        // second header
  EXPECT_EQ(ErrorLine("J 0 1 1\n"), 1u);                 // missing header
}

TEST(ProblemIoTest, EmptyInputIsError) {
  EXPECT_THROW(parse_problem(""), ParseError);
}

TEST(ProblemIoTest, MissingFileIsIoError) {
  EXPECT_THROW(load_problem("/nonexistent/dir/problem.txt"), IoError);
}

}  // namespace
}  // namespace phia
