// Copyright 2026 The Refocus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <stdexcept>

#include "experiments.hpp"
#include "refocus/analytics.hpp"

namespace refocus::cli {
namespace {

TEST(FormatDouble, RoundTripsWithDotSeparator) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  for (double v : {0.1, 1.0 / 3.0, 5.4e-3, 1e-300, -2.5e7}) {
    const std::string s = format_double(v);
    EXPECT_EQ(s.find(','), std::string::npos);
    EXPECT_EQ(std::stod(s), v);
  }
}

TEST(StateList, ParsesRealAndComplexEntries) {
  const auto a = parse_state_list("1,0,0,0");
  EXPECT_EQ(a[0], Complex(1.0));
  const auto b = parse_state_list("0.5, 0.5, 0.5i, -0.5i");
  EXPECT_EQ(b[2], Complex(0.0, 0.5));
  EXPECT_EQ(b[3], Complex(0.0, -0.5));
  const auto c = parse_state_list("1-2i,i,-i,3+4i");
  EXPECT_EQ(c[0], Complex(1.0, -2.0));
  EXPECT_EQ(c[1], Complex(0.0, 1.0));
  EXPECT_EQ(c[2], Complex(0.0, -1.0));
  EXPECT_EQ(c[3], Complex(3.0, 4.0));
  EXPECT_THROW(parse_state_list("1,0,0"), std::invalid_argument);
  EXPECT_THROW(parse_state_list("1,0,0,x"), std::invalid_argument);
}

TEST(StateList, AmplitudeOrder) {
  const auto s = state_from_cnot_amplitudes({0.0, 0.0, 1.0, 0.0});
  EXPECT_EQ(s[0b10], Complex(1.0));
  const auto t = state_from_cnot_amplitudes({0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(t[0b01], Complex(1.0));
}

TEST(GitHash, MatchesGitObjectIds) {
  EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(git_blob_hash("hello world\n"), "3b18e512dba79e4c8300dd08aeb37f8e728b8dad");
}

TEST(Table1, NoiselessRowsAreZero) {
  Table1Options o;
  o.e = 0.0;
  o.trials = 100;
  const auto r = run_table1(o);
  ASSERT_FALSE(r.artifacts.empty());
  std::istringstream csv(r.artifacts[0].content);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "repetitions,numeric,approximated,std_error");
  for (const char* reps : {"3", "5"}) {
    std::getline(csv, line);
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    EXPECT_EQ(cell, reps);
    std::getline(row, cell, ',');
    EXPECT_LT(std::abs(std::stod(cell)), 1e-20);  // round-off only
    std::getline(row, cell, ',');
    EXPECT_EQ(cell, "0");
  }
  EXPECT_TRUE(r.passed());
}

TEST(Table1, ByteIdenticalReruns) {
  Table1Options o;
  o.trials = 3000;
  o.seed = 42;
  o.input_sweep = 2;
  o.sweep_trials = 500;
  o.workers = 1;
  const auto a = run_table1(o);
  o.workers = 3;
  const auto b = run_table1(o);
  ASSERT_EQ(a.artifacts.size(), 2u);
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content);
  o.seed = 43;
  EXPECT_NE(run_table1(o).artifacts[0].content, a.artifacts[0].content);
}

TEST(Threshold, SinglePointMatchesLibrary) {
  ThresholdCommandOptions o;
  o.points = 1;
  o.eps2_min = 2e-6;
  o.eps2_max = 2e-6;
  const auto r = run_threshold(o);
  const std::vector<double> grid{2e-6};
  const auto lib = analytics::threshold_curve(1e-4, grid);
  EXPECT_EQ(r.artifacts[0].content, "eps2,threshold,best_n\n" + format_double(2e-6) + "," +
                                        format_double(lib[0].threshold) + "," +
                                        std::to_string(lib[0].best_n) + "\n");
  o.points = 0;
  EXPECT_THROW(run_threshold(o), std::invalid_argument);
}

TEST(CnotDemo, NoiseOffReportsIdealBranches) {
  CnotDemoOptions o;
  o.state = {0.5, 0.5, Complex(0, 0.5), Complex(0, 0.5)};
  o.noise_off = true;
  const auto r = run_cnot_demo(o);
  EXPECT_TRUE(r.passed());
  const auto j = Json::parse(r.artifacts[0].content);
  ASSERT_TRUE(j.contains("branches"));
  double total = 0.0;
  for (const auto& b : j["branches"]) {
    total += b["probability"].get<double>();
    EXPECT_NEAR(b["fidelity"].get<double>(), 1.0, 1e-10);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CnotDemo, RejectsUnnormalizedState) {
  CnotDemoOptions o;
  o.state = {0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(run_cnot_demo(o), std::invalid_argument);
}

TEST(Manifest, RecordsOutputsAndHashes) {
  CommandResult r;
  r.command = "threshold";
  r.params = Json{{"T", 1e-4}};
  r.seed = 0;
  r.artifacts.push_back({"", "abc\n"});
  r.checks.push_back({"x", true, ""});
  const auto j = Json::parse(build_manifest(r, "1.0.0", 0.25, "2026-01-01T00:00:00Z", {"out.csv"}));
  EXPECT_EQ(j["command"], "threshold");
  EXPECT_EQ(j["version"], "1.0.0");
  EXPECT_EQ(j["seed"], 0);
  EXPECT_EQ(j["outputs"][0]["path"], "out.csv");
  EXPECT_EQ(j["outputs"][0]["bytes"], 4);
  EXPECT_EQ(j["outputs"][0]["git_blob_sha1"], git_blob_hash("abc\n"));
  EXPECT_EQ(j["passed"], true);
}

}  // namespace
}  // namespace refocus::cli
