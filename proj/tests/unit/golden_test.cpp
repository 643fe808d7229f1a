// Copyright 2026 The qtransistor Authors
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

// Sweep summaries from the shipped configs, pinned after the first run.
// Summary values are evaluated at the report time directly, so a coarse
// plotting grid does not change them.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "qtransistor/app/scenarios.hpp"

namespace qtransistor::app {
namespace {

namespace fs = std::filesystem;
constexpr double kGoldenTolerance = 1e-9;

std::vector<std::vector<double>> rows_of(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

void compare_summaries(const std::string& config, const std::string& prefix) {
  const std::string src = QTRANSISTOR_SOURCE_DIR;
  const auto c = validate_config(read_text_file(src + "/configs/" + config),
                                 std::vector{Override::parse("time.n_points=3")});
  const fs::path out = fs::temp_directory_path() / ("qtransistor_golden_" + prefix);
  fs::remove_all(out);
  const RunResult r = run_scenario(c, out);
  ASSERT_TRUE(r.ok());
  for (const std::string kind : {"transfer", "blockade"}) {
    const auto got = rows_of(read_text_file((out / (kind + "_summary.csv")).string()));
    const auto want =
        rows_of(read_text_file(src + "/tests/golden/" + prefix + "_" + kind + "_summary.csv"));
    ASSERT_EQ(got.size(), want.size()) << kind;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i][0], want[i][0]) << kind << " row " << i;
      EXPECT_NEAR(got[i][1], want[i][1], kGoldenTolerance) << kind << " row " << i;
    }
  }
  fs::remove_all(out);
}

TEST(Golden, LindbladSweepSummaries) { compare_summaries("lindblad-sweep.conf", "lindblad"); }

TEST(Golden, MilburnSweepSummaries) { compare_summaries("milburn-sweep.conf", "milburn"); }

}  // namespace
}  // namespace qtransistor::app
