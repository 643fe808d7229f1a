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

#include "qtransistor/app/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace qtransistor::app {
namespace {

namespace fs = std::filesystem;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path.string()));
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(fields, cell, ',')) {
      if (first) {
        csv.header.push_back(cell);
      } else {
        row.push_back(std::stod(cell));
      }
    }
    if (!first) csv.rows.push_back(row);
    first = false;
  }
  return csv;
}

class ScenarioTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qtransistor_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(CsvTable, TwelveSignificantDigitsAndLf) {
  CsvTable t({"a", "b"});
  t.add_row({1.0, -0.000123456789012345});
  EXPECT_EQ(t.text(), "a,b\n1.00000000000e+00,-1.23456789012e-04\n");
  EXPECT_THROW(t.add_row({1.0}), DimensionError);
}

TEST(ReportProbability, ClampsAndRecords) {
  RunChecks c;
  EXPECT_EQ(report_probability(0.5, c), 0.5);
  EXPECT_EQ(c.max_clamp_deviation, 0.0);
  EXPECT_EQ(report_probability(1.0 + 3e-12, c), 1.0);
  EXPECT_EQ(report_probability(-1e-13, c), 0.0);
  EXPECT_NEAR(c.max_clamp_deviation, 3e-12, 1e-15);
}

TEST_F(ScenarioTest, ClosedGateCurves) {
  auto c = validate_config("[scenario]\nname = closed-gate\n");
  const RunResult r = run_closed_gate(c, dir_);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.files.size(), 3u);
  const Csv csv = read_csv(dir_ / r.files[0].name);
  EXPECT_EQ(csv.header, (std::vector<std::string>{"delta_t", "p_exact", "p_expansion"}));
  ASSERT_EQ(csv.rows.size(), 2001u);
  EXPECT_EQ(csv.rows[0], (std::vector<double>{0.0, 1.0, 1.0}));
  EXPECT_EQ(csv.rows.back()[0], 20.0);
  double max_diff = 0.0;
  for (const auto& row : csv.rows) max_diff = std::max(max_diff, std::abs(row[1] - row[2]));
  EXPECT_LT(max_diff, 1e-4);
  bool found = false;
  for (const auto& [key, value] : r.checks.extras) {
    if (key == "j_over_delta_0.max_abs_exact_minus_expansion") {
      found = true;
      EXPECT_LT(value, 1e-4);
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(ScenarioTest, ClosedGateWeakCouplingStaysClosed) {
  auto c = validate_config(
      "[scenario]\nname = closed-gate\n[closed_gate]\nj_over_delta = 1e-3\n"
      "[time]\nt_end = 1e4\nn_points = 10001\n");
  const RunResult r = run_closed_gate(c, dir_);
  ASSERT_TRUE(r.ok());
  for (const auto& row : read_csv(dir_ / r.files[0].name).rows) {
    EXPECT_GE(row[1], 0.999);
    EXPECT_GE(row[2], 0.999);
  }
}

TEST_F(ScenarioTest, OpenGateMatchesResonantClosedForms) {
  auto c = validate_config("[scenario]\nname = open-gate\n");
  const RunResult r = run_open_gate(c, dir_);
  ASSERT_TRUE(r.ok());
  const Csv csv = read_csv(dir_ / "open_gate.csv");
  EXPECT_EQ(csv.header,
            (std::vector<std::string>{"t_seconds", "Jt", "p_source", "p_gate", "p_drain"}));
  ASSERT_EQ(csv.rows.size(), 2001u);
  for (const auto& row : csv.rows) {
    const double x = row[1] / kSqrt2;
    const double cs = std::pow(std::cos(x), 4);
    const double sn = std::pow(std::sin(x), 4);
    EXPECT_NEAR(row[2], cs, 1e-9);
    EXPECT_NEAR(row[4], sn, 1e-9);
    EXPECT_NEAR(row[3], 1.0 - cs - sn, 1e-9);
    EXPECT_NEAR(row[2] + row[3] + row[4], 1.0, 1e-9);
  }
  // Grid spans 2 tau_T, so the middle row is tau_T and the quarter row tau_T/2.
  EXPECT_NEAR(csv.rows[1000][1], kPi / kSqrt2, 1e-9);
  EXPECT_NEAR(csv.rows[1000][4], 1.0, 1e-9);
  EXPECT_NEAR(csv.rows[500][2], 0.25, 1e-9);
  EXPECT_NEAR(csv.rows[500][3], 0.5, 1e-9);
  EXPECT_NEAR(csv.rows[500][4], 0.25, 1e-9);
  EXPECT_EQ(csv.rows[0][2], 1.0);
}

TEST_F(ScenarioTest, SweepZeroRateReproducesClosedSystem) {
  auto c = validate_config(
      "[scenario]\nname = lindblad-sweep\n[rates]\nlambdas = 0, 100\n[time]\nn_points = 201\n");
  const RunResult r = run_decoherence_sweep(c, dir_, 2);
  ASSERT_TRUE(r.ok()) << r.checks.failures.front();
  const Csv transfer = read_csv(dir_ / "transfer_summary.csv");
  EXPECT_EQ(transfer.header, (std::vector<std::string>{"rate", "fidelity_at_report_time"}));
  ASSERT_EQ(transfer.rows.size(), 2u);
  EXPECT_NEAR(transfer.rows[0][1], 1.0, 1e-8);
  EXPECT_LT(transfer.rows[1][1], transfer.rows[0][1]);
  const Csv blockade_zero = read_csv(dir_ / "blockade_rate_00.csv");
  ASSERT_EQ(blockade_zero.rows.size(), 201u);
  for (const auto& row : blockade_zero.rows) EXPECT_GE(row[1], std::sqrt(0.999) - 1e-9);
  EXPECT_LT(r.checks.max_trace_deviation, 1e-9);
  EXPECT_GE(r.checks.min_eigenvalue, -1e-8);
}

TEST_F(ScenarioTest, SweepOutputIndependentOfWorkerCount) {
  auto c = validate_config(
      "[scenario]\nname = milburn-sweep\n[rates]\ngammas = 0, 1e-8, 1e-6\n[time]\nn_points = 101\n");
  const RunResult one = run_decoherence_sweep(c, dir_ / "one", 1);
  const RunResult three = run_decoherence_sweep(c, dir_ / "three", 3);
  ASSERT_EQ(one.files.size(), 8u);
  ASSERT_EQ(one.files.size(), three.files.size());
  for (std::size_t i = 0; i < one.files.size(); ++i) {
    EXPECT_EQ(one.files[i].name, three.files[i].name);
    EXPECT_EQ(read_text_file((dir_ / "one" / one.files[i].name).string()),
              read_text_file((dir_ / "three" / three.files[i].name).string()));
  }
}

TEST_F(ScenarioTest, CustomTraceAndManifest) {
  auto c = validate_config(
      "[scenario]\nname = custom\n[chain]\ndelta = 0\n[input]\nalpha = 0.6\nbeta = 0.8\n"
      "[time]\nn_points = 11\n");
  const RunResult r = run_custom(c, dir_);
  ASSERT_TRUE(r.ok());
  const Csv csv = read_csv(dir_ / "custom.csv");
  EXPECT_EQ(csv.header,
            (std::vector<std::string>{"t_seconds", "p_source", "p_drain", "p_survival"}));
  // Row 5 is tau_T: the one-excitation part has left the source entirely.
  EXPECT_NEAR(csv.rows[5][1], 0.0, 1e-9);
  EXPECT_NEAR(csv.rows[5][2], 1.0, 1e-9);

  const KvDocument m = make_manifest(c, r, ManifestInfo{"2026-01-01T00:00:00Z", 0.25});
  EXPECT_EQ(m.find("run", "status")->value, "ok");
  EXPECT_EQ(m.find("run", "scenario")->value, "custom");
  EXPECT_NE(m.find("checks", "max_trace_deviation"), nullptr);
  EXPECT_NE(m.find("checks", "min_eigenvalue"), nullptr);
  EXPECT_EQ(m.find("config.chain", "delta")->value, "0");
  EXPECT_NE(m.find("files", "custom.csv"), nullptr);
  EXPECT_NO_THROW(KvDocument::parse(m.serialize()));
}

TEST_F(ScenarioTest, UnwritableOutputIsAnIoError) {
  auto c = validate_config("[scenario]\nname = open-gate\n[time]\nn_points = 3\n");
  write_text_file((fs::temp_directory_path() / "qtransistor_blocker").string(), "x");
  EXPECT_THROW(run_open_gate(c, fs::temp_directory_path() / "qtransistor_blocker" / "sub"),
               IoError);
  fs::remove(fs::temp_directory_path() / "qtransistor_blocker");
}

}  // namespace
}  // namespace qtransistor::app
