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

#pragma once

// Scenario runners. Each writes its CSVs into an output directory and
// reports numerical checks; the caller turns those into a manifest.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtransistor/app/config.hpp"
#include "qtransistor/app/kvformat.hpp"

namespace qtransistor::app {

// Tolerances that flag a run as failed.
inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kHermiticityTolerance = 1e-9;
inline constexpr double kMinEigenvalueFloor = -1e-8;
inline constexpr double kClampTolerance = 1e-9;
inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr double kAnalyticNumericTolerance = 1e-9;

// Header plus rows of doubles in %.11e (12 significant digits), LF endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::initializer_list<double> values);
  std::size_t rows() const noexcept { return rows_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

struct RunChecks {
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  // Largest distance of a reported probability or fidelity outside [0, 1].
  double max_clamp_deviation = 0.0;
  // Scenario-specific figures, in insertion order.
  std::vector<std::pair<std::string, double>> extras;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;
};

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string description;
};

struct RunResult {
  std::vector<OutputFile> files;
  RunChecks checks;

  bool ok() const noexcept { return checks.failures.empty(); }
};

// Clamps into [0, 1] and tracks how far outside it the value was.
double report_probability(double p, RunChecks& checks);

// Default end of the time axis when time.t_end = auto.
double default_t_end(const ExperimentConfig& c,
                     ExperimentKind kind = ExperimentKind::transfer);

RunResult run_closed_gate(const ExperimentConfig& c, const std::filesystem::path& out);
RunResult run_open_gate(const ExperimentConfig& c, const std::filesystem::path& out);
// Rate points run on at most `workers` threads (0 = hardware concurrency).
RunResult run_decoherence_sweep(const ExperimentConfig& c, const std::filesystem::path& out,
                                unsigned workers = 0);
RunResult run_custom(const ExperimentConfig& c, const std::filesystem::path& out);
RunResult run_scenario(const ExperimentConfig& c, const std::filesystem::path& out,
                       unsigned workers = 0);

struct ManifestInfo {
  std::string started_at;  // UTC, ISO 8601
  double wall_clock_seconds = 0.0;
};

KvDocument make_manifest(const ExperimentConfig& c, const RunResult& r,
                         const ManifestInfo& info);

std::string utc_timestamp();

}  // namespace qtransistor::app
