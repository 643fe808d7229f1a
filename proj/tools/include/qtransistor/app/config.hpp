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

// Experiment configuration: schema, defaults and validation.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtransistor/app/kvformat.hpp"
#include "qtransistor/opensys.hpp"
#include "qtransistor/spinchain.hpp"

namespace qtransistor::app {

enum class Scenario { closed_gate, open_gate, lindblad_sweep, milburn_sweep, custom };
enum class UnitsMode { angular, cyclic };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
std::span<const Scenario> all_scenarios();
std::string_view describe(Scenario s);

struct TimeGrid {
  double t_start = 0.0;
  // Unset means "scenario default" (delta*t = 20, 2 tau_T, tau_T or tau_B).
  std::optional<double> t_end;
  int n_points = 2001;

  std::vector<double> points(double default_end) const;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::custom;
  UnitsMode units_mode = UnitsMode::angular;
  // Frequencies are rad/s after validation, whatever the units mode was.
  ChainParams params = ChainParams::transistor(1e3, 1e6);
  Complex alpha = 1.0;
  Complex beta = 0.0;
  // Exactly one of these is non-empty for the sweeps; both empty otherwise.
  std::vector<double> lambdas;  // rad/s, applied to every site
  std::vector<double> gammas;   // s
  TimeGrid time_grid;
  std::vector<double> j_over_delta{0.05, 0.1, 0.2};
  std::vector<ExperimentKind> kinds{ExperimentKind::transfer, ExperimentKind::blockade};
  bool allow_detuned_transfer = false;
  bool allow_superposition_transfer = false;
  std::string output_path = "out";
};

// Parses "section.key=value".
struct Override {
  std::string section;
  std::string key;
  std::string value;

  static Override parse(std::string_view text);
};

// Strict: unknown sections or keys, malformed values and broken invariants
// are all collected into one ConfigError.
ExperimentConfig validate_config(std::string_view raw_text,
                                 std::span<const Override> overrides = {});
ExperimentConfig validate_document(const KvDocument& doc);

// Canonical text form; validate_config(to_document(c).serialize()) == c
// (frequencies are written in rad/s with units_mode = angular).
KvDocument to_document(const ExperimentConfig& c);

}  // namespace qtransistor::app
