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

// qtransistor: command-line front end for the spin-chain transistor
// simulations.
//
// Exit codes: 0 success, 2 config error, 3 numerical-tolerance failure,
// 4 I/O error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtransistor/app/config.hpp"
#include "qtransistor/app/kvformat.hpp"
#include "qtransistor/app/scenarios.hpp"
#include "qtransistor/version.hpp"

namespace app = qtransistor::app;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

app::ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides,
                           const std::optional<std::string>& units) {
  std::vector<app::Override> parsed;
  for (const auto& o : overrides) parsed.push_back(app::Override::parse(o));
  if (units) parsed.push_back(app::Override{"scenario", "units_mode", *units});
  return app::validate_config(app::read_text_file(path), parsed);
}

int simulate(const std::string& scenario, const std::string& config_path,
             const std::optional<std::string>& out_dir, const std::optional<std::string>& units,
             const std::vector<std::string>& overrides, unsigned workers) {
  const auto wanted = app::parse_scenario(scenario);
  if (!wanted) {
    std::fprintf(stderr, "error: unknown scenario '%s' (see list-scenarios)\n", scenario.c_str());
    return kExitConfig;
  }
  app::ExperimentConfig config = load(config_path, overrides, units);
  if (config.scenario != *wanted) {
    std::fprintf(stderr, "error: config '%s' describes scenario '%s', not '%s'\n",
                 config_path.c_str(), std::string(app::to_string(config.scenario)).c_str(),
                 scenario.c_str());
    return kExitConfig;
  }
  if (out_dir) config.output_path = *out_dir;

  const std::filesystem::path out(config.output_path);
  const std::string started_at = app::utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  const app::RunResult result = app::run_scenario(config, out, workers);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

  const app::KvDocument manifest =
      app::make_manifest(config, result, app::ManifestInfo{started_at, elapsed.count()});
  app::write_text_file((out / "manifest.txt").string(), manifest.serialize());

  for (const auto& f : result.files) std::printf("wrote %s\n", (out / f.name).string().c_str());
  for (const auto& w : result.checks.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (!result.ok()) {
    for (const auto& f : result.checks.failures) std::fprintf(stderr, "failed: %s\n", f.c_str());
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Three-spin quantum transistor simulator"};
  cli.set_version_flag("--version", std::string(qtransistor::kVersion));
  cli.require_subcommand(1);

  std::string scenario;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> units;
  std::vector<std::string> overrides;
  unsigned workers = 0;

  auto* sim = cli.add_subcommand("simulate", "Run a scenario and write CSVs plus manifest.txt");
  sim->add_option("scenario", scenario, "Scenario name")->required();
  sim->add_option("--config", config_path, "Experiment config file")->required();
  sim->add_option("--out", out_dir, "Output directory (overrides output.path)");
  sim->add_option("--units", units, "Frequency units of the config")
      ->check(CLI::IsMember({"angular", "cyclic"}));
  sim->add_option("--override", overrides, "section.key=value, repeatable");
  sim->add_option("--workers", workers, "Sweep worker threads (0 = all cores)");

  std::string validate_path;
  auto* val = cli.add_subcommand("validate", "Check a config file and print its canonical form");
  val->add_option("--config", validate_path, "Experiment config file")->required();

  auto* list = cli.add_subcommand("list-scenarios", "List the available scenarios");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const auto s : app::all_scenarios()) {
        std::printf("%-15s %s\n", std::string(app::to_string(s)).c_str(),
                    std::string(app::describe(s)).c_str());
      }
      return kExitOk;
    }
    if (val->parsed()) {
      const app::ExperimentConfig c = app::validate_config(app::read_text_file(validate_path));
      std::fputs(app::to_document(c).serialize().c_str(), stdout);
      return kExitOk;
    }
    return simulate(scenario, config_path, out_dir, units, overrides, workers);
  } catch (const app::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const app::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const qtransistor::ConvergenceError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const qtransistor::Error& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
