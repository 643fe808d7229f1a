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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <numbers>
#include <thread>

#include "qtransistor/unitary.hpp"
#include "qtransistor/version.hpp"

namespace qtransistor::app {
namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string format_plain(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string indexed_name(std::string_view stem, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", index);
  return std::string(stem) + "_" + buf + ".csv";
}

void prepare_directory(const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory '" + out.string() + "': " + ec.message());
}

void emit(const std::filesystem::path& out, RunResult& r, std::string name,
          std::string description, const CsvTable& table) {
  write_text_file((out / name).string(), table.text());
  r.files.push_back(OutputFile{std::move(name), std::move(description)});
}

double tau_transfer(double j) { return std::numbers::pi / (j * std::numbers::sqrt2); }

// Pure-state bookkeeping: a normalized |psi> has trace |psi|^2 = 1, is
// Hermitian by construction and has min eigenvalue 0.
void note_pure_state(const PureState& psi, RunChecks& checks) {
  double n2 = 0.0;
  for (const Complex a : psi.amplitudes()) n2 += std::norm(a);
  checks.max_trace_deviation = std::max(checks.max_trace_deviation, std::abs(n2 - 1.0));
}

void flag_failures(RunChecks& c) {
  auto fail = [&c](const std::string& what, double value, double limit) {
    c.failures.push_back(what + " = " + format_value(value) + " (limit " + format_value(limit) + ")");
  };
  if (c.max_trace_deviation >= kTraceTolerance) {
    fail("max_trace_deviation", c.max_trace_deviation, kTraceTolerance);
  }
  if (c.max_hermiticity_deviation >= kHermiticityTolerance) {
    fail("max_hermiticity_deviation", c.max_hermiticity_deviation, kHermiticityTolerance);
  }
  if (c.min_eigenvalue < kMinEigenvalueFloor) {
    fail("min_eigenvalue", c.min_eigenvalue, kMinEigenvalueFloor);
  }
  if (c.max_clamp_deviation > kClampTolerance) {
    fail("max_clamp_deviation", c.max_clamp_deviation, kClampTolerance);
  }
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvTable::add_row(std::initializer_list<double> values) {
  if (values.size() != columns_) throw DimensionError("CSV row has the wrong number of columns");
  bool first = true;
  for (const double v : values) {
    if (!first) text_ += ',';
    first = false;
    text_ += format_value(v);
  }
  text_ += '\n';
  ++rows_;
}

double report_probability(double p, RunChecks& checks) {
  const double clamped = std::clamp(p, 0.0, 1.0);
  checks.max_clamp_deviation = std::max(checks.max_clamp_deviation, std::abs(p - clamped));
  return clamped;
}

double default_t_end(const ExperimentConfig& c, ExperimentKind kind) {
  const double j = c.params.coupling_j;
  switch (c.scenario) {
    case Scenario::closed_gate:
      return 20.0;  // delta*t
    case Scenario::open_gate:
    case Scenario::custom:
      if (j <= 0.0) {
        throw ConfigError({"time.t_end: 'auto' needs coupling_j > 0; give an explicit end time"});
      }
      return 2.0 * tau_transfer(j);
    case Scenario::lindblad_sweep:
    case Scenario::milburn_sweep:
      return kind == ExperimentKind::transfer ? tau_transfer(j)
                                              : blockade_window(j, c.params.delta);
  }
  return 0.0;
}

RunResult run_closed_gate(const ExperimentConfig& c, const std::filesystem::path& out) {
  prepare_directory(out);
  RunResult r;
  const double delta = c.params.delta;
  const std::vector<double> grid = c.time_grid.points(default_t_end(c));
  if (grid.back() <= grid.front()) throw ConfigError({"time: empty delta*t window"});
  const BasisLabel udd = BasisLabel::parse("udd");
  const PureState psi0 = source_state(1.0, 0.0, 3);

  for (std::size_t k = 0; k < c.j_over_delta.size(); ++k) {
    const double ratio = c.j_over_delta[k];
    ChainParams p = c.params;
    p.coupling_j = ratio * delta;
    const Propagator prop(p);

    CsvTable table({"delta_t", "p_exact", "p_expansion"});
    double max_expansion_diff = 0.0;
    double max_numeric_diff = 0.0;
    for (const double x : grid) {
      const double t = x / delta;
      const double exact = p_source_analytic(p.coupling_j, delta, t);
      const double expansion = p_source_expansion(p.coupling_j, delta, t);
      const PureState psi = prop.evolve(psi0, t);
      note_pure_state(psi, r.checks);
      max_expansion_diff = std::max(max_expansion_diff, std::abs(exact - expansion));
      max_numeric_diff = std::max(max_numeric_diff, std::abs(exact - psi.probability(udd)));
      // The series is reported raw: it is an approximation, not a probability.
      table.add_row({x, report_probability(exact, r.checks), expansion});
    }
    const std::string tag = "j_over_delta_" + std::to_string(k);
    r.checks.extras.emplace_back(tag, ratio);
    r.checks.extras.emplace_back(tag + ".max_abs_exact_minus_expansion", max_expansion_diff);
    r.checks.extras.emplace_back(tag + ".max_abs_exact_minus_propagator", max_numeric_diff);
    if (max_numeric_diff >= kAnalyticNumericTolerance) {
      r.checks.failures.push_back(tag + ": closed form and propagator differ by " +
                                  format_value(max_numeric_diff));
    }
    emit(out, r, indexed_name("closed_gate", k),
         "source survival vs delta*t at J/delta = " + format_short(ratio), table);
  }
  flag_failures(r.checks);
  return r;
}

RunResult run_open_gate(const ExperimentConfig& c, const std::filesystem::path& out) {
  prepare_directory(out);
  RunResult r;
  const std::vector<double> grid = c.time_grid.points(default_t_end(c));
  const Propagator prop(c.params);
  const std::size_t udd = BasisLabel::parse("udd").index();
  const std::size_t dud = BasisLabel::parse("dud").index();
  const std::size_t ddu = BasisLabel::parse("ddu").index();
  const double j = c.params.coupling_j;

  CsvTable table({"t_seconds", "Jt", "p_source", "p_gate", "p_drain"});
  double max_row_sum = 0.0;
  for (const double t : grid) {
    const ComplexMatrix u = prop.unitary(t);
    double column_norm = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) column_norm += std::norm(u(i, udd));
    r.checks.max_trace_deviation =
        std::max(r.checks.max_trace_deviation, std::abs(column_norm - 1.0));
    const double ps = std::norm(u(udd, udd));
    const double pg = std::norm(u(dud, udd));
    const double pd = std::norm(u(ddu, udd));
    max_row_sum = std::max(max_row_sum, std::abs(ps + pg + pd - 1.0));
    table.add_row({t, j * t, report_probability(ps, r.checks), report_probability(pg, r.checks),
                   report_probability(pd, r.checks)});
  }
  r.checks.extras.emplace_back("tau_transfer_seconds", tau_transfer(j));
  r.checks.extras.emplace_back("max_row_sum_deviation", max_row_sum);
  if (max_row_sum >= kRowSumTolerance) {
    r.checks.failures.push_back("open-gate populations do not sum to 1: deviation " +
                                format_value(max_row_sum));
  }
  emit(out, r, "open_gate.csv", "source, gate and drain populations from |udd>", table);
  flag_failures(r.checks);
  return r;
}

namespace {

struct SweepTask {
  ExperimentKind kind;
  std::size_t rate_index;
  double rate;
};

struct SweepOutput {
  CsvTable table{{"t_seconds", "fidelity"}};
  double report_fidelity = 0.0;
  RunChecks checks;
};

std::string_view kind_name(ExperimentKind k) {
  return k == ExperimentKind::transfer ? "transfer" : "blockade";
}

void merge_trace(const FidelityTrace& f, RunChecks& checks) {
  checks.max_trace_deviation = std::max(checks.max_trace_deviation, f.max_trace_deviation);
  checks.max_hermiticity_deviation =
      std::max(checks.max_hermiticity_deviation, f.max_hermiticity_deviation);
  checks.min_eigenvalue = std::min(checks.min_eigenvalue, f.min_eigenvalue);
  for (const auto& w : f.warnings) checks.warnings.push_back(w);
}

}  // namespace

RunResult run_decoherence_sweep(const ExperimentConfig& c, const std::filesystem::path& out,
                                unsigned workers) {
  prepare_directory(out);
  const bool lindblad = c.scenario == Scenario::lindblad_sweep;
  const std::vector<double>& rates = lindblad ? c.lambdas : c.gammas;

  std::vector<SweepTask> tasks;
  for (const auto kind : c.kinds)
    for (std::size_t i = 0; i < rates.size(); ++i) tasks.push_back({kind, i, rates[i]});

  // Report time and time grid per kind, computed once up front.
  auto kind_params = [&c](ExperimentKind kind) {
    ChainParams p = c.params;
    if (kind == ExperimentKind::transfer && !c.allow_detuned_transfer) p.delta = 0.0;
    return p;
  };
  auto report_time = [&](ExperimentKind kind) {
    const ChainParams p = kind_params(kind);
    return kind == ExperimentKind::transfer ? tau_transfer(p.coupling_j)
                                            : blockade_window(p.coupling_j, p.delta);
  };
  std::vector<double> report_times;
  std::vector<std::vector<double>> grids;
  for (const auto kind : c.kinds) {
    report_times.push_back(report_time(kind));
    const double end = c.time_grid.t_end.value_or(report_times.back());
    if (end <= c.time_grid.t_start) {
      throw ConfigError({"time.t_start: must lie before the " + std::string(kind_name(kind)) +
                         " report time"});
    }
    grids.push_back(c.time_grid.points(end));
  }
  auto kind_slot = [&c](ExperimentKind kind) {
    return static_cast<std::size_t>(std::find(c.kinds.begin(), c.kinds.end(), kind) -
                                    c.kinds.begin());
  };

  std::vector<SweepOutput> outputs(tasks.size());
  auto run_task = [&](std::size_t i) {
    const SweepTask& task = tasks[i];
    const std::size_t slot = kind_slot(task.kind);
    FidelityExperiment e;
    e.kind = task.kind;
    e.model = lindblad ? NoiseModel::lindblad : NoiseModel::milburn;
    e.params = kind_params(task.kind);
    e.rate = task.rate;
    e.alpha = c.alpha;
    e.beta = c.beta;
    e.allow_detuned_transfer = c.allow_detuned_transfer;
    e.allow_superposition_transfer = c.allow_superposition_transfer;
    e.times = grids[slot];
    const FidelityTrace trace = fidelity_experiment(e);
    SweepOutput& o = outputs[i];
    merge_trace(trace, o.checks);
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
      o.table.add_row({trace.times[k], report_probability(trace.fidelity[k], o.checks)});
    }
    e.times = {0.0, report_times[slot]};
    const FidelityTrace at_report = fidelity_experiment(e);
    merge_trace(at_report, o.checks);
    o.report_fidelity = report_probability(at_report.fidelity.back(), o.checks);
  };

  unsigned n_workers = workers != 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(tasks.size()));
  std::vector<std::exception_ptr> errors(tasks.size());
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
          try {
            run_task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Files are written from this thread only, in task order.
  RunResult r;
  r.checks.min_eigenvalue = 0.0;
  const std::string_view rate_unit = lindblad ? "rad/s" : "s";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const RunChecks& oc = outputs[i].checks;
    r.checks.max_trace_deviation = std::max(r.checks.max_trace_deviation, oc.max_trace_deviation);
    r.checks.max_hermiticity_deviation =
        std::max(r.checks.max_hermiticity_deviation, oc.max_hermiticity_deviation);
    r.checks.min_eigenvalue = std::min(r.checks.min_eigenvalue, oc.min_eigenvalue);
    r.checks.max_clamp_deviation = std::max(r.checks.max_clamp_deviation, oc.max_clamp_deviation);
    for (const auto& w : oc.warnings) r.checks.warnings.push_back(w);
    emit(out, r, indexed_name(std::string(kind_name(tasks[i].kind)) + "_rate", tasks[i].rate_index),
         std::string(kind_name(tasks[i].kind)) + " fidelity at rate " +
             format_short(tasks[i].rate) + " " + std::string(rate_unit),
         outputs[i].table);
  }
  for (const auto kind : c.kinds) {
    const std::size_t slot = kind_slot(kind);
    const std::string name(kind_name(kind));
    CsvTable summary({"rate", "fidelity_at_report_time"});
    double previous = 2.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].kind != kind) continue;
      summary.add_row({tasks[i].rate, outputs[i].report_fidelity});
      if (outputs[i].report_fidelity > previous + 1e-12) {
        r.checks.warnings.push_back(name + " summary fidelity rises with rate at row " +
                                    std::to_string(tasks[i].rate_index));
      }
      previous = outputs[i].report_fidelity;
    }
    r.checks.extras.emplace_back(name + ".report_time_seconds", report_times[slot]);
    emit(out, r, name + "_summary.csv",
         name + " fidelity at its report time, per rate (" + std::string(rate_unit) + ")",
         summary);
  }
  flag_failures(r.checks);
  return r;
}

RunResult run_custom(const ExperimentConfig& c, const std::filesystem::path& out) {
  prepare_directory(out);
  RunResult r;
  const std::vector<double> grid = c.time_grid.points(default_t_end(c));
  const ProbabilityTrace trace = probability_trace(c.params, c.alpha, c.beta, grid);
  CsvTable table({"t_seconds", "p_source", "p_drain", "p_survival"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    table.add_row({grid[k], report_probability(trace.p_source[k], r.checks),
                   report_probability(trace.p_drain[k], r.checks),
                   report_probability(trace.p_blockade_total[k], r.checks)});
  }
  emit(out, r, "custom.csv",
       "source and drain populations from |udd>, survival of the encoded input", table);
  flag_failures(r.checks);
  return r;
}

RunResult run_scenario(const ExperimentConfig& c, const std::filesystem::path& out,
                       unsigned workers) {
  switch (c.scenario) {
    case Scenario::closed_gate: return run_closed_gate(c, out);
    case Scenario::open_gate: return run_open_gate(c, out);
    case Scenario::lindblad_sweep:
    case Scenario::milburn_sweep: return run_decoherence_sweep(c, out, workers);
    case Scenario::custom: return run_custom(c, out);
  }
  throw ParameterError("unknown scenario");
}

KvDocument make_manifest(const ExperimentConfig& c, const RunResult& r,
                         const ManifestInfo& info) {
  KvDocument m;
  m.set("run", "scenario", std::string(to_string(c.scenario)));
  m.set("run", "code_version", std::string(kVersion));
  m.set("run", "started_at", info.started_at);
  m.set("run", "wall_clock_seconds", format_plain(info.wall_clock_seconds));
  m.set("run", "status", r.ok() ? "ok" : "failed");

  m.set("checks", "max_trace_deviation", format_value(r.checks.max_trace_deviation));
  m.set("checks", "max_hermiticity_deviation", format_value(r.checks.max_hermiticity_deviation));
  m.set("checks", "min_eigenvalue", format_value(r.checks.min_eigenvalue));
  m.set("checks", "max_clamp_deviation", format_value(r.checks.max_clamp_deviation));
  for (const auto& [key, value] : r.checks.extras) m.set("checks", key, format_value(value));

  for (std::size_t i = 0; i < r.checks.failures.size(); ++i) {
    m.set("failures", std::to_string(i), r.checks.failures[i]);
  }
  for (std::size_t i = 0; i < r.checks.warnings.size(); ++i) {
    m.set("warnings", std::to_string(i), r.checks.warnings[i]);
  }
  for (const auto& f : r.files) m.set("files", f.name, f.description);

  const KvDocument echo = to_document(c);
  for (const auto& section : echo.sections()) {
    for (const auto& e : section.entries) m.set("config." + section.name, e.key, e.value);
  }
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qtransistor::app
