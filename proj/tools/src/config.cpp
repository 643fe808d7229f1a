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

#include "qtransistor/app/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace qtransistor::app {
namespace {

constexpr std::array kScenarios{Scenario::closed_gate, Scenario::open_gate,
                                Scenario::lindblad_sweep, Scenario::milburn_sweep,
                                Scenario::custom};

struct SectionSchema {
  std::string_view name;
  std::vector<std::string_view> keys;
};

const std::vector<SectionSchema>& schema() {
  static const std::vector<SectionSchema> s{
      {"scenario", {"name", "units_mode"}},
      {"chain", {"n_sites", "omega0", "delta", "coupling_j", "gate_site"}},
      {"input", {"alpha", "beta"}},
      {"rates", {"lambdas", "gammas"}},
      {"time", {"t_start", "t_end", "n_points"}},
      {"closed_gate", {"j_over_delta"}},
      {"experiment", {"kinds", "allow_detuned_transfer", "allow_superposition_transfer"}},
      {"output", {"path"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(trim(s.substr(pos, comma == std::string_view::npos ? s.size() - pos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reads typed values out of a document and records every problem.
class Reader {
 public:
  explicit Reader(const KvDocument& doc) : doc_(doc) {}

  std::vector<std::string>& issues() { return issues_; }
  bool has(std::string_view section, std::string_view key) const {
    return doc_.find(section, key) != nullptr;
  }

  void problem(std::string_view section, std::string_view key, const std::string& what) {
    const KvEntry* e = doc_.find(section, key);
    std::string msg;
    if (e != nullptr && e->line > 0) msg = "line " + std::to_string(e->line) + ": ";
    msg += std::string(section) + "." + std::string(key) + ": " + what;
    issues_.push_back(std::move(msg));
  }

  std::optional<std::string> text(std::string_view section, std::string_view key) {
    const KvEntry* e = doc_.find(section, key);
    if (e == nullptr) return std::nullopt;
    return e->value;
  }

  std::optional<double> number(std::string_view section, std::string_view key) {
    const auto raw = text(section, key);
    if (!raw) return std::nullopt;
    const auto v = to_double(*raw);
    if (!v) problem(section, key, "expected a finite number, got '" + *raw + "'");
    return v;
  }

  std::optional<int> integer(std::string_view section, std::string_view key) {
    const auto raw = text(section, key);
    if (!raw) return std::nullopt;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
    if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
      problem(section, key, "expected an integer, got '" + *raw + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(std::string_view section, std::string_view key) {
    const auto raw = text(section, key);
    if (!raw) return std::nullopt;
    if (*raw == "true") return true;
    if (*raw == "false") return false;
    problem(section, key, "expected true or false, got '" + *raw + "'");
    return std::nullopt;
  }

  // "re" or "re, im"
  std::optional<Complex> complex(std::string_view section, std::string_view key) {
    const auto raw = text(section, key);
    if (!raw) return std::nullopt;
    const auto parts = split_list(*raw);
    std::optional<double> re = parts.size() <= 2 ? to_double(parts[0]) : std::nullopt;
    std::optional<double> im = parts.size() == 2 ? to_double(parts[1]) : std::optional<double>(0.0);
    if (!re || !im) {
      problem(section, key, "expected 're' or 're, im', got '" + *raw + "'");
      return std::nullopt;
    }
    return Complex(*re, *im);
  }

  std::optional<std::vector<double>> numbers(std::string_view section, std::string_view key) {
    const auto raw = text(section, key);
    if (!raw) return std::nullopt;
    std::vector<double> out;
    for (const auto& item : split_list(*raw)) {
      const auto v = to_double(item);
      if (!v) {
        problem(section, key, "expected a comma-separated list of numbers, bad item '" + item + "'");
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

 private:
  const KvDocument& doc_;
  std::vector<std::string> issues_;
};

void check_schema(const KvDocument& doc, std::vector<std::string>& issues) {
  for (const auto& section : doc.sections()) {
    const SectionSchema* known = nullptr;
    for (const auto& s : schema())
      if (s.name == section.name) known = &s;
    if (known == nullptr) {
      issues.push_back("line " + std::to_string(section.line) + ": unknown section [" +
                       section.name + "]");
      continue;
    }
    for (const auto& e : section.entries) {
      bool found = false;
      for (const auto k : known->keys) found = found || k == e.key;
      if (!found) {
        std::string msg = e.line > 0 ? "line " + std::to_string(e.line) + ": " : "";
        issues.push_back(msg + "unknown key '" + section.name + "." + e.key + "'");
      }
    }
  }
}

bool is_sweep(Scenario s) {
  return s == Scenario::lindblad_sweep || s == Scenario::milburn_sweep;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::closed_gate: return "closed-gate";
    case Scenario::open_gate: return "open-gate";
    case Scenario::lindblad_sweep: return "lindblad-sweep";
    case Scenario::milburn_sweep: return "milburn-sweep";
    case Scenario::custom: return "custom";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto s : kScenarios)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::span<const Scenario> all_scenarios() { return kScenarios; }

std::string_view describe(Scenario s) {
  switch (s) {
    case Scenario::closed_gate:
      return "source survival vs delta*t, exact and small-coupling expansion, per J/delta";
    case Scenario::open_gate:
      return "resonant transfer: source, gate and drain populations vs time";
    case Scenario::lindblad_sweep:
      return "transfer and blockade fidelity under site dephasing, per rate";
    case Scenario::milburn_sweep:
      return "transfer and blockade fidelity under intrinsic decoherence, per rate";
    case Scenario::custom:
      return "closed-system probabilities for arbitrary chain parameters and input";
  }
  return "";
}

std::vector<double> TimeGrid::points(double default_end) const {
  const double end = t_end.value_or(default_end);
  std::vector<double> out(static_cast<std::size_t>(n_points));
  const double step = (end - t_start) / static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) out[static_cast<std::size_t>(i)] = t_start + step * i;
  out.back() = end;
  return out;
}

Override Override::parse(std::string_view text) {
  const auto eq = text.find('=');
  const auto dot = text.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 ||
      dot + 1 == eq) {
    throw ConfigError({"override '" + std::string(text) + "': expected section.key=value"});
  }
  return Override{trim(text.substr(0, dot)), trim(text.substr(dot + 1, eq - dot - 1)),
                  trim(text.substr(eq + 1))};
}

ExperimentConfig validate_config(std::string_view raw_text, std::span<const Override> overrides) {
  KvDocument doc = KvDocument::parse(raw_text);
  for (const auto& o : overrides) doc.set(o.section, o.key, o.value);
  return validate_document(doc);
}

ExperimentConfig validate_document(const KvDocument& doc) {
  Reader r(doc);
  check_schema(doc, r.issues());
  ExperimentConfig c;

  // scenario
  const auto name = r.text("scenario", "name");
  if (!name || name->empty()) {
    r.issues().push_back("scenario.name: required field is missing or empty");
  } else if (const auto s = parse_scenario(*name)) {
    c.scenario = *s;
  } else {
    r.problem("scenario", "name", "unknown scenario '" + *name + "'");
  }
  const bool scenario_ok = name && parse_scenario(*name).has_value();
  if (const auto units = r.text("scenario", "units_mode")) {
    if (*units == "angular") {
      c.units_mode = UnitsMode::angular;
    } else if (*units == "cyclic") {
      c.units_mode = UnitsMode::cyclic;
    } else {
      r.problem("scenario", "units_mode", "expected angular or cyclic, got '" + *units + "'");
    }
  }

  // chain
  if (c.scenario == Scenario::open_gate) c.params.delta = 0.0;
  if (const auto v = r.integer("chain", "n_sites")) c.params.n_sites = *v;
  if (const auto v = r.integer("chain", "gate_site")) c.params.gate_site = *v;
  if (const auto v = r.number("chain", "omega0")) c.params.omega0 = *v;
  if (const auto v = r.number("chain", "delta")) c.params.delta = *v;
  if (const auto v = r.number("chain", "coupling_j")) c.params.coupling_j = *v;
  if (c.params.n_sites != 3) {
    r.problem("chain", "n_sites", "every scenario models the three-spin transistor; must be 3");
  }
  if (c.params.gate_site < 0 || c.params.gate_site >= c.params.n_sites) {
    r.problem("chain", "gate_site", "must lie in [0, n_sites)");
  }

  // input
  if (const auto v = r.complex("input", "alpha")) c.alpha = *v;
  if (const auto v = r.complex("input", "beta")) c.beta = *v;
  const bool has_input = r.has("input", "alpha") || r.has("input", "beta");
  if (has_input && scenario_ok && !is_sweep(c.scenario) && c.scenario != Scenario::custom) {
    r.issues().push_back("input: only used by the sweep and custom scenarios");
  }
  if (std::abs(std::norm(c.alpha) + std::norm(c.beta) - 1.0) > 1e-10) {
    r.issues().push_back("input: |alpha|^2 + |beta|^2 must equal 1 (got " +
                         format_double(std::norm(c.alpha) + std::norm(c.beta)) + ")");
  }

  // rates
  if (const auto v = r.numbers("rates", "lambdas")) c.lambdas = *v;
  if (const auto v = r.numbers("rates", "gammas")) c.gammas = *v;
  for (const double l : c.lambdas)
    if (l < 0.0) r.problem("rates", "lambdas", "rates must be >= 0");
  for (const double g : c.gammas)
    if (g < 0.0) r.problem("rates", "gammas", "rates must be >= 0");
  const bool has_l = r.has("rates", "lambdas");
  const bool has_g = r.has("rates", "gammas");
  if (scenario_ok) {
    if (c.scenario == Scenario::lindblad_sweep && (!has_l || has_g || c.lambdas.empty())) {
      r.issues().push_back("rates: lindblad-sweep needs rates.lambdas and no rates.gammas");
    } else if (c.scenario == Scenario::milburn_sweep && (!has_g || has_l || c.gammas.empty())) {
      r.issues().push_back("rates: milburn-sweep needs rates.gammas and no rates.lambdas");
    } else if (!is_sweep(c.scenario) && (has_l || has_g)) {
      r.issues().push_back("rates: only the sweep scenarios take a rate family");
    }
  }

  // time
  if (const auto v = r.number("time", "t_start")) c.time_grid.t_start = *v;
  if (const auto raw = r.text("time", "t_end"); raw && *raw != "auto") {
    if (const auto v = r.number("time", "t_end")) c.time_grid.t_end = *v;
  }
  if (const auto v = r.integer("time", "n_points")) c.time_grid.n_points = *v;
  if (c.time_grid.n_points < 2) r.problem("time", "n_points", "must be >= 2");
  if (c.time_grid.n_points > 1'000'000) r.problem("time", "n_points", "must be <= 1000000");
  if (c.time_grid.t_start < 0.0) r.problem("time", "t_start", "must be >= 0");
  if (c.time_grid.t_end && *c.time_grid.t_end <= c.time_grid.t_start) {
    r.problem("time", "t_end", "must be greater than t_start");
  }

  // closed_gate
  if (const auto v = r.numbers("closed_gate", "j_over_delta")) {
    c.j_over_delta = *v;
    if (scenario_ok && c.scenario != Scenario::closed_gate) {
      r.problem("closed_gate", "j_over_delta", "only used by the closed-gate scenario");
    }
    for (const double x : c.j_over_delta)
      if (x <= 0.0) r.problem("closed_gate", "j_over_delta", "ratios must be > 0");
  }

  // experiment
  if (const auto raw = r.text("experiment", "kinds")) {
    c.kinds.clear();
    std::set<std::string> seen;
    for (const auto& k : split_list(*raw)) {
      if (!seen.insert(k).second) {
        r.problem("experiment", "kinds", "duplicate kind '" + k + "'");
      } else if (k == "transfer") {
        c.kinds.push_back(ExperimentKind::transfer);
      } else if (k == "blockade") {
        c.kinds.push_back(ExperimentKind::blockade);
      } else {
        r.problem("experiment", "kinds", "expected transfer and/or blockade, got '" + k + "'");
      }
    }
    if (scenario_ok && !is_sweep(c.scenario)) {
      r.problem("experiment", "kinds", "only used by the sweep scenarios");
    }
  }
  if (const auto v = r.boolean("experiment", "allow_detuned_transfer")) c.allow_detuned_transfer = *v;
  if (const auto v = r.boolean("experiment", "allow_superposition_transfer")) {
    c.allow_superposition_transfer = *v;
  }

  // output
  if (const auto v = r.text("output", "path")) {
    if (v->empty()) r.problem("output", "path", "must not be empty");
    c.output_path = *v;
  }

  // frequency conversion happens before any physics-level check
  if (c.units_mode == UnitsMode::cyclic) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    c.params.omega0 *= two_pi;
    c.params.delta *= two_pi;
    c.params.coupling_j *= two_pi;
    for (double& l : c.lambdas) l *= two_pi;
  }

  // scenario-level consistency
  if (scenario_ok) {
    const bool uses_transfer =
        is_sweep(c.scenario) &&
        std::find(c.kinds.begin(), c.kinds.end(), ExperimentKind::transfer) != c.kinds.end();
    if (c.scenario == Scenario::closed_gate && c.params.delta <= 0.0) {
      r.problem("chain", "delta", "closed-gate needs delta > 0 (the curves are plotted vs delta*t)");
    }
    if (c.scenario != Scenario::closed_gate && c.scenario != Scenario::custom &&
        c.params.coupling_j <= 0.0) {
      r.problem("chain", "coupling_j", "must be > 0 for " + std::string(to_string(c.scenario)));
    }
    if (c.scenario == Scenario::open_gate && c.params.delta != 0.0 && !c.allow_detuned_transfer) {
      r.problem("chain", "delta",
                "open-gate runs at delta = 0; set experiment.allow_detuned_transfer = true to detune");
    }
    if (uses_transfer && c.beta != Complex(0.0) && !c.allow_superposition_transfer) {
      r.issues().push_back(
          "input.beta: transfer with beta != 0 needs experiment.allow_superposition_transfer = true");
    }
    if (is_sweep(c.scenario) && c.kinds.empty()) {
      r.problem("experiment", "kinds", "at least one kind is required");
    }
  }

  if (c.params.n_sites == 3) {
    try {
      c.params.validate();
    } catch (const Error& e) {
      r.issues().push_back(std::string("chain: ") + e.what());
    }
  }

  if (!r.issues().empty()) throw ConfigError(std::move(r.issues()));
  return c;
}

KvDocument to_document(const ExperimentConfig& c) {
  KvDocument d;
  d.set("scenario", "name", std::string(to_string(c.scenario)));
  d.set("scenario", "units_mode", "angular");
  d.set("chain", "n_sites", std::to_string(c.params.n_sites));
  d.set("chain", "omega0", format_double(c.params.omega0));
  d.set("chain", "delta", format_double(c.params.delta));
  d.set("chain", "coupling_j", format_double(c.params.coupling_j));
  d.set("chain", "gate_site", std::to_string(c.params.gate_site));
  const bool sweep = is_sweep(c.scenario);
  if (sweep || c.scenario == Scenario::custom) {
    d.set("input", "alpha", format_double(c.alpha.real()) + ", " + format_double(c.alpha.imag()));
    d.set("input", "beta", format_double(c.beta.real()) + ", " + format_double(c.beta.imag()));
  }
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s;
  };
  if (c.scenario == Scenario::lindblad_sweep) d.set("rates", "lambdas", join(c.lambdas));
  if (c.scenario == Scenario::milburn_sweep) d.set("rates", "gammas", join(c.gammas));
  d.set("time", "t_start", format_double(c.time_grid.t_start));
  d.set("time", "t_end", c.time_grid.t_end ? format_double(*c.time_grid.t_end) : "auto");
  d.set("time", "n_points", std::to_string(c.time_grid.n_points));
  if (c.scenario == Scenario::closed_gate) d.set("closed_gate", "j_over_delta", join(c.j_over_delta));
  if (sweep) {
    std::string kinds;
    for (std::size_t i = 0; i < c.kinds.size(); ++i) {
      kinds += (i ? ", " : "");
      kinds += c.kinds[i] == ExperimentKind::transfer ? "transfer" : "blockade";
    }
    d.set("experiment", "kinds", kinds);
  }
  d.set("experiment", "allow_detuned_transfer", c.allow_detuned_transfer ? "true" : "false");
  d.set("experiment", "allow_superposition_transfer",
        c.allow_superposition_transfer ? "true" : "false");
  d.set("output", "path", c.output_path);
  return d;
}

}  // namespace qtransistor::app
