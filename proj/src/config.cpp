// Copyright 2026 The otto-ion Authors
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

#include "otto/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace otto {

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::SingleCycle:
      return "single";
    case SweepKind::SweepT1:
      return "sweep_t1";
    case SweepKind::SweepTau:
      return "sweep_tau";
    case SweepKind::MultiCycle:
      return "multicycle";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError("not a non-negative integer: '" + std::string(text) + "'");
  return value;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SweepKind parse_kind(std::string_view v) {
  if (v == "single") return SweepKind::SingleCycle;
  if (v == "sweep_t1") return SweepKind::SweepT1;
  if (v == "sweep_tau") return SweepKind::SweepTau;
  if (v == "multicycle") return SweepKind::MultiCycle;
  throw ConfigError("kind must be one of single, sweep_t1, sweep_tau, multicycle");
}

MeasurementPolicy parse_policy(std::string_view v) {
  if (v == "postselect") return MeasurementPolicy::PostSelectGround;
  if (v == "feedback") return MeasurementPolicy::FeedbackPiPulse;
  throw ConfigError("policy must be postselect or feedback");
}

ReferencePolicy parse_reference(std::string_view v) {
  if (v == "steady") return ReferencePolicy::SteadyState;
  if (v == "gibbs") return ReferencePolicy::HotGibbs;
  throw ConfigError("reference must be steady or gibbs");
}

using Setter = std::function<void(SweepSpec&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"kind", [](SweepSpec& s, std::string_view v) { s.kind = parse_kind(v); }},
      {"grid", [](SweepSpec& s, std::string_view v) { s.grid = parse_grid(v); }},
      {"cycles", [](SweepSpec& s, std::string_view v) { s.cycles = parse_count(v); }},
      {"g", [](SweepSpec& s, std::string_view v) { s.params.g = parse_number(v); }},
      {"k", [](SweepSpec& s, std::string_view v) { s.params.k = parse_number(v); }},
      {"omega", [](SweepSpec& s, std::string_view v) { s.params.omega = parse_number(v); }},
      {"gamma", [](SweepSpec& s, std::string_view v) { s.params.gamma = parse_number(v); }},
      {"n_th", [](SweepSpec& s, std::string_view v) { s.params.n_th = parse_number(v); }},
      {"T_hot", [](SweepSpec& s, std::string_view v) { s.params.T_hot = parse_number(v); }},
      {"B_high", [](SweepSpec& s, std::string_view v) { s.params.B_high = parse_number(v); }},
      {"B_low", [](SweepSpec& s, std::string_view v) { s.params.B_low = parse_number(v); }},
      {"n_vib0", [](SweepSpec& s, std::string_view v) { s.params.n_vib0 = parse_number(v); }},
      {"n_cold", [](SweepSpec& s, std::string_view v) { s.params.n_cold = parse_number(v); }},
      {"t_heat", [](SweepSpec& s, std::string_view v) { s.times.t_heat = parse_number(v); }},
      {"tau", [](SweepSpec& s, std::string_view v) { s.times.tau = parse_number(v); }},
      {"step_size", [](SweepSpec& s, std::string_view v) { s.steps.step_size = parse_number(v); }},
      {"max_trace_drift",
       [](SweepSpec& s, std::string_view v) { s.steps.max_trace_drift = parse_number(v); }},
      {"max_negativity",
       [](SweepSpec& s, std::string_view v) { s.steps.max_negativity = parse_number(v); }},
      {"spectrum_stride",
       [](SweepSpec& s, std::string_view v) { s.steps.spectrum_stride = parse_count(v); }},
      {"policy", [](SweepSpec& s, std::string_view v) { s.measurement = parse_policy(v); }},
      {"reference", [](SweepSpec& s, std::string_view v) { s.reference = parse_reference(v); }},
      {"output", [](SweepSpec& s, std::string_view v) { s.output_path = std::string(v); }},
  };
  return table;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (true) {
      const auto next = text.find(':', pos);
      parts.push_back(parse_number(text.substr(pos, next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0)) throw ConfigError("range step must be > 0");
    if (!(stop >= start)) throw ConfigError("range stop must be >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    out.push_back(parse_number(text.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

void SweepSpec::validate() const {
  try {
    params.validate();
    times.validate();
    steps.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const bool sweep = kind == SweepKind::SweepT1 || kind == SweepKind::SweepTau;
  if (sweep) {
    if (grid.empty()) throw ConfigError("grid must be nonempty for " + to_string(kind));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
        throw ConfigError("grid values must be finite and > 0");
      if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly increasing");
    }
  }
  if (kind == SweepKind::MultiCycle && cycles < 1) throw ConfigError("cycles must be >= 1");
  if (output_path.empty()) throw ConfigError("output must be a nonempty path");
}

SweepSpec parse_config(std::string_view text) {
  SweepSpec spec;
  bool policy_given = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    try {
      it->second(spec, value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(key) + ": " + e.what(), line_no);
    }
    if (key == "policy") policy_given = true;
  }
  if (!policy_given && spec.kind == SweepKind::MultiCycle)
    spec.measurement = MeasurementPolicy::FeedbackPiPulse;
  spec.validate();
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const SweepSpec& s) {
  std::ostringstream out;
  out << "kind = " << to_string(s.kind) << '\n';
  if (!s.grid.empty()) {
    out << "grid = ";
    for (std::size_t i = 0; i < s.grid.size(); ++i) out << (i ? "," : "") << format_double(s.grid[i]);
    out << '\n';
  }
  out << "cycles = " << s.cycles << '\n';
  const EngineParams& p = s.params;
  out << "g = " << format_double(p.g) << '\n'
      << "k = " << format_double(p.k) << '\n'
      << "omega = " << format_double(p.omega) << '\n'
      << "gamma = " << format_double(p.gamma) << '\n'
      << "n_th = " << format_double(p.n_th) << '\n'
      << "T_hot = " << format_double(p.T_hot) << '\n'
      << "B_high = " << format_double(p.B_high) << '\n'
      << "B_low = " << format_double(p.B_low) << '\n'
      << "n_vib0 = " << format_double(p.n_vib0) << '\n'
      << "n_cold = " << format_double(p.n_cold) << '\n'
      << "t_heat = " << format_double(s.times.t_heat) << '\n'
      << "tau = " << format_double(s.times.tau) << '\n'
      << "step_size = " << format_double(s.steps.step_size) << '\n'
      << "max_trace_drift = " << format_double(s.steps.max_trace_drift) << '\n'
      << "max_negativity = " << format_double(s.steps.max_negativity) << '\n'
      << "spectrum_stride = " << s.steps.spectrum_stride << '\n'
      << "policy = " << to_string(s.measurement) << '\n'
      << "reference = " << to_string(s.reference) << '\n'
      << "output = " << s.output_path << '\n';
  return out.str();
}

SweepSpec preset(std::string_view name) {
  SweepSpec s;
  if (name == "fig3") {
    s.kind = SweepKind::SweepT1;
    s.grid = parse_grid("5:100:5");
    s.times.tau = 256.0;
    s.output_path = "fig3.csv";
  } else if (name == "fig4") {
    s.kind = SweepKind::SweepT1;
    s.grid = parse_grid("8:100:2");
    s.times.tau = 256.0;
    s.output_path = "fig4.csv";
  } else if (name == "fig5") {
    s.kind = SweepKind::SweepTau;
    s.grid = parse_grid("2:40:2");
    for (double tau : {48.0, 64.0, 96.0, 128.0, 192.0, 256.0}) s.grid.push_back(tau);
    s.times.t_heat = 100.0;
    s.output_path = "fig5.csv";
  } else if (name == "fig6") {
    s.kind = SweepKind::MultiCycle;
    s.cycles = 20;
    s.times = {25.0, 11.0};
    s.measurement = MeasurementPolicy::FeedbackPiPulse;
    s.output_path = "fig6.csv";
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

}  // namespace otto
