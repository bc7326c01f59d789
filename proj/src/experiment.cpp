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

#include "otto/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace otto {

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool ExperimentResult::all_ok() const {
  return std::all_of(manifest.points.begin(), manifest.points.end(),
                     [](const PointDiagnostics& p) { return p.status == "ok"; });
}

std::size_t worker_count_from_env() {
  if (const char* env = std::getenv("OTTO_ION_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_safe(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; }, ';');
  return s;
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

/// Runs `task(i)` for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& task) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct PointOutcome {
  PointDiagnostics diag;
  CycleRecord cycle;
};

PointOutcome run_point(const SweepSpec& spec, const StrokeTimes& times, double x) {
  PointOutcome out;
  out.diag.x = x;
  const auto start = std::chrono::steady_clock::now();
  try {
    const RunSettings settings = spec.settings();
    out.cycle = run_cycle(initial_joint_state(settings.params), settings, times);
    out.diag.trace_drift = out.cycle.max_trace_drift;
    out.diag.min_eigenvalue = out.cycle.min_eigenvalue;
  } catch (const IntegrationError& e) {
    out.diag.status = "failed: " + csv_safe(e.what());
    out.diag.trace_drift = e.diagnostics().trace_drift;
    out.diag.min_eigenvalue = e.diagnostics().min_eigenvalue_seen;
  } catch (const std::exception& e) {
    out.diag.status = "failed: " + csv_safe(e.what());
  }
  out.diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string bool_cell(bool ok, bool value) { return ok ? (value ? "1" : "0") : "nan"; }

std::string sweep_csv(const SweepSpec& spec, const std::vector<PointOutcome>& points) {
  std::string csv;
  if (spec.kind == SweepKind::SweepT1) {
    csv += join({"t1", "Q_H", "W1", "W2", "w_net", "eta", "operational", "status"});
  } else if (spec.kind == SweepKind::SweepTau) {
    csv += join({"tau", "W_ir_energy", "W_ir_entropy", "w_net", "eta_ir", "operational", "status"});
  } else {
    csv += join({"t1", "tau", "Q_H", "W1", "Q_L", "W2", "w_net", "W_ir_energy", "W_ir_entropy", "eta",
                 "eta_ir", "meas_cost", "eta_m", "p_minus", "p_plus", "cycle_time", "operational",
                 "status"});
  }
  for (const PointOutcome& p : points) {
    const bool ok = p.diag.status == "ok";
    auto v = [ok](double x) { return format_value(ok ? x : kNaN); };
    const CycleRecord& c = p.cycle;
    if (spec.kind == SweepKind::SweepT1) {
      csv += join({format_value(p.diag.x), v(c.q_hot), v(c.w_expand), v(c.w_compress), v(c.w_net),
                   v(c.eta), bool_cell(ok, c.operational), p.diag.status});
    } else if (spec.kind == SweepKind::SweepTau) {
      csv += join({format_value(p.diag.x), v(c.w_ir_energy_total), v(c.w_ir_total), v(c.w_net),
                   v(c.eta_ir), bool_cell(ok, c.operational), p.diag.status});
    } else {
      const StrokeRecord& m = c.stroke(StrokeKind::Measurement);
      csv += join({format_value(spec.times.t_heat), format_value(spec.times.tau), v(c.q_hot),
                   v(c.w_expand), v(c.q_cold), v(c.w_compress), v(c.w_net), v(c.w_ir_energy_total),
                   v(c.w_ir_total), v(c.eta), v(c.eta_ir), v(c.meas_cost), v(c.eta_m), v(m.p_minus),
                   v(m.p_plus), format_value(spec.times.cycle_time()), bool_cell(ok, c.operational),
                   p.diag.status});
    }
  }
  return csv;
}

std::string multicycle_csv(const SweepSpec& spec, const MultiCycleReport* report,
                           const std::string& status) {
  std::string csv = join({"cycle_index", "Q_H", "w_net", "W_ir", "eta_avg_pairwise", "power",
                          "work_rate", "cycle_time", "status"});
  for (std::size_t i = 0; i < spec.cycles; ++i) {
    if (!report) {
      csv += join({std::to_string(i + 1), "nan", "nan", "nan", "nan", "nan", "nan",
                   format_value(spec.times.cycle_time()), status});
      continue;
    }
    const CycleRecord& c = report->cycles[i];
    const double eta_avg = i > 0 ? report->eta_avg_pairwise[i - 1] : kNaN;
    const double power = i > 0 ? report->power[i - 1] : kNaN;
    csv += join({std::to_string(i + 1), format_value(c.q_hot), format_value(c.w_net),
                 format_value(c.w_ir_total), format_value(eta_avg), format_value(power),
                 format_value(report->work_rate[i]), format_value(c.cycle_time), "ok"});
  }
  return csv;
}

}  // namespace

ExperimentResult run_experiment(const SweepSpec& spec, std::size_t threads) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.manifest.spec = spec;
  result.manifest.tool_version = OTTO_ION_VERSION;

  if (spec.kind == SweepKind::MultiCycle) {
    result.manifest.threads = 1;
    try {
      const MultiCycleReport report = run_cycles(spec.cycles, spec.settings(), spec.times);
      for (std::size_t i = 0; i < report.cycles.size(); ++i) {
        PointDiagnostics d;
        d.x = static_cast<double>(i + 1);
        d.trace_drift = report.cycles[i].max_trace_drift;
        d.min_eigenvalue = report.cycles[i].min_eigenvalue;
        result.manifest.points.push_back(d);
      }
      result.csv = multicycle_csv(spec, &report, "ok");
    } catch (const std::exception& e) {
      const std::string status = "failed: " + csv_safe(e.what());
      for (std::size_t i = 0; i < spec.cycles; ++i)
        result.manifest.points.push_back({static_cast<double>(i + 1), status, kNaN, kNaN, 0.0});
      result.csv = multicycle_csv(spec, nullptr, status);
    }
  } else {
    std::vector<double> xs = spec.kind == SweepKind::SingleCycle ? std::vector<double>{0.0} : spec.grid;
    std::vector<PointOutcome> outcomes(xs.size());
    result.manifest.threads = std::clamp<std::size_t>(threads, 1, xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) {
      StrokeTimes times = spec.times;
      if (spec.kind == SweepKind::SweepT1) times.t_heat = xs[i];
      if (spec.kind == SweepKind::SweepTau) times.tau = xs[i];
      outcomes[i] = run_point(spec, times, xs[i]);
    });
    for (const auto& o : outcomes) result.manifest.points.push_back(o.diag);
    result.csv = sweep_csv(spec, outcomes);
  }

  result.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string RunManifest::to_json() const {
  using nlohmann::json;
  const EngineParams& p = spec.params;
  json doc;
  doc["tool"] = "otto-ion";
  doc["tool_version"] = tool_version;
  doc["kind"] = to_string(spec.kind);
  doc["parameters"] = {{"g", p.g},           {"k", p.k},           {"omega", p.omega},
                       {"gamma", p.gamma},   {"n_th", p.n_th},     {"T_hot", p.T_hot},
                       {"B_high", p.B_high}, {"B_low", p.B_low},   {"n_vib0", p.n_vib0},
                       {"n_cold", p.n_cold}, {"t_heat", spec.times.t_heat}, {"tau", spec.times.tau}};
  doc["grid"] = spec.grid;
  doc["cycles"] = spec.cycles;
  doc["measurement_policy"] = to_string(spec.measurement);
  doc["reference_policy"] = to_string(spec.reference);
  doc["integrator"] = {{"method", "rk4-fixed-step"},
                       {"step_size", spec.steps.step_size},
                       {"max_trace_drift", spec.steps.max_trace_drift},
                       {"max_negativity", spec.steps.max_negativity},
                       {"spectrum_stride", spec.steps.spectrum_stride}};
  doc["threads"] = threads;
  doc["wall_seconds"] = wall_seconds;
  doc["config"] = write_config(spec);
  json pts = json::array();
  for (const auto& d : points) {
    // JSON has no NaN; failed points without diagnostics get null.
    auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    pts.push_back({{"x", d.x},
                   {"status", d.status},
                   {"trace_drift", num(d.trace_drift)},
                   {"min_eigenvalue", num(d.min_eigenvalue)},
                   {"seconds", d.seconds}});
  }
  doc["points"] = pts;
  return doc.dump(2);
}

void write_experiment(const ExperimentResult& result, const std::string& path) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write '" + path + "'");
  csv << result.csv;
  std::ofstream manifest(path + ".manifest.json", std::ios::binary);
  if (!manifest) throw std::runtime_error("cannot write '" + path + ".manifest.json'");
  manifest << result.manifest.to_json() << '\n';
}

}  // namespace otto
