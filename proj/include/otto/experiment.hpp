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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "otto/config.hpp"

namespace otto {

struct PointDiagnostics {
  /// Grid value (t1 or tau), cycle index, or 0 for a single cycle.
  double x = 0.0;
  /// "ok" or "failed: <reason>".
  std::string status = "ok";
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double seconds = 0.0;
};

struct RunManifest {
  SweepSpec spec;
  std::string tool_version;
  std::size_t threads = 1;
  double wall_seconds = 0.0;
  std::vector<PointDiagnostics> points;

  /// Pretty-printed JSON document.
  std::string to_json() const;
};

struct ExperimentResult {
  std::string csv;
  RunManifest manifest;

  bool all_ok() const;
};

/// Worker count from OTTO_ION_THREADS (falls back to the hardware count).
std::size_t worker_count_from_env();

/// Runs every point of the spec and renders the CSV. Failed points are kept
/// with a status message; nothing is thrown for simulation failures. Points
/// are computed on `threads` workers but rows are always in grid order.
ExperimentResult run_experiment(const SweepSpec& spec, std::size_t threads = 1);

/// Writes `<path>` and `<path>.manifest.json`.
void write_experiment(const ExperimentResult& result, const std::string& path);

/// Decimal rendering used in every CSV: 12 significant digits, "nan"/"inf".
std::string format_value(double x);

/// Two-column gnuplot files derived from a result CSV, written next to it.
/// Returns the paths written. Throws std::runtime_error on an unknown header.
std::vector<std::string> emit_plotdata(const std::string& csv_path);

}  // namespace otto
