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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otto/engine.hpp"
#include "otto/integrator.hpp"
#include "otto/model.hpp"

namespace otto {

enum class SweepKind { SingleCycle, SweepT1, SweepTau, MultiCycle };

std::string to_string(SweepKind kind);

/// One experiment: what to vary, the base point, and where to write.
struct SweepSpec {
  SweepKind kind = SweepKind::SingleCycle;
  /// t_heat values (SweepT1) or tau values (SweepTau); unused otherwise.
  std::vector<double> grid;
  std::size_t cycles = 20;
  EngineParams params;
  StrokeTimes times;
  StepPolicy steps;
  MeasurementPolicy measurement = MeasurementPolicy::PostSelectGround;
  ReferencePolicy reference = ReferencePolicy::SteadyState;
  std::string output_path = "otto.csv";

  RunSettings settings() const { return {params, steps, measurement, reference}; }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  /// 1-based line of the offending entry, 0 when not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `start:stop:step` (inclusive of stop when it lies on the grid) or a comma
/// separated list.
std::vector<double> parse_grid(std::string_view text);

/// Parses the flat `key = value` format; `#` starts a comment. Unknown keys
/// and malformed values raise ConfigError with the line number. Missing keys
/// keep their defaults.
SweepSpec parse_config(std::string_view text);

/// Reads and parses a config file.
SweepSpec load_config(const std::string& path);

/// Serializes every field; parse_config(write_config(s)) == s.
std::string write_config(const SweepSpec& spec);

/// Figure presets: "fig3", "fig4", "fig5", "fig6".
SweepSpec preset(std::string_view name);

}  // namespace otto
