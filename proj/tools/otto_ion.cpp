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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "otto/config.hpp"
#include "otto/experiment.hpp"
#include "otto/validation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAccuracyError = 2;

struct Overrides {
  std::string config;
  std::string out;
  std::optional<double> step_size;
  std::string policy;
};

void add_common(CLI::App* cmd, Overrides& o, bool with_config) {
  if (with_config) cmd->add_option("--config", o.config, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output CSV path (manifest goes to <out>.manifest.json)");
  cmd->add_option("--step-size", o.step_size, "RK4 step size");
  cmd->add_option("--policy", o.policy, "measurement policy")
      ->check(CLI::IsMember({"postselect", "feedback"}));
}

otto::SweepSpec resolve(otto::SweepKind kind, const Overrides& o) {
  otto::SweepSpec spec = o.config.empty() ? otto::SweepSpec{} : otto::load_config(o.config);
  if (o.config.empty() && kind == otto::SweepKind::MultiCycle)
    spec.measurement = otto::MeasurementPolicy::FeedbackPiPulse;
  spec.kind = kind;
  if (spec.grid.empty() && kind == otto::SweepKind::SweepT1) spec.grid = otto::preset("fig3").grid;
  if (spec.grid.empty() && kind == otto::SweepKind::SweepTau) spec.grid = otto::preset("fig5").grid;
  return spec;
}

void apply(otto::SweepSpec& spec, const Overrides& o) {
  if (!o.out.empty()) spec.output_path = o.out;
  if (o.step_size) spec.steps.step_size = *o.step_size;
  if (o.policy == "postselect") spec.measurement = otto::MeasurementPolicy::PostSelectGround;
  if (o.policy == "feedback") spec.measurement = otto::MeasurementPolicy::FeedbackPiPulse;
  spec.validate();
}

int run(const otto::SweepSpec& spec) {
  const otto::ExperimentResult result = otto::run_experiment(spec, otto::worker_count_from_env());
  otto::write_experiment(result, spec.output_path);
  std::size_t failed = 0;
  for (const auto& p : result.manifest.points) {
    if (p.status == "ok") continue;
    ++failed;
    std::cerr << "point " << p.x << ": " << p.status << '\n';
  }
  std::printf("%s: %zu points, %zu failed, %.2f s -> %s\n", otto::to_string(spec.kind).c_str(),
              result.manifest.points.size(), failed, result.manifest.wall_seconds,
              spec.output_path.c_str());
  return failed ? kAccuracyError : kOk;
}

int validate(const Overrides& o) {
  otto::SweepSpec spec = o.config.empty() ? otto::SweepSpec{} : otto::load_config(o.config);
  apply(spec, o);
  int failed = 0;
  for (const auto& check : otto::run_property_suite(spec.params, spec.steps)) {
    std::printf("%s  %s: %s\n", check.passed ? "PASS" : "FAIL", check.name.c_str(), check.detail.c_str());
    failed += !check.passed;
  }
  return failed ? kAccuracyError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-ion quantum Otto engine simulator", "otto-ion"};
  app.set_version_flag("--version", std::string(OTTO_ION_VERSION));
  app.require_subcommand(1);

  Overrides o;
  struct Entry {
    const char* name;
    const char* help;
    otto::SweepKind kind;
  };
  const Entry runs[] = {
      {"single", "run one cycle", otto::SweepKind::SingleCycle},
      {"sweep-t1", "sweep the thermalization time", otto::SweepKind::SweepT1},
      {"sweep-tau", "sweep the ramp duration", otto::SweepKind::SweepTau},
      {"multicycle", "chain cycles and report pairwise efficiency and power", otto::SweepKind::MultiCycle},
  };
  for (const auto& e : runs) add_common(app.add_subcommand(e.name, e.help), o, true);
  for (const char* fig : {"fig3", "fig4", "fig5", "fig6"})
    add_common(app.add_subcommand(fig, std::string("reproduce the ") + fig + " data set"), o, false);
  add_common(app.add_subcommand("validate", "run the property suite"), o, true);
  std::string csv;
  app.add_subcommand("plotdata", "write two-column .dat files from a result CSV")
      ->add_option("csv", csv, "result CSV")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "validate") return validate(o);
    if (cmd == "plotdata") {
      for (const auto& path : otto::emit_plotdata(csv)) std::printf("%s\n", path.c_str());
      return kOk;
    }
    otto::SweepSpec spec;
    if (cmd.rfind("fig", 0) == 0) {
      spec = otto::preset(cmd);
    } else {
      for (const auto& e : runs)
        if (cmd == e.name) spec = resolve(e.kind, o);
    }
    apply(spec, o);
    return run(spec);
  } catch (const otto::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
