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
#include <functional>
#include <stdexcept>
#include <string>

#include "otto/model.hpp"
#include "otto/qcore.hpp"

namespace otto {

struct StepPolicy {
  double step_size = 1e-3;
  double max_trace_drift = 1e-8;
  double max_negativity = 1e-9;
  /// The lowest eigenvalue is sampled every this many steps and at the end.
  std::size_t spectrum_stride = 100;

  void validate() const;

  friend bool operator==(const StepPolicy&, const StepPolicy&) = default;
};

struct EvolutionResult {
  Mat4 final_state;
  /// |Tr rho(t_end) - Tr rho(t_start)|
  double trace_drift = 0.0;
  double min_eigenvalue_seen = 0.0;
  /// Largest max|rho - rho^dagger| seen before the final symmetrization.
  double hermiticity_drift = 0.0;
  std::size_t steps_taken = 0;
};

/// Raised when an evolution leaves the accuracy envelope of its StepPolicy.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, EvolutionResult diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const EvolutionResult& diagnostics() const { return diagnostics_; }

 private:
  EvolutionResult diagnostics_;
};

/// d rho / dt = rhs(t, rho); t is absolute time.
using Generator = std::function<Mat4(double, const Mat4&)>;

/// Classic fixed-step RK4 from t_start to t_end. The last step is shortened to
/// land on t_end. The result is symmetrized once at the end; the trace is not
/// renormalized.
EvolutionResult evolve(const Mat4& rho0, double t_start, double t_end, const Generator& rhs,
                       const StepPolicy& policy);

/// Master-equation generator over a field schedule starting at t = 0.
Generator schedule_generator(const Liouvillian& liouvillian, const RampSchedule& schedule);

struct ConvergenceProbe {
  double order = 0.0;
  double error_coarse = 0.0;  ///< max-norm error at step h
  double error_fine = 0.0;    ///< max-norm error at step h/2
  double ratio() const { return error_coarse / error_fine; }
};

/// Empirical order log2(e(h) / e(h/2)) against an h/16 reference run.
ConvergenceProbe convergence_order(const Mat4& rho0, double duration, const Generator& rhs,
                                   double h);

/// The default probe: reference parameters, unit duration, a field ramp from
/// B_high to B_low starting from |-,0>, h = 0.04.
ConvergenceProbe convergence_order(const EngineParams& params = {});

}  // namespace otto
