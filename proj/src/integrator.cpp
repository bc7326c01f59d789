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

#include "otto/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace otto {

void StepPolicy::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size))
    throw std::invalid_argument("StepPolicy: step_size must be > 0");
  if (!(max_trace_drift > 0.0)) throw std::invalid_argument("StepPolicy: max_trace_drift must be > 0");
  if (!(max_negativity > 0.0)) throw std::invalid_argument("StepPolicy: max_negativity must be > 0");
  if (spectrum_stride == 0) throw std::invalid_argument("StepPolicy: spectrum_stride must be >= 1");
}

EvolutionResult evolve(const Mat4& rho0, double t_start, double t_end, const Generator& rhs,
                       const StepPolicy& policy) {
  policy.validate();
  if (!(t_end >= t_start))
    throw std::invalid_argument("evolve: t_end must not precede t_start");

  EvolutionResult result;
  result.final_state = rho0;
  result.min_eigenvalue_seen = min_eigenvalue(rho0.hermitian_part());
  if (t_end == t_start) return result;

  const double span = t_end - t_start;
  const double h = policy.step_size;
  // Full steps of size h, then one shortened step; a remainder at rounding
  // level is absorbed into the last full step instead.
  auto full_steps = static_cast<std::size_t>(std::floor(span / h));
  double remainder = span - static_cast<double>(full_steps) * h;
  if (remainder <= 1e-9 * h) {
    remainder = 0.0;
  }
  if (full_steps == 0 && remainder == 0.0) remainder = span;
  const std::size_t total = full_steps + (remainder > 0.0 ? 1 : 0);

  const Complex trace0 = rho0.trace();
  Mat4 rho = rho0;
  for (std::size_t i = 0; i < total; ++i) {
    const double t = t_start + static_cast<double>(i) * h;
    const double t_next = (i + 1 == total) ? t_end : t_start + static_cast<double>(i + 1) * h;
    const double dt = t_next - t;
    const double mid = t + 0.5 * dt;

    const Mat4 k1 = rhs(t, rho);
    const Mat4 k2 = rhs(mid, rho + k1 * (0.5 * dt));
    const Mat4 k3 = rhs(mid, rho + k2 * (0.5 * dt));
    const Mat4 k4 = rhs(t_next, rho + k3 * dt);
    rho += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    ++result.steps_taken;

    const double drift = std::abs(rho.trace() - trace0);
    result.trace_drift = std::max(result.trace_drift, drift);
    if ((i + 1) % policy.spectrum_stride == 0 || i + 1 == total) {
      result.hermiticity_drift = std::max(result.hermiticity_drift, rho.hermiticity_error());
      result.min_eigenvalue_seen =
          std::min(result.min_eigenvalue_seen, min_eigenvalue(rho.hermitian_part()));
    }
    if (!std::isfinite(rho(0, 0).real())) {
      result.final_state = rho;
      throw IntegrationError("evolve: state diverged at t = " + std::to_string(t_next), result);
    }
  }

  result.final_state = rho.hermitian_part();
  result.trace_drift = std::max(result.trace_drift, std::abs(result.final_state.trace() - trace0));

  if (result.trace_drift > policy.max_trace_drift) {
    std::ostringstream msg;
    msg << "evolve: trace drift " << result.trace_drift << " exceeds " << policy.max_trace_drift;
    throw IntegrationError(msg.str(), result);
  }
  if (result.min_eigenvalue_seen < -policy.max_negativity) {
    std::ostringstream msg;
    msg << "evolve: state eigenvalue " << result.min_eigenvalue_seen << " below -"
        << policy.max_negativity;
    throw IntegrationError(msg.str(), result);
  }
  return result;
}

Generator schedule_generator(const Liouvillian& liouvillian, const RampSchedule& schedule) {
  return [liouvillian, schedule](double t, const Mat4& rho) {
    return liouvillian.apply(schedule.field(std::clamp(t, 0.0, schedule.duration())), rho);
  };
}

namespace {

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).max_abs(); }

Mat4 run_unchecked(const Mat4& rho0, double duration, const Generator& rhs, double h) {
  StepPolicy loose;
  loose.step_size = h;
  loose.max_trace_drift = 1.0;
  loose.max_negativity = 1.0;
  loose.spectrum_stride = 1u << 30;
  return evolve(rho0, 0.0, duration, rhs, loose).final_state;
}

}  // namespace

ConvergenceProbe convergence_order(const Mat4& rho0, double duration, const Generator& rhs,
                                   double h) {
  const Mat4 reference = run_unchecked(rho0, duration, rhs, h / 16.0);
  ConvergenceProbe probe;
  probe.error_coarse = max_abs_diff(run_unchecked(rho0, duration, rhs, h), reference);
  probe.error_fine = max_abs_diff(run_unchecked(rho0, duration, rhs, h / 2.0), reference);
  probe.order = std::log2(probe.ratio());
  return probe;
}

ConvergenceProbe convergence_order(const EngineParams& params) {
  const Liouvillian liouvillian(params);
  const double duration = 1.0;
  const RampSchedule ramp(params.B_high, params.B_low, duration);
  const Mat4 rho0 = tensor_product(ops::lower_projector(), ops::lower_projector());
  return convergence_order(rho0, duration, schedule_generator(liouvillian, ramp), 0.04);
}

}  // namespace otto
