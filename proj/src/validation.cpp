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

#include "otto/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "otto/engine.hpp"

namespace otto {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult bounded(std::string name, double worst, double limit) {
  return {std::move(name), worst <= limit, "worst " + sci(worst) + " (limit " + sci(limit) + ")"};
}

}  // namespace

std::vector<CheckResult> run_property_suite(const EngineParams& params, const StepPolicy& steps,
                                            std::uint64_t seed, std::size_t samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> field(-2.0 * params.B_high, 2.0 * params.B_high);
  std::vector<CheckResult> out;
  const Liouvillian liouvillian(params);

  double trace_err = 0.0, herm_err = 0.0, super_err = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Mat4 rho = random_density_matrix<4>(rng);
    const double b = field(rng);
    const Mat4 d = lindblad_rhs(h_full(b, params), rho, params);
    trace_err = std::max(trace_err, std::abs(d.trace()));
    herm_err = std::max(herm_err, d.hermiticity_error());
    super_err = std::max(super_err, (liouvillian.apply(b, rho) - d).max_abs());
  }
  out.push_back(bounded("generator is trace preserving", trace_err, 1e-12));
  out.push_back(bounded("generator preserves hermiticity", herm_err, 1e-12));
  out.push_back(bounded("superoperator matches generator", super_err, 1e-12));

  double klein = 0.0, entropy_excess = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Mat2 rho = random_density_matrix<2>(rng);
    const Mat2 sigma = random_density_matrix<2>(rng);
    klein = std::max(klein, -relative_entropy(rho, sigma));
    const double s = von_neumann_entropy(rho);
    entropy_excess = std::max({entropy_excess, -s, s - std::log(2.0)});
  }
  out.push_back(bounded("relative entropy is nonnegative", klein, 1e-12));
  out.push_back(bounded("entropy lies in [0, ln 2]", entropy_excess, 1e-12));

  for (double b : {params.B_low, params.B_high}) {
    const Mat4 ss = steady_state(b, params);
    out.push_back(bounded("steady state is stationary at B = " + sci(b),
                          liouvillian.apply(b, ss).max_abs(), 1e-12));
  }

  {
    EngineParams closed = params;
    closed.gamma = 0.0;
    const Liouvillian forward(closed);
    const double b = params.B_high;
    const Mat4 rho0 = random_density_matrix<4>(rng);
    const auto there = evolve(rho0, 0.0, 5.0, [&](double, const Mat4& r) { return forward.apply(b, r); }, steps);
    const auto back = evolve(there.final_state, 0.0, 5.0,
                             [&](double, const Mat4& r) { return -forward.apply(b, r); }, steps);
    out.push_back(bounded("closed evolution is reversible", (back.final_state - rho0).max_abs(), 1e-8));
  }

  {
    const ConvergenceProbe probe = convergence_order(params);
    out.push_back({"integrator order in [3.7, 4.3]", probe.order >= 3.7 && probe.order <= 4.3,
                   "order " + std::to_string(probe.order)});
  }

  try {
    const RunSettings settings{params, steps, MeasurementPolicy::PostSelectGround,
                               ReferencePolicy::SteadyState};
    const Mat4 rho0 = initial_joint_state(params);
    const CycleRecord cy = run_cycle(rho0, settings, {10.0, 10.0});
    out.push_back(bounded("cycle trace drift", cy.max_trace_drift, steps.max_trace_drift));
    out.push_back(bounded("cycle negativity", -cy.min_eigenvalue, steps.max_negativity));
    out.push_back(bounded("irreversible work is nonnegative", -cy.w_ir_total, 1e-10));
    const double t_cold = effective_temperature(params.n_cold, params.omega);
    out.push_back(bounded("measurement cost below T_L ln 2", cy.meas_cost - t_cold * std::log(2.0), 1e-12));
    double sum = 0.0;
    for (const auto& s : cy.strokes) sum += s.delta_u;
    const double e0 = expectation(partial_trace(rho0, Subsystem::Electronic), h_system(params.B_high, params));
    const double e1 = cy.stroke(StrokeKind::Compression).energy_end;
    out.push_back(bounded("stroke energies add up", std::abs(sum - (e1 - e0)), 1e-12));
  } catch (const std::exception& e) {
    out.push_back({"short cycle runs", false, e.what()});
  }
  return out;
}

}  // namespace otto
