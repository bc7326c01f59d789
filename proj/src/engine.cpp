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

#include "otto/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace otto {

void StrokeTimes::validate() const {
  if (!(t_heat > 0.0) || !std::isfinite(t_heat))
    throw std::invalid_argument("StrokeTimes: t_heat must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("StrokeTimes: tau must be > 0");
}

std::string to_string(StrokeKind kind) {
  switch (kind) {
    case StrokeKind::Heating:
      return "heating";
    case StrokeKind::Expansion:
      return "expansion";
    case StrokeKind::Measurement:
      return "measurement";
    case StrokeKind::Compression:
      return "compression";
  }
  return "unknown";
}

std::string to_string(MeasurementPolicy policy) {
  return policy == MeasurementPolicy::PostSelectGround ? "postselect" : "feedback";
}

std::string to_string(ReferencePolicy policy) {
  return policy == ReferencePolicy::SteadyState ? "steady" : "gibbs";
}

Mat4 initial_joint_state(const EngineParams& params) {
  return tensor_product(ops::lower_projector(), initial_phonon_state(params.n_vib0));
}

namespace {

double system_energy(const Mat4& joint, double b, const EngineParams& params) {
  return expectation(partial_trace(joint, Subsystem::Electronic), h_system(b, params));
}

EvolutionResult evolve_schedule(const Mat4& rho, const RampSchedule& schedule,
                                const RunSettings& settings) {
  const Liouvillian liouvillian(settings.params);
  return evolve(rho, 0.0, schedule.duration(), schedule_generator(liouvillian, schedule),
                settings.steps);
}

void finish(StrokeRecord& rec, const EvolutionResult& evo) {
  rec.end_state_joint = evo.final_state;
  rec.end_state_system = partial_trace(evo.final_state, Subsystem::Electronic);
  rec.trace_drift = evo.trace_drift;
  rec.min_eigenvalue = evo.min_eigenvalue_seen;
}

}  // namespace

StrokeRecord stroke_heating(const Mat4& rho_joint, const RunSettings& settings, double t_heat) {
  if (!(t_heat > 0.0)) throw std::invalid_argument("stroke_heating: t_heat must be > 0");
  const EngineParams& p = settings.params;
  const EvolutionResult evo = evolve_schedule(rho_joint, RampSchedule::constant(p.B_high, t_heat), settings);

  StrokeRecord rec;
  rec.kind = StrokeKind::Heating;
  rec.duration = t_heat;
  rec.field_end = p.B_high;
  rec.energy_start = system_energy(rho_joint, p.B_high, p);
  rec.energy_end = system_energy(evo.final_state, p.B_high, p);
  rec.delta_u = rec.energy_end - rec.energy_start;
  rec.q = rec.delta_u;
  rec.w = 0.0;
  finish(rec, evo);
  return rec;
}

Mat2 adiabatic_reference_state(const Mat2& rho_start, double b_start, double b_end,
                               const EngineParams& params) {
  const Spectrum2 before = eigh2(h_system(b_start, params));
  const Spectrum2 after = eigh2(h_system(b_end, params));
  Mat2 out;
  for (std::size_t k = 0; k < 2; ++k)
    out += after.projector(k) * expectation(rho_start, before.projector(k));
  return out;
}

Mat2 thermal_reference_state(double b_end, const RunSettings& settings) {
  switch (settings.reference) {
    case ReferencePolicy::SteadyState:
      return partial_trace(steady_state(b_end, settings.params), Subsystem::Electronic);
    case ReferencePolicy::HotGibbs:
      return gibbs_state(h_system(b_end, settings.params), settings.params.T_hot);
  }
  throw std::logic_error("thermal_reference_state: unknown policy");
}

double irr_work_energy(const Mat2& rho_final, const Mat2& rho_ref, const Mat2& h_final) {
  return expectation(rho_final, h_final) - expectation(rho_ref, h_final);
}

double irr_work_entropy(const Mat2& rho_final, const Mat2& rho_ref, double t_hot) {
  return t_hot * relative_entropy(rho_final, rho_ref);
}

StrokeRecord stroke_ramp(const Mat4& rho_joint, const RunSettings& settings,
                         RampDirection direction, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("stroke_ramp: tau must be > 0");
  const EngineParams& p = settings.params;
  const bool expand = direction == RampDirection::Expand;
  const double b_start = expand ? p.B_high : p.B_low;
  const double b_end = expand ? p.B_low : p.B_high;

  const EvolutionResult evo = evolve_schedule(rho_joint, RampSchedule(b_start, b_end, tau), settings);

  StrokeRecord rec;
  rec.kind = expand ? StrokeKind::Expansion : StrokeKind::Compression;
  rec.duration = tau;
  rec.field_end = b_end;
  rec.energy_start = system_energy(rho_joint, b_start, p);
  rec.energy_end = system_energy(evo.final_state, b_end, p);
  rec.delta_u = rec.energy_end - rec.energy_start;
  rec.w = rec.delta_u;
  rec.q = 0.0;
  finish(rec, evo);

  const Mat2 h_end = h_system(b_end, p);
  const Mat2 rho_start_system = partial_trace(rho_joint, Subsystem::Electronic);
  rec.w_ir_energy = irr_work_energy(
      rec.end_state_system, adiabatic_reference_state(rho_start_system, b_start, b_end, p), h_end);
  try {
    rec.w_ir_entropy =
        irr_work_entropy(rec.end_state_system, thermal_reference_state(b_end, settings), p.T_hot);
  } catch (const std::runtime_error&) {
    // No unique stationary state, e.g. gamma = 0.
    rec.w_ir_entropy = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

double measurement_cost(double p_minus, double p_plus, double t_cold) {
  auto term = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
  return -t_cold * (term(p_minus) + term(p_plus));
}

StrokeRecord stroke_measurement(const Mat4& rho_joint, const RunSettings& settings) {
  const EngineParams& p = settings.params;
  const ElectronicProjection proj = project_electronic_ground(rho_joint);

  Mat2 phonon;
  if (settings.measurement == MeasurementPolicy::PostSelectGround) {
    if (!proj.phonon_given_minus)
      throw StrokeError("stroke_measurement: ground outcome has probability " +
                        std::to_string(proj.p_minus) + "; cannot post-select");
    phonon = *proj.phonon_given_minus;
  } else {
    phonon = partial_trace(rho_joint, Subsystem::Vibrational);
  }

  StrokeRecord rec;
  rec.kind = StrokeKind::Measurement;
  rec.duration = 0.0;
  rec.field_end = p.B_low;
  rec.end_state_joint = tensor_product(ops::lower_projector(), phonon);
  rec.end_state_system = ops::lower_projector();
  rec.energy_start = system_energy(rho_joint, p.B_low, p);
  rec.energy_end = expectation(rec.end_state_system, h_system(p.B_low, p));
  rec.delta_u = rec.energy_end - rec.energy_start;
  rec.q = rec.delta_u;
  rec.w = 0.0;
  rec.p_minus = proj.p_minus;
  rec.p_plus = proj.p_plus;
  rec.meas_cost = measurement_cost(proj.p_minus, proj.p_plus, effective_temperature(p.n_cold, p.omega));
  rec.min_eigenvalue = min_eigenvalue(rec.end_state_joint);
  return rec;
}

CycleRecord run_cycle(const Mat4& initial_joint, const RunSettings& settings,
                      const StrokeTimes& times) {
  times.validate();
  CycleRecord cy;
  auto& s = cy.strokes;
  s[0] = stroke_heating(initial_joint, settings, times.t_heat);
  s[1] = stroke_ramp(s[0].end_state_joint, settings, RampDirection::Expand, times.tau);
  s[2] = stroke_measurement(s[1].end_state_joint, settings);
  s[3] = stroke_ramp(s[2].end_state_joint, settings, RampDirection::Compress, times.tau);

  cy.q_hot = s[0].q;
  cy.q_cold = s[2].q;
  cy.w_expand = s[1].w;
  cy.w_compress = s[3].w;
  cy.w_net = cy.w_expand + cy.w_compress;
  cy.w_ir_total = s[1].w_ir_entropy + s[3].w_ir_entropy;
  cy.w_ir_energy_total = s[1].w_ir_energy + s[3].w_ir_energy;
  cy.meas_cost = s[2].meas_cost;
  cy.cycle_time = times.cycle_time();

  if (cy.q_hot > 0.0) {
    cy.eta = cy.w_net / cy.q_hot;
    cy.eta_ir = (cy.w_net - cy.w_ir_total) / cy.q_hot;
    cy.eta_m = cy.w_net / (cy.q_hot + cy.meas_cost);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cy.eta = cy.eta_ir = cy.eta_m = nan;
  }
  cy.operational = cy.q_hot > 0.0 && cy.w_net > 0.0 && cy.w_net <= cy.q_hot;

  cy.max_trace_drift = 0.0;
  cy.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& st : s) {
    cy.max_trace_drift = std::max(cy.max_trace_drift, st.trace_drift);
    cy.min_eigenvalue = std::min(cy.min_eigenvalue, st.min_eigenvalue);
  }
  return cy;
}

MultiCycleReport run_cycles(std::size_t n, const RunSettings& settings, const StrokeTimes& times) {
  if (n == 0) throw std::invalid_argument("run_cycles: need at least one cycle");
  MultiCycleReport report;
  report.cycles.reserve(n);
  Mat4 state = initial_joint_state(settings.params);
  for (std::size_t i = 0; i < n; ++i) {
    report.cycles.push_back(run_cycle(state, settings, times));
    const CycleRecord& cy = report.cycles.back();
    state = cy.stroke(StrokeKind::Compression).end_state_joint;
    report.work_rate.push_back(cy.w_net / cy.cycle_time);
    if (i == 0) continue;
    const CycleRecord& prev = report.cycles[i - 1];
    const double eta_avg = ((cy.w_net + prev.w_net) - (cy.w_ir_total + prev.w_ir_total)) /
                           (cy.q_hot + prev.q_hot);
    report.eta_avg_pairwise.push_back(eta_avg);
    report.power.push_back(eta_avg / cy.cycle_time);
  }
  return report;
}

double curzon_ahlborn(const EngineParams& params) {
  if (!(params.B_low > 0.0 && params.B_high > 0.0))
    throw std::invalid_argument("curzon_ahlborn: fields must be positive");
  return 1.0 - std::sqrt(params.B_low / params.B_high);
}

double otto_efficiency(const EngineParams& params) {
  if (params.B_high == 0.0) throw std::invalid_argument("otto_efficiency: B_high must be nonzero");
  return 1.0 - params.B_low / params.B_high;
}

}  // namespace otto
