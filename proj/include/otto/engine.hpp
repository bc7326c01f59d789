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

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "otto/integrator.hpp"
#include "otto/model.hpp"
#include "otto/qcore.hpp"

namespace otto {

/// Stage durations. The measurement is instantaneous, so one cycle lasts
/// t_heat + 2 tau.
struct StrokeTimes {
  double t_heat = 100.0;
  double tau = 256.0;

  void validate() const;
  double cycle_time() const { return t_heat + 2.0 * tau; }

  friend bool operator==(const StrokeTimes&, const StrokeTimes&) = default;
};

enum class StrokeKind { Heating, Expansion, Measurement, Compression };
enum class RampDirection { Expand, Compress };

/// What happens to the ion after the electronic state is measured.
enum class MeasurementPolicy {
  /// Keep only the |-> outcome; the phonon is conditioned on it.
  PostSelectGround,
  /// A pi pulse flips the |+> outcome back to |->; the phonon keeps the
  /// outcome-averaged state.
  FeedbackPiPulse,
};

/// Thermal state that ramp endpoints are compared against when computing the
/// relative-entropy form of the irreversible work.
enum class ReferencePolicy {
  /// Reduced stationary state of the master equation at the final field.
  SteadyState,
  /// gibbs_state(H_S(final field), T_hot).
  HotGibbs,
};

std::string to_string(StrokeKind kind);
std::string to_string(MeasurementPolicy policy);
std::string to_string(ReferencePolicy policy);

/// Everything besides stage durations that a cycle depends on.
struct RunSettings {
  EngineParams params;
  StepPolicy steps;
  MeasurementPolicy measurement = MeasurementPolicy::PostSelectGround;
  ReferencePolicy reference = ReferencePolicy::SteadyState;
};

struct StrokeRecord {
  StrokeKind kind = StrokeKind::Heating;
  double duration = 0.0;
  /// Change of <H_S> of the electronic state across the stroke, each end
  /// evaluated with the field in force there.
  double delta_u = 0.0;
  double q = 0.0;
  double w = 0.0;
  double w_ir_energy = 0.0;
  /// T_hot S(rho || reference); NaN when the reference state is undefined.
  double w_ir_entropy = 0.0;
  double p_minus = 1.0;
  double p_plus = 0.0;
  double meas_cost = 0.0;
  double energy_start = 0.0;
  double energy_end = 0.0;
  double field_end = 0.0;
  Mat4 end_state_joint;
  Mat2 end_state_system;
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
};

struct CycleRecord {
  std::array<StrokeRecord, 4> strokes;
  double q_hot = 0.0;
  double q_cold = 0.0;
  double w_expand = 0.0;    ///< change of <H_S> during expansion
  double w_compress = 0.0;  ///< change of <H_S> during compression
  /// Work output w_expand + w_compress.
  double w_net = 0.0;
  double w_ir_total = 0.0;         ///< relative-entropy form, both ramps
  double w_ir_energy_total = 0.0;  ///< energy form, both ramps
  double eta = 0.0;
  double eta_ir = 0.0;
  double meas_cost = 0.0;
  double eta_m = 0.0;
  double cycle_time = 0.0;
  /// 0 < w_net <= q_hot.
  bool operational = false;
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;

  const StrokeRecord& stroke(StrokeKind kind) const { return strokes[static_cast<std::size_t>(kind)]; }
};

struct MultiCycleReport {
  std::vector<CycleRecord> cycles;
  /// Entry i belongs to cycle i + 2 (pairs of consecutive cycles).
  std::vector<double> eta_avg_pairwise;
  /// eta_avg_pairwise / cycle time.
  std::vector<double> power;
  /// w_net / cycle time for every cycle.
  std::vector<double> work_rate;
};

/// A stroke that cannot be completed, e.g. post-selecting an outcome that has
/// zero probability.
class StrokeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial joint state |-><-| (x) phonon(n_vib0).
Mat4 initial_joint_state(const EngineParams& params);

/// Constant field B_high for t_heat; the change of <H_S(B_high)> is the heat.
StrokeRecord stroke_heating(const Mat4& rho_joint, const RunSettings& settings, double t_heat);

/// Linear ramp B_high -> B_low (Expand) or back (Compress) with the bath on.
StrokeRecord stroke_ramp(const Mat4& rho_joint, const RunSettings& settings,
                         RampDirection direction, double tau);

/// Eigen-populations of rho_start over H_S(b_start) carried onto the
/// eigenbasis of H_S(b_end); coherences are dropped.
Mat2 adiabatic_reference_state(const Mat2& rho_start, double b_start, double b_end,
                               const EngineParams& params);

/// Reference thermal state for the end of a ramp that finishes at field b_end.
Mat2 thermal_reference_state(double b_end, const RunSettings& settings);

/// Tr[rho_final h] - Tr[rho_ref h]
double irr_work_energy(const Mat2& rho_final, const Mat2& rho_ref, const Mat2& h_final);

/// t_hot * S(rho_final || rho_ref)
double irr_work_entropy(const Mat2& rho_final, const Mat2& rho_ref, double t_hot);

/// -T_L (p_- ln p_- + p_+ ln p_+)
double measurement_cost(double p_minus, double p_plus, double t_cold);

/// Instantaneous projective measurement of the electronic state at B_low.
StrokeRecord stroke_measurement(const Mat4& rho_joint, const RunSettings& settings);

CycleRecord run_cycle(const Mat4& initial_joint, const RunSettings& settings,
                      const StrokeTimes& times);

/// Chains n cycles starting from initial_joint_state; each cycle starts from
/// the joint state left by the previous compression.
MultiCycleReport run_cycles(std::size_t n, const RunSettings& settings, const StrokeTimes& times);

/// 1 - sqrt(B_low / B_high)
double curzon_ahlborn(const EngineParams& params);

/// 1 - B_low / B_high
double otto_efficiency(const EngineParams& params);

}  // namespace otto
