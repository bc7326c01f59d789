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
#include <vector>

#include "otto/qcore.hpp"

namespace otto {

/// Physical constants of the single-ion engine in units hbar = k_B = 1,
/// measured against the phonon frequency. Defaults are the reference
/// parameter set used by every figure preset.
struct EngineParams {
  double g = 0.2;        ///< transverse drive, Rabi frequency 2g
  double k = 0.1;        ///< electron-phonon coupling
  double omega = 1.0;    ///< phonon frequency
  double gamma = 0.085;  ///< vacuum decay rate of the electronic transition
  double n_th = 0.1;     ///< mean occupation of the hot bath
  double T_hot = 10.0;   ///< hot bath temperature
  double B_high = 10.0;
  double B_low = 5.0;
  double n_vib0 = 0.0;   ///< initial phonon excitation
  double n_cold = 0.02;  ///< phonon occupation that sets the measurement temperature

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  friend bool operator==(const EngineParams&, const EngineParams&) = default;
};

/// Linear field ramp b_start -> b_end over [0, duration]. A constant field is
/// a ramp with equal endpoints.
class RampSchedule {
 public:
  RampSchedule(double b_start, double b_end, double duration);

  static RampSchedule constant(double b, double duration) { return {b, b, duration}; }

  double b_start() const { return b_start_; }
  double b_end() const { return b_end_; }
  double duration() const { return duration_; }

  /// Throws std::invalid_argument for t outside [0, duration]. Endpoints are
  /// returned exactly.
  double field(double t) const;

 private:
  double b_start_;
  double b_end_;
  double duration_;
};

/// Free-function spelling of RampSchedule::field.
inline double b_field(double t, const RampSchedule& schedule) { return schedule.field(t); }

/// g sigma_x + b sigma_z
Mat2 h_system(double b, const EngineParams& params);

/// H_S(b) (x) I + omega I (x) a^dagger a + k (a^dagger sigma_- + sigma_+ a)
Mat4 h_full(double b, const EngineParams& params);

/// H_full evaluated on a schedule at time t (relative to the schedule start).
inline Mat4 h_full(double t, const RampSchedule& schedule, const EngineParams& params) {
  return h_full(schedule.field(t), params);
}

/// Master-equation generator for a given joint Hamiltonian:
///   -i[H, rho] + (n_th + 1) Gamma/2 D[sigma_-] rho + n_th Gamma/2 D[sigma_+] rho
/// with D[L] rho = 2 L rho L^dagger - {L^dagger L, rho} and sigma_+- acting on
/// the electronic factor only.
Mat4 lindblad_rhs(const Mat4& hamiltonian, const Mat4& rho, const EngineParams& params);

/// Generator at time t of a field schedule.
inline Mat4 lindblad_rhs(double t, const Mat4& rho, const RampSchedule& schedule,
                         const EngineParams& params) {
  return lindblad_rhs(h_full(t, schedule, params), rho, params);
}

/// Sparse 16x16 superoperator form of the generator. The field enters
/// linearly, so L(b) = L_0 + b L_1; both parts are obtained by probing
/// lindblad_rhs on the matrix units.
class Liouvillian {
 public:
  explicit Liouvillian(const EngineParams& params);

  /// d rho / dt at field b.
  Mat4 apply(double b, const Mat4& rho) const;

  /// Dense row-major 16x16 matrix of L(b) acting on row-major vec(rho).
  std::array<Complex, 256> dense(double b) const;

 private:
  struct Entry {
    unsigned char row;
    unsigned char col;
    Complex value;
  };
  std::vector<Entry> fixed_;
  std::vector<Entry> field_;
};

/// Stationary joint state of the generator at constant field b (unique for
/// n_th > 0 or Gamma > 0 with the coherent coupling present). Throws
/// std::runtime_error if the stationary system is singular.
Mat4 steady_state(double b, const EngineParams& params);

/// (g / 8) |1/B_L^2 - 1/B_H^2|; zero fields are rejected.
double adiabatic_time_bound(const EngineParams& params);

/// omega / ln(1/n + 1): temperature at which a mode of frequency omega has
/// mean occupation n. n <= 0 is rejected.
double effective_temperature(double n_bar, double omega);

/// diag(1 - p, p) with p = n / (1 + n); |0><0| for n = 0.
Mat2 initial_phonon_state(double n_vib0);

}  // namespace otto
