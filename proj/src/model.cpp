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

#include "otto/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace otto {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("EngineParams: ") + what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void EngineParams::validate() const {
  require(finite_positive(g), "g must be > 0");
  require(finite_positive(k), "k must be > 0");
  require(finite_positive(omega), "omega must be > 0");
  require(finite_positive(gamma), "gamma must be > 0");
  require(std::isfinite(n_th) && n_th >= 0.0, "n_th must be >= 0");
  require(finite_positive(T_hot), "T_hot must be > 0");
  require(std::isfinite(B_high) && std::isfinite(B_low), "fields must be finite");
  require(B_low < B_high, "B_low < B_high is required");
  require(std::isfinite(n_vib0) && n_vib0 >= 0.0, "n_vib0 must be >= 0");
  require(finite_positive(n_cold), "n_cold must be > 0");
}

RampSchedule::RampSchedule(double b_start, double b_end, double duration)
    : b_start_(b_start), b_end_(b_end), duration_(duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw std::invalid_argument("RampSchedule: duration must be finite and >= 0");
}

double RampSchedule::field(double t) const {
  if (!(t >= 0.0 && t <= duration_)) {
    std::ostringstream msg;
    msg << "b_field: t = " << t << " outside [0, " << duration_ << "]";
    throw std::invalid_argument(msg.str());
  }
  if (duration_ == 0.0) return b_start_;
  // std::lerp is exact at both endpoints.
  return std::lerp(b_start_, b_end_, t / duration_);
}

Mat2 h_system(double b, const EngineParams& params) {
  return ops::sigma_x() * params.g + ops::sigma_z() * b;
}

Mat4 h_full(double b, const EngineParams& params) {
  const Mat2 id = Mat2::identity();
  const Mat2 a = ops::annihilation();
  const Mat2 a_dag = a.adjoint();
  const Mat4 h_s = tensor_product(h_system(b, params), id);
  const Mat4 h_ph = tensor_product(id, a_dag * a) * params.omega;
  const Mat4 h_int =
      (tensor_product(ops::sigma_minus(), a_dag) + tensor_product(ops::sigma_plus(), a)) *
      params.k;
  return h_s + h_ph + h_int;
}

Mat4 lindblad_rhs(const Mat4& hamiltonian, const Mat4& rho, const EngineParams& params) {
  static const Mat4 lower = tensor_product(ops::sigma_minus(), Mat2::identity());
  static const Mat4 raise = tensor_product(ops::sigma_plus(), Mat2::identity());
  static const Mat4 n_up = raise * lower;    // sigma_+ sigma_-
  static const Mat4 n_down = lower * raise;  // sigma_- sigma_+

  const Complex minus_i{0.0, -1.0};
  Mat4 out = commutator(hamiltonian, rho) * minus_i;

  const double emission = (params.n_th + 1.0) * params.gamma / 2.0;
  if (emission != 0.0) {
    out += (lower * rho * raise * 2.0 - n_up * rho - rho * n_up) * emission;
  }
  const double absorption = params.n_th * params.gamma / 2.0;
  if (absorption != 0.0) {
    out += (raise * rho * lower * 2.0 - n_down * rho - rho * n_down) * absorption;
  }
  return out;
}

namespace {

Mat4 unit(std::size_t index) {
  Mat4 m;
  m.data()[index] = 1.0;
  return m;
}

}  // namespace

Liouvillian::Liouvillian(const EngineParams& params) {
  const Mat4 h0 = h_full(0.0, params);
  const Mat4 h1 = h_full(1.0, params);
  for (std::size_t col = 0; col < 16; ++col) {
    const Mat4 e = unit(col);
    const Mat4 l0 = lindblad_rhs(h0, e, params);
    const Mat4 l1 = lindblad_rhs(h1, e, params) - l0;
    for (std::size_t row = 0; row < 16; ++row) {
      const auto r = static_cast<unsigned char>(row);
      const auto c = static_cast<unsigned char>(col);
      if (l0.data()[row] != Complex{}) fixed_.push_back({r, c, l0.data()[row]});
      if (std::abs(l1.data()[row]) > 1e-15) field_.push_back({r, c, l1.data()[row]});
    }
  }
}

Mat4 Liouvillian::apply(double b, const Mat4& rho) const {
  Mat4 out;
  auto& o = out.data();
  const auto& v = rho.data();
  for (const Entry& e : fixed_) o[e.row] += e.value * v[e.col];
  for (const Entry& e : field_) o[e.row] += (b * e.value) * v[e.col];
  return out;
}

std::array<Complex, 256> Liouvillian::dense(double b) const {
  std::array<Complex, 256> m{};
  for (const Entry& e : fixed_) m[e.row * 16u + e.col] += e.value;
  for (const Entry& e : field_) m[e.row * 16u + e.col] += b * e.value;
  return m;
}

Mat4 steady_state(double b, const EngineParams& params) {
  constexpr std::size_t n = 16;
  std::array<Complex, n * n> a = Liouvillian(params).dense(b);
  std::array<Complex, n> rhs{};
  // The trace functional annihilates every column of L, so the equation for
  // entry (0,0) is redundant; replace it by Tr rho = 1.
  for (std::size_t c = 0; c < n; ++c) a[c] = 0.0;
  for (std::size_t d = 0; d < 4; ++d) a[d * 5] = 1.0;
  rhs[0] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (std::abs(a[pivot * n + col]) < 1e-14)
      throw std::runtime_error("steady_state: generator has no unique stationary state");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r * n + col] / a[col * n + col];
      if (f == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  Mat4 rho;
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i * n + c] * rho.data()[c];
    rho.data()[i] = acc / a[i * n + i];
  }
  return rho.hermitian_part();
}

double adiabatic_time_bound(const EngineParams& params) {
  if (params.B_low == 0.0 || params.B_high == 0.0)
    throw std::invalid_argument("adiabatic_time_bound: fields must be nonzero");
  const double inv_low = 1.0 / (params.B_low * params.B_low);
  const double inv_high = 1.0 / (params.B_high * params.B_high);
  return params.g / 8.0 * std::abs(inv_low - inv_high);
}

double effective_temperature(double n_bar, double omega) {
  if (!(n_bar > 0.0))
    throw std::invalid_argument("effective_temperature: occupation must be > 0 (T -> 0 as n -> 0)");
  return omega / std::log1p(1.0 / n_bar);
}

Mat2 initial_phonon_state(double n_vib0) {
  if (!(n_vib0 >= 0.0)) throw std::invalid_argument("initial_phonon_state: n_vib0 must be >= 0");
  const double p = n_vib0 / (1.0 + n_vib0);
  return Mat2::diagonal({1.0 - p, p});
}

}  // namespace otto
