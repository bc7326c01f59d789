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

#include "otto/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace otto {

namespace ops {

Mat2 sigma_z() { return Mat2::diagonal({-1.0, 1.0}); }

Mat2 sigma_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Mat2 sigma_y() {
  Mat2 m;
  m(0, 1) = Complex{0.0, -1.0};
  m(1, 0) = Complex{0.0, 1.0};
  return m;
}

Mat2 sigma_minus() {
  Mat2 m;
  m(0, 1) = 1.0;
  return m;
}

Mat2 sigma_plus() {
  Mat2 m;
  m(1, 0) = 1.0;
  return m;
}

Mat2 annihilation() {
  Mat2 m;
  m(0, 1) = 1.0;
  return m;
}

Mat2 lower_projector() { return Mat2::diagonal({1.0, 0.0}); }
Mat2 upper_projector() { return Mat2::diagonal({0.0, 1.0}); }

}  // namespace ops

Mat4 tensor_product(const Mat2& electronic, const Mat2& vibrational) {
  Mat4 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          out(2 * a + j, 2 * b + k) = electronic(a, b) * vibrational(j, k);
  return out;
}

Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
  Mat2 out;
  if (keep == Subsystem::Electronic) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  } else {
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) out(j, k) = rho(j, k) + rho(2 + j, 2 + k);
  }
  return out;
}

template <std::size_t N>
double expectation(const Matrix<N>& rho, const Matrix<N>& h) {
  Complex acc{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) acc += rho(i, j) * h(j, i);
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
    std::ostringstream msg;
    msg << "expectation: Tr[rho h] has imaginary part " << acc.imag()
        << "; arguments are not Hermitian";
    throw std::domain_error(msg.str());
  }
  return acc.real();
}

template double expectation<2>(const Mat2&, const Mat2&);
template double expectation<4>(const Mat4&, const Mat4&);

Mat2 Spectrum2::reconstruct() const {
  return projector(0) * values[0] + projector(1) * values[1];
}

Mat2 Spectrum2::projector(std::size_t k) const {
  Mat2 p;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) p(i, j) = vectors[k][i] * std::conj(vectors[k][j]);
  return p;
}

namespace {

std::array<Complex, 2> normalize_with_phase(std::array<Complex, 2> v) {
  const double norm = std::hypot(std::abs(v[0]), std::abs(v[1]));
  const double tiny = 1e-14 * norm;
  const Complex pivot = std::abs(v[0]) > tiny ? v[0] : v[1];
  const Complex phase = std::conj(pivot) / std::abs(pivot);
  v[0] *= phase / norm;
  v[1] *= phase / norm;
  // The pivot component is real by construction; drop the rounding residue.
  if (std::abs(v[0]) > tiny)
    v[0] = Complex{v[0].real(), 0.0};
  else
    v[1] = Complex{v[1].real(), 0.0};
  return v;
}

}  // namespace

Spectrum2 eigh2(const Mat2& h) {
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument("eigh2: matrix is not Hermitian (error " +
                                std::to_string(h.hermiticity_error()) + ")");
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  // Average the off-diagonal pair so tiny anti-Hermitian noise is ignored.
  const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double radius = std::hypot(half_diff, std::abs(b));

  Spectrum2 s;
  if (std::abs(b) == 0.0) {
    if (a <= d) {
      s.values = {a, d};
      s.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
    } else {
      s.values = {d, a};
      s.vectors = {{{0.0, 1.0}, {1.0, 0.0}}};
    }
    return s;
  }

  s.values = {mean - radius, mean + radius};
  // Pick, for each eigenvalue, the null-vector formula without cancellation.
  std::array<Complex, 2> lo;
  std::array<Complex, 2> hi;
  if (half_diff >= 0.0) {
    lo = {b, Complex{-(half_diff + radius), 0.0}};
    hi = {Complex{half_diff + radius, 0.0}, std::conj(b)};
  } else {
    lo = {Complex{half_diff - radius, 0.0}, std::conj(b)};
    hi = {b, Complex{radius - half_diff, 0.0}};
  }
  s.vectors = {normalize_with_phase(lo), normalize_with_phase(hi)};
  return s;
}

std::array<double, 4> eigvalsh4(const Mat4& h) {
  // Real symmetric embedding [[Re, -Im], [Im, Re]]: every eigenvalue of h
  // appears twice in the 8x8 spectrum.
  constexpr std::size_t n = 8;
  std::array<double, n * n> m{};
  const Mat4 herm = h.hermitian_part();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex z = herm(i, j);
      m[i * n + j] = z.real();
      m[(i + 4) * n + (j + 4)] = z.real();
      m[i * n + (j + 4)] = -z.imag();
      m[(i + 4) * n + j] = z.imag();
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale += at(i, i) * at(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= 1e-34 * std::max(scale, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::array<double, n> diag{};
  for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  return {0.5 * (diag[0] + diag[1]), 0.5 * (diag[2] + diag[3]), 0.5 * (diag[4] + diag[5]),
          0.5 * (diag[6] + diag[7])};
}

Mat2 gibbs_state(const Mat2& h, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("gibbs_state: temperature must be finite and > 0 (got " +
                                std::to_string(temperature) +
                                "); use ground_state_projector for T = 0");
  const Spectrum2 s = eigh2(h);
  // Shift by the ground energy so the weights never overflow.
  const double w1 = std::exp(-(s.values[1] - s.values[0]) / temperature);
  const double z = 1.0 + w1;
  return s.projector(0) * (1.0 / z) + s.projector(1) * (w1 / z);
}

Mat2 ground_state_projector(const Mat2& h) { return eigh2(h).projector(0); }

double von_neumann_entropy(const Mat2& rho) {
  const Spectrum2 s = eigh2(rho);
  double entropy = 0.0;
  for (double lambda : s.values)
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  return entropy;
}

double relative_entropy(const Mat2& rho, const Mat2& sigma) {
  const Spectrum2 r = eigh2(rho);
  const Spectrum2 s = eigh2(sigma);

  double rho_log_rho = 0.0;
  for (double lambda : r.values)
    if (lambda > 0.0) rho_log_rho += lambda * std::log(lambda);

  double rho_log_sigma = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double weight = expectation(rho, s.projector(k));
    if (s.values[k] < kSupportTolerance) {
      if (weight > kSupportTolerance) return std::numeric_limits<double>::infinity();
      continue;
    }
    rho_log_sigma += weight * std::log(s.values[k]);
  }
  return rho_log_rho - rho_log_sigma;
}

ElectronicProjection project_electronic_ground(const Mat4& rho) {
  Mat2 minus_block;
  Mat2 plus_block;
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      minus_block(j, k) = rho(j, k);
      plus_block(j, k) = rho(2 + j, 2 + k);
    }
  }
  ElectronicProjection out;
  out.p_minus = minus_block.trace().real();
  out.p_plus = plus_block.trace().real();
  if (out.p_minus >= ElectronicProjection::kMinOutcomeProbability)
    out.phonon_given_minus = minus_block * (1.0 / out.p_minus);
  if (out.p_plus >= ElectronicProjection::kMinOutcomeProbability)
    out.phonon_given_plus = plus_block * (1.0 / out.p_plus);
  return out;
}

double min_eigenvalue(const Mat2& h) { return eigh2(h.hermitian_part()).values[0]; }

double min_eigenvalue(const Mat4& h) { return eigvalsh4(h)[0]; }

template <std::size_t N>
std::optional<std::string> DensityMatrix<N>::check(const Matrix<N>& m,
                                                   const StateTolerance& tol) {
  std::ostringstream why;
  const double herm = m.hermiticity_error();
  if (!(herm <= tol.hermiticity)) {
    why << "not Hermitian (max |A - A^dagger| = " << herm << ")";
    return why.str();
  }
  const Complex tr = m.trace();
  if (!(std::abs(tr - 1.0) <= tol.trace)) {
    why << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i differs from 1";
    return why.str();
  }
  const double lowest = min_eigenvalue(m);
  if (!(lowest >= -tol.negativity)) {
    why << "negative eigenvalue " << lowest;
    return why.str();
  }
  return std::nullopt;
}

template <std::size_t N>
DensityMatrix<N>::DensityMatrix(const Matrix<N>& m, const StateTolerance& tol) : m_(m) {
  if (auto problem = check(m, tol)) throw InvalidState("invalid density matrix: " + *problem);
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

}  // namespace otto
