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
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace otto {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major. Only N = 2 (a single qubit
/// or the truncated phonon mode) and N = 4 (the joint electronic-vibrational
/// space) are instantiated.
template <std::size_t N>
class Matrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 operators are supported");

 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() : data_{} {}

  static constexpr Matrix zero() { return Matrix{}; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * N + col];
  }

  constexpr std::array<Complex, N * N>& data() { return data_; }
  constexpr const std::array<Complex, N * N>& data() const { return data_; }

  constexpr Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  constexpr Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  constexpr Matrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend constexpr Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend constexpr Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend constexpr Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend constexpr Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend constexpr Matrix operator*(Matrix a, double s) { return a *= Complex{s, 0.0}; }
  friend constexpr Matrix operator*(double s, Matrix a) { return a *= Complex{s, 0.0}; }
  friend constexpr Matrix operator-(Matrix a) { return a *= Complex{-1.0, 0.0}; }

  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;

  constexpr Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  constexpr Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entrywise modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  /// max |A - A^dagger| entrywise.
  double hermiticity_error() const { return (*this - adjoint()).max_abs(); }

  bool is_hermitian(double tol = 1e-10) const { return hermiticity_error() <= tol; }

  /// (A + A^dagger) / 2
  Matrix hermitian_part() const { return (*this + adjoint()) * 0.5; }

 private:
  std::array<Complex, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
Matrix<N> commutator(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b - b * a;
}

/// Single-qubit and single-mode operators. The electronic basis is ordered
/// (|->, |+>) and the vibrational basis (|0>, |1>).
namespace ops {

/// sigma_z = diag(-1, +1) so that |-> is its lowest eigenstate.
Mat2 sigma_z();
Mat2 sigma_x();
Mat2 sigma_y();
/// sigma_- = |-><+|
Mat2 sigma_minus();
/// sigma_+ = |+><-|
Mat2 sigma_plus();
/// Phonon annihilation truncated to two levels, a = |0><1|.
Mat2 annihilation();
/// |-><-| (== |0><0| in the phonon basis)
Mat2 lower_projector();
/// |+><+| (== |1><1| in the phonon basis)
Mat2 upper_projector();

}  // namespace ops

enum class Subsystem { Electronic, Vibrational };

/// Kronecker product, electronic factor first: the joint basis is
/// |-,0>, |-,1>, |+,0>, |+,1>.
Mat4 tensor_product(const Mat2& electronic, const Mat2& vibrational);

/// Reduced state of one factor of a joint 4x4 operator.
Mat2 partial_trace(const Mat4& rho, Subsystem keep);

/// Re Tr[rho h]. Throws std::domain_error if the imaginary part exceeds 1e-10,
/// which only happens for non-Hermitian arguments.
template <std::size_t N>
double expectation(const Matrix<N>& rho, const Matrix<N>& h);

extern template double expectation<2>(const Mat2&, const Mat2&);
extern template double expectation<4>(const Mat4&, const Mat4&);

struct Spectrum2 {
  /// Ascending.
  std::array<double, 2> values;
  /// vectors[k] is the normalized eigenvector for values[k]; its first
  /// non-negligible component is real and positive.
  std::array<std::array<Complex, 2>, 2> vectors;

  /// V diag(values) V^dagger
  Mat2 reconstruct() const;
  /// |v_k><v_k|
  Mat2 projector(std::size_t k) const;
};

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix.
/// Throws std::invalid_argument when `h` is not Hermitian to 1e-10.
Spectrum2 eigh2(const Mat2& h);

/// Eigenvalues (ascending) of a 4x4 Hermitian matrix by cyclic complex
/// Jacobi rotations. Used for positivity diagnostics of joint states.
std::array<double, 4> eigvalsh4(const Mat4& h);

/// Functions of a Hermitian 2x2 matrix via its spectrum.
template <typename F>
Mat2 apply_spectral(const Mat2& h, F&& f) {
  const Spectrum2 s = eigh2(h);
  Mat2 out;
  for (std::size_t k = 0; k < 2; ++k) out += s.projector(k) * f(s.values[k]);
  return out;
}

/// exp(-h / T) / Z. Throws std::invalid_argument for T <= 0 or non-finite T;
/// use ground_state_projector for the zero-temperature limit.
Mat2 gibbs_state(const Mat2& h, double temperature);

/// Projector on the lowest eigenvector of h (the T -> 0 limit of gibbs_state).
Mat2 ground_state_projector(const Mat2& h);

/// -sum lambda ln lambda with 0 ln 0 := 0, natural log (k_B = 1).
double von_neumann_entropy(const Mat2& rho);

/// Eigenvalues of sigma below this count as outside its support.
inline constexpr double kSupportTolerance = 1e-12;

/// Tr(rho ln rho) - Tr(rho ln sigma). Returns +infinity when rho has weight
/// outside the support of sigma.
double relative_entropy(const Mat2& rho, const Mat2& sigma);

/// Outcome statistics of a projective measurement of the electronic state.
struct ElectronicProjection {
  double p_minus = 0.0;
  double p_plus = 0.0;
  /// <-|rho|-> / p_minus; empty when p_minus < kMinOutcomeProbability.
  std::optional<Mat2> phonon_given_minus;
  /// <+|rho|+> / p_plus; empty when p_plus < kMinOutcomeProbability.
  std::optional<Mat2> phonon_given_plus;

  static constexpr double kMinOutcomeProbability = 1e-14;
};

ElectronicProjection project_electronic_ground(const Mat4& rho);

/// Validation thresholds for density matrices.
struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double negativity = 1e-10;
};

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Trace-one positive Hermitian matrix. The constructor validates; the
/// contents are immutable afterwards.
template <std::size_t N>
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix<N>& m, const StateTolerance& tol = {});

  const Matrix<N>& matrix() const { return m_; }
  operator const Matrix<N>&() const { return m_; }

  /// Returns an explanation if `m` is not a valid state under `tol`.
  static std::optional<std::string> check(const Matrix<N>& m, const StateTolerance& tol = {});

 private:
  Matrix<N> m_;
};

using JointState = DensityMatrix<4>;
using ReducedState = DensityMatrix<2>;

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;

/// Smallest eigenvalue of a Hermitian matrix (2x2 closed form, 4x4 Jacobi).
double min_eigenvalue(const Mat2& h);
double min_eigenvalue(const Mat4& h);

}  // namespace otto
