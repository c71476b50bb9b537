#pragma once

// Dense complex vectors and matrices of compile-time dimension.
//
// Only the handful of sizes the library needs are instantiated (4 for the
// two-molecule Hilbert space, 8 for the singular-value embedding used by the
// concurrence), so everything lives on the stack and is a regular value type.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace cqm {

using Complex = std::complex<double>;

inline constexpr std::size_t kDim = 4;

template <std::size_t N>
using Vector = std::array<Complex, N>;

using Vec4 = Vector<kDim>;

template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t size = N;

  constexpr Matrix() = default;

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

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<Complex, N * N> e_{};
};

using Mat4 = Matrix<kDim>;

template <std::size_t N>
Matrix<N> matmul(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  return matmul(a, b);
}

template <std::size_t N>
Vector<N> matvec(const Matrix<N>& m, const Vector<N>& v) {
  Vector<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i] += m(i, j) * v[j];
  return out;
}

template <std::size_t N>
Vector<N> operator*(const Matrix<N>& m, const Vector<N>& v) {
  return matvec(m, v);
}

template <std::size_t N>
Matrix<N> dagger(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = m(j, i);
  return out;
}

template <std::size_t N>
Matrix<N> conj(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

template <std::size_t N>
Complex trace(const Matrix<N>& m) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& m) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

// <a|b>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Vector<N>& a, const Vector<N>& b) {
  Complex s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// |a><b|
template <std::size_t N>
Matrix<N> outer(const Vector<N>& a, const Vector<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = a[i] * std::conj(b[j]);
  return out;
}

// <v|m|v>, real part only; the imaginary part vanishes for Hermitian m.
template <std::size_t N>
double expectation(const Matrix<N>& m, const Vector<N>& v) {
  return inner(v, matvec(m, v)).real();
}

template <std::size_t N>
Matrix<N> hermitian_part(const Matrix<N>& m) {
  return 0.5 * (m + dagger(m));
}

// Kronecker product of two 2x2 operators, first factor acting on molecule 1.
inline Mat4 kron(const Matrix<2>& a, const Matrix<2>& b) {
  Mat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

inline Vec4 kron(const Vector<2>& a, const Vector<2>& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

}  // namespace cqm
