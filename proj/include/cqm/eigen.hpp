#pragma once

// Hermitian matrices and a cyclic complex Jacobi eigensolver.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "cqm/error.hpp"
#include "cqm/linalg.hpp"

namespace cqm {

// Relative tolerance of the Hermiticity check at construction.
inline constexpr double kHermitianTolerance = 1e-12;

// A matrix known to be Hermitian. Construction checks the symmetry and then
// stores the exact Hermitian part, so downstream code never sees a residual
// anti-Hermitian component.
template <std::size_t N>
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const Matrix<N>& m) {
    if (!all_finite(m)) throw NonHermitianInput("matrix has non-finite entries");
    const double scale = std::max(1.0, frobenius_norm(m));
    const double asym = max_abs_diff(m, dagger(m));
    if (asym > kHermitianTolerance * scale)
      throw NonHermitianInput("matrix is not Hermitian (max |m - m^dagger| = " + std::to_string(asym) + ")");
    m_ = hermitian_part(m);
  }

  const Matrix<N>& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  Matrix<N> m_;
};

using HermitianMatrix4 = HermitianMatrix<kDim>;

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> energies{};      // ascending
  std::array<Vector<N>, N> vectors{};    // vectors[k] pairs with energies[k]
  std::array<bool, N - 1> degenerate{};  // degenerate[k]: energies k and k+1 coincide

  bool is_degenerate(std::size_t k) const {
    return (k > 0 && degenerate[k - 1]) || (k + 1 < N && degenerate[k]);
  }
  bool any_degenerate() const {
    return std::any_of(degenerate.begin(), degenerate.end(), [](bool b) { return b; });
  }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One two-sided Jacobi rotation annihilating a(p, q). The unitary is a phase
// on column q (making a(p, q) real) followed by a real Givens rotation.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  const double t = std::abs(theta) > 1e150
                       ? 0.5 / theta
                       : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex cphase = std::conj(phase);

  // a <- a U
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * cphase * akq;
    a(k, q) = s * akp + c * cphase * akq;
  }
  // a <- U^dagger a
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * cphase * vkq;
    v(k, q) = s * vkp + c * cphase * vkq;
  }
}

}  // namespace detail

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 64;
inline constexpr double kDegeneracyTolerance = 1e-9;
inline constexpr double kPhaseThreshold = 1e-9;

// Eigenvalues ascending, eigenvectors orthonormal. Each eigenvector's first
// component with modulus above kPhaseThreshold is made real and positive,
// so repeated solves of the same matrix are bitwise identical.
template <std::size_t N>
EigenSystem<N> hermitian_eigensolve(const HermitianMatrix<N>& h) {
  Matrix<N> a = h.matrix();
  Matrix<N> v = Matrix<N>::identity();
  const double scale = frobenius_norm(a);
  const double target = kJacobiTolerance * scale;

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t col = order[k];
    out.energies[k] = a(col, col).real();
    Vector<N> vec;
    for (std::size_t i = 0; i < N; ++i) vec[i] = v(i, col);
    for (std::size_t i = 0; i < N; ++i) {
      const double mod = std::abs(vec[i]);
      if (mod > kPhaseThreshold) {
        const Complex rot = std::conj(vec[i]) / mod;
        for (auto& x : vec) x *= rot;
        vec[i] = mod;
        break;
      }
    }
    out.vectors[k] = vec;
  }

  const double gap = kDegeneracyTolerance * std::max(1.0, scale);
  for (std::size_t k = 0; k + 1 < N; ++k)
    out.degenerate[k] = std::abs(out.energies[k + 1] - out.energies[k]) < gap;
  return out;
}

template <std::size_t N>
EigenSystem<N> hermitian_eigensolve(const Matrix<N>& m) {
  return hermitian_eigensolve(HermitianMatrix<N>(m));
}

// V diag(f(E)) V^dagger for a Hermitian matrix's eigensystem.
template <std::size_t N, class F>
Matrix<N> spectral_function(const EigenSystem<N>& es, F&& f) {
  Matrix<N> out;
  for (std::size_t k = 0; k < N; ++k) out += f(es.energies[k]) * outer(es.vectors[k], es.vectors[k]);
  return out;
}

}  // namespace cqm
