#pragma once

// Wootters concurrence of two-qubit states.
//
// For rho = W W^dagger (columns of W are sqrt(p_k) |v_k>), the square roots
// lambda_i of the eigenvalues of R = rho rho~ are the singular values of the
// complex symmetric matrix tau = W^T (sy x sy) W. They are read off the
// spectrum of the Hermitian embedding [[0, tau], [tau^dagger, 0]], which
// resolves near-zero lambda_i to machine precision instead of sqrt(eps).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "cqm/eigen.hpp"
#include "cqm/error.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/linalg.hpp"
#include "cqm/state.hpp"

namespace cqm {

struct ConcurrenceResult {
  double value = 0.0;
  std::array<double, 4> lambdas{};  // descending
};

// sigma_y (x) sigma_y in the positional basis.
inline Mat4 sigma_yy() {
  Mat4 y;
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

// rho~ = (sy x sy) rho* (sy x sy)
inline Mat4 spin_flip(const Mat4& rho) {
  const Mat4 y = sigma_yy();
  return y * conj(rho) * y;
}

inline Mat4 spin_flip(const DensityMatrix& rho) { return spin_flip(rho.matrix()); }

inline ConcurrenceResult concurrence(const DensityMatrix& rho) {
  const auto& es = rho.spectrum();

  Mat4 w;
  for (std::size_t k = 0; k < kDim; ++k) {
    // DensityMatrix already rejected eigenvalues below -kDensityTolerance.
    const double amp = std::sqrt(std::max(0.0, es.energies[k]));
    for (std::size_t i = 0; i < kDim; ++i) w(i, k) = amp * es.vectors[k][i];
  }
  const Mat4 tau = transpose(w) * sigma_yy() * w;

  Matrix<8> embed;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      embed(i, kDim + j) = tau(i, j);
      embed(kDim + j, i) = std::conj(tau(i, j));
    }
  const auto sv = hermitian_eigensolve(embed);

  ConcurrenceResult out;
  for (std::size_t i = 0; i < 4; ++i) out.lambdas[i] = std::max(0.0, sv.energies[7 - i]);
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  const auto& l = out.lambdas;
  out.value = std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
  return out;
}

// 2 |c_LL c_RR - c_LR c_RL| for a pure state.
inline double concurrence_pure(const StateVector& psi) {
  const StateVector pos = to_positional(psi);
  const Vec4& c = pos.amplitudes();
  return std::min(1.0, 2.0 * std::abs(c[0] * c[3] - c[1] * c[2]));
}

}  // namespace cqm
