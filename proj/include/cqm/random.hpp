#pragma once

// Seeded generators of random inputs for property checks.

#include <cmath>
#include <random>

#include "cqm/hamiltonian.hpp"
#include "cqm/linalg.hpp"
#include "cqm/state.hpp"

namespace cqm::random {

using Engine = std::mt19937_64;

inline Complex gaussian_complex(Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

// Entries of order `scale`.
template <std::size_t N>
Matrix<N> hermitian(Engine& rng, double scale = 1.0) {
  Matrix<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = scale * gaussian_complex(rng);
  return hermitian_part(m);
}

// Haar-distributed pure state (normalized complex Gaussian vector).
inline StateVector haar_state(Engine& rng) {
  Vec4 v;
  for (auto& x : v) x = gaussian_complex(rng);
  return StateVector::normalized(v);
}

// Haar-distributed single-qubit unitary e^{i phi} [[a, -b*], [b, a*]].
inline Matrix<2> qubit_unitary(Engine& rng) {
  Complex a = gaussian_complex(rng);
  Complex b = gaussian_complex(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.141592653589793);
  const Complex ph = std::polar(1.0, u(rng));
  Matrix<2> m;
  m(0, 0) = ph * a;
  m(0, 1) = -ph * std::conj(b);
  m(1, 0) = ph * b;
  m(1, 1) = ph * std::conj(a);
  return m;
}

// Couplings in the experimentally relevant range: J in [5, 50] ueV,
// tunneling in [0, J], detunings in [-J, J].
inline SystemParams params(Engine& rng, bool resonant = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.j = 5.0 + 45.0 * u(rng);
  p.delta1 = p.j * u(rng);
  p.delta2 = p.j * u(rng);
  p.eps1 = resonant ? 0.0 : p.j * (2.0 * u(rng) - 1.0);
  p.eps2 = resonant ? 0.0 : p.j * (2.0 * u(rng) - 1.0);
  return p;
}

}  // namespace cqm::random
