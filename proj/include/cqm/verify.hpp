#pragma once

// Self-check of the library's invariants, run by `cqm verify`.
//
// Each check draws its inputs from a fixed seed and reports the worst
// deviation it saw against its tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cqm/dynamics.hpp"
#include "cqm/eigen.hpp"
#include "cqm/entanglement.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/random.hpp"
#include "cqm/spectrum.hpp"

namespace cqm::verify {

struct CheckResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed() const { return worst <= tolerance; }
};

struct Options {
  std::uint64_t seed = 20130401;
  int samples = 200;
};

namespace detail {

inline double eigen_roundtrip(random::Engine& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Mat4 m = random::hermitian<4>(rng, 10.0);
    const auto es = hermitian_eigensolve(m);
    Mat4 rebuilt;
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      rebuilt += es.energies[k] * outer(es.vectors[k], es.vectors[k]);
      sum += es.energies[k];
    }
    worst = std::max({worst, max_abs_diff(rebuilt, m), std::abs(sum - trace(m).real())});
  }
  return worst;
}

// Entrywise block form of the Bell-basis Hamiltonian.
inline double bell_blocks(random::Engine& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SystemParams p = random::params(rng);
    const double q = 0.25 * p.j;
    Mat4 expect = Mat4::diagonal({-q, q, -q, q});
    expect(0, 1) = expect(1, 0) = -p.delta_minus();
    expect(2, 3) = expect(3, 2) = p.delta_plus();
    expect(0, 2) = expect(2, 0) = -0.5 * p.eps_diff();
    expect(1, 3) = expect(3, 1) = -0.5 * p.eps_sum();
    worst = std::max(worst, max_abs_diff(build_bell(p).matrix(), expect));
  }
  return worst;
}

inline double resonant_energies(random::Engine& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SystemParams p = random::params(rng, true);
    auto analytic = resonant_solution(p).energies();
    std::sort(analytic.begin(), analytic.end());
    const auto numeric = eigensystem(p).energies;
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(analytic[k] - numeric[k]));
  }
  return worst;
}

inline double concurrence_oracle(random::Engine& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const StateVector psi = random::haar_state(rng);
    worst = std::max(worst, std::abs(concurrence(DensityMatrix::pure(psi)).value - concurrence_pure(psi)));
  }
  return worst;
}

inline double local_unitary(random::Engine& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const StateVector psi = random::haar_state(rng);
    const Mat4 u = kron(random::qubit_unitary(rng), random::qubit_unitary(rng));
    const StateVector moved = StateVector::normalized(u * psi.amplitudes());
    worst = std::max(worst, std::abs(concurrence_pure(moved) - concurrence_pure(psi)));
    const DensityMatrix rho(u * DensityMatrix::pure(psi).matrix() * dagger(u));
    worst = std::max(worst, std::abs(concurrence(rho).value - concurrence_pure(psi)));
  }
  return worst;
}

inline double composition_and_energy(random::Engine& rng, int samples) {
  std::uniform_real_distribution<double> ut(0.0, 2.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SystemParams p = random::params(rng);
    const Propagator prop(p);
    const HermitianMatrix4 h = build_positional(p);
    const StateVector psi = random::haar_state(rng);
    const double t1 = ut(rng);
    const double t2 = ut(rng);
    const StateVector a = prop.evolve(prop.evolve(psi, t1), t2);
    const StateVector b = prop.evolve(psi, t1 + t2);
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    const double e0 = expectation(h.matrix(), psi.amplitudes());
    worst = std::max(worst, std::abs(expectation(h.matrix(), b.amplitudes()) - e0) / std::max(1.0, p.j));
  }
  return worst;
}

inline double analytic_vs_numeric_populations(random::Engine& rng, int samples) {
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  double worst = 0.0;
  const StateVector rl = ket(PositionalState::RL);
  for (int s = 0; s < samples; ++s) {
    const SystemParams p = random::params(rng, true);
    const Propagator prop(p);
    for (int k = 0; k < 20; ++k) {
      const double t = ut(rng);
      const auto a = analytic_populations(p, t).as_array();
      const auto n = populations(prop.evolve(rl, t)).as_array();
      for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - n[i]));
    }
  }
  return worst;
}

inline double bell_times(double j) {
  double worst = 0.0;
  const StateVector rl = ket(PositionalState::RL);
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m < 2 * n; m += 2) {
      const BellCondition c = bell_condition(n, m, j);
      worst = std::max(worst, 1.0 - concurrence_pure(propagate(c.params(), rl, c.t_e)));
      worst = std::max(worst, std::abs(c.t_e - c.t_e_minus));
    }
  return worst;
}

// Conjugation of H by the qubit swap and by the global L<->R flip.
inline double symmetry_covariance(random::Engine& rng, int samples) {
  Mat4 swap;
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  Mat4 flip;
  for (std::size_t i = 0; i < 4; ++i) flip(i, 3 - i) = 1.0;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SystemParams p = random::params(rng);
    const Mat4 h = build_positional(p).matrix();
    SystemParams swapped = p;
    std::swap(swapped.eps1, swapped.eps2);
    std::swap(swapped.delta1, swapped.delta2);
    SystemParams flipped = p;
    flipped.eps1 = -p.eps1;
    flipped.eps2 = -p.eps2;
    worst = std::max(worst, max_abs_diff(build_positional(swapped).matrix(), swap * h * swap));
    worst = std::max(worst, max_abs_diff(build_positional(flipped).matrix(), flip * h * flip));
  }
  return worst;
}

}  // namespace detail

inline std::vector<CheckResult> run_all(const Options& opt = {}) {
  random::Engine rng(opt.seed);
  const int n = opt.samples;
  std::vector<CheckResult> out;
  out.push_back({"eigensolver round-trip and trace", detail::eigen_roundtrip(rng, n), 1e-10});
  out.push_back({"Bell-basis block form", detail::bell_blocks(rng, n), 1e-12});
  out.push_back({"resonant closed-form energies", detail::resonant_energies(rng, n), 1e-10});
  out.push_back({"concurrence: pure formula vs Wootters", detail::concurrence_oracle(rng, n), 1e-10});
  out.push_back({"concurrence: local-unitary invariance", detail::local_unitary(rng, n), 1e-10});
  out.push_back({"propagator composition and energy", detail::composition_and_energy(rng, n), 1e-10});
  out.push_back({"analytic vs numeric populations", detail::analytic_vs_numeric_populations(rng, n / 4 + 1), 1e-9});
  out.push_back({"Bell times n <= 5", detail::bell_times(25.0), 1e-8});
  out.push_back({"swap and L<->R covariance", detail::symmetry_covariance(rng, n), 0.0});
  return out;
}

}  // namespace cqm::verify
