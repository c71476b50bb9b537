#pragma once

// Hamiltonian of two Coulomb-coupled charge qubits (double-dot molecules),
//
//   H = 1/2 sum_i (eps_i sz_i + delta_i sx_i) + J/4 sz_1 sz_2,
//
// with sz = |L><L| - |R><R| and sx = |L><R| + |R><L| on each molecule.

#include <cmath>
#include <numbers>

#include "cqm/eigen.hpp"
#include "cqm/error.hpp"
#include "cqm/linalg.hpp"
#include "cqm/state.hpp"

namespace cqm {

// All couplings in ueV. No unit conversion is ever applied.
struct SystemParams {
  double eps1 = 0.0;    // detuning of molecule 1
  double eps2 = 0.0;    // detuning of molecule 2
  double delta1 = 0.0;  // tunneling inside molecule 1
  double delta2 = 0.0;  // tunneling inside molecule 2
  double j = 25.0;      // inter-molecule Coulomb coupling

  double eps_sum() const { return eps1 + eps2; }
  double eps_diff() const { return eps1 - eps2; }
  double delta_plus() const { return 0.5 * (delta1 + delta2); }
  double delta_minus() const { return 0.5 * (delta1 - delta2); }

  // Throws InvalidArgument unless every field is finite and j > 0.
  void validate() const {
    for (double x : {eps1, eps2, delta1, delta2, j})
      if (!std::isfinite(x)) throw InvalidArgument("system parameters must be finite");
    if (!(j > 0.0)) throw InvalidArgument("Coulomb coupling J must be positive");
  }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Positional-basis matrix {LL, LR, RL, RR}. Entries are real.
inline HermitianMatrix4 build_positional(const SystemParams& p) {
  p.validate();
  const double es = p.eps_sum();
  const double ed = p.eps_diff();
  const double d1 = 0.5 * p.delta1;
  const double d2 = 0.5 * p.delta2;
  const double q = 0.25 * p.j;

  Mat4 h;
  h(0, 0) = 0.5 * es + q;
  h(1, 1) = 0.5 * ed - q;
  h(2, 2) = -0.5 * ed - q;
  h(3, 3) = -0.5 * es + q;
  h(0, 1) = h(1, 0) = d2;
  h(2, 3) = h(3, 2) = d2;
  h(0, 2) = h(2, 0) = d1;
  h(1, 3) = h(3, 1) = d1;
  return HermitianMatrix4(h);
}

// Rows are the Bell states in positional coordinates, ordered
// {Psi-, Phi-, Psi+, Phi+}, with
//   Psi+- = (|RL> +- |LR>)/sqrt2,  Phi+- = (|RR> +- |LL>)/sqrt2.
// Maps positional amplitudes to Bell amplitudes.
inline Mat4 bell_basis_matrix() {
  const double r = 1.0 / std::numbers::sqrt2;
  Mat4 b;
  b(0, 1) = -r;  // Psi-
  b(0, 2) = r;
  b(1, 0) = -r;  // Phi-
  b(1, 3) = r;
  b(2, 1) = r;  // Psi+
  b(2, 2) = r;
  b(3, 0) = r;  // Phi+
  b(3, 3) = r;
  return b;
}

inline StateVector to_bell(const StateVector& psi) {
  if (psi.basis() == Basis::Bell) return psi;
  return StateVector::normalized(bell_basis_matrix() * psi.amplitudes(), Basis::Bell);
}

inline StateVector to_positional(const StateVector& psi) {
  if (psi.basis() == Basis::Positional) return psi;
  return StateVector::normalized(dagger(bell_basis_matrix()) * psi.amplitudes(), Basis::Positional);
}

// B H B^dagger. Block form [[M-, D], [D, M+]] on {Psi_s, Phi_s} pairs with
//   M+ = [[-J/4, delta+], [delta+, J/4]],
//   M- = [[-J/4, -delta-], [-delta-, J/4]],
//   D  = diag(-eps_d/2, -eps_s/2).
inline HermitianMatrix4 build_bell(const SystemParams& p) {
  const Mat4 b = bell_basis_matrix();
  return HermitianMatrix4(b * build_positional(p).matrix() * dagger(b));
}

}  // namespace cqm
