#pragma once

// Eigenstates of the coupled-molecule Hamiltonian: the numerical solution for
// arbitrary couplings, and the closed form at full resonance (eps1 = eps2 = 0)
// where the Bell-basis Hamiltonian splits into two independent 2x2 blocks.

#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "cqm/eigen.hpp"
#include "cqm/error.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/state.hpp"

namespace cqm {

using Spectrum = EigenSystem<kDim>;

// Energies ascending; eigenstate k is the k-th excited state |k>.
inline Spectrum eigensystem(const SystemParams& p) {
  return hermitian_eigensolve(build_positional(p));
}

inline StateVector eigenstate(const Spectrum& s, std::size_t k) {
  return StateVector::normalized(s.vectors.at(k), Basis::Positional);
}

// Below this tunneling (ueV) the mixing takes its limiting value 0.
inline constexpr double kZeroTunneling = 1e-12;

// One Bell subspace {Psi_s, Phi_s} at full resonance. Its block is
// [[-J/4, coupling], [coupling, J/4]] with coupling = delta+ for s = + and
// -delta- for s = -. Eigenstates:
//   lower = gamma (Psi_s + mixing_lower Phi_s),  E = -beta/4
//   upper = gamma (Phi_s + mixing_upper Psi_s),  E = +beta/4
// where beta = sqrt(J^2 + 16 delta_s^2) and |mixing| = (beta - J)/(4|delta_s|).
struct ResonantBlock {
  double tunneling = 0.0;  // delta_s
  double coupling = 0.0;
  double beta = 0.0;
  double energy_lower = 0.0;
  double energy_upper = 0.0;
  double mixing_lower = 0.0;
  double mixing_upper = 0.0;
  double gamma = 1.0;
  StateVector lower;  // positional basis
  StateVector upper;
};

struct ResonantSolution {
  ResonantBlock minus;
  ResonantBlock plus;

  // {psi-^(delta-), psi+^(delta-), psi-^(delta+), psi+^(delta+)}; with no
  // tunneling these are {Psi-, Phi-, Psi+, Phi+}.
  std::array<double, 4> energies() const {
    return {minus.energy_lower, minus.energy_upper, plus.energy_lower, plus.energy_upper};
  }
  std::array<StateVector, 4> states() const { return {minus.lower, minus.upper, plus.lower, plus.upper}; }
};

namespace detail {

inline ResonantBlock resonant_block(double j, double tunneling, double coupling, BellState psi, BellState phi) {
  ResonantBlock b;
  b.tunneling = tunneling;
  b.coupling = coupling;
  b.beta = std::sqrt(j * j + 16.0 * tunneling * tunneling);
  b.energy_lower = -0.25 * b.beta;
  b.energy_upper = 0.25 * b.beta;
  // (J - beta)/(4 coupling) rewritten without cancellation.
  b.mixing_lower = std::abs(tunneling) < kZeroTunneling ? 0.0 : -4.0 * coupling / (j + b.beta);
  b.mixing_upper = -b.mixing_lower;
  b.gamma = 1.0 / std::sqrt(1.0 + b.mixing_lower * b.mixing_lower);

  const auto ip = static_cast<std::size_t>(psi);
  const auto iq = static_cast<std::size_t>(phi);
  Vec4 lo{};
  lo[ip] = b.gamma;
  lo[iq] = b.gamma * b.mixing_lower;
  Vec4 hi{};
  hi[iq] = b.gamma;
  hi[ip] = b.gamma * b.mixing_upper;
  b.lower = to_positional(StateVector::normalized(lo, Basis::Bell));
  b.upper = to_positional(StateVector::normalized(hi, Basis::Bell));
  return b;
}

}  // namespace detail

inline constexpr double kResonanceTolerance = 1e-12;

inline ResonantSolution resonant_solution(const SystemParams& p) {
  p.validate();
  if (std::abs(p.eps1) + std::abs(p.eps2) > 0.0)
    throw NotResonant("closed-form eigenstates require eps1 = eps2 = 0");
  ResonantSolution s;
  s.minus = detail::resonant_block(p.j, p.delta_minus(), -p.delta_minus(), BellState::PsiMinus, BellState::PhiMinus);
  s.plus = detail::resonant_block(p.j, p.delta_plus(), p.delta_plus(), BellState::PsiPlus, BellState::PhiPlus);
  return s;
}

enum class Resonance { FullResonance, EqualDetuning, OppositeDetuning, Generic };

inline constexpr std::string_view to_string(Resonance r) {
  switch (r) {
    case Resonance::FullResonance: return "FullResonance";
    case Resonance::EqualDetuning: return "EqualDetuning";
    case Resonance::OppositeDetuning: return "OppositeDetuning";
    case Resonance::Generic: return "Generic";
  }
  return "Generic";
}

// Equal detunings keep Psi- an eigenstate, opposite ones keep Phi-.
inline Resonance classify_resonance(const SystemParams& p) {
  const bool zero1 = std::abs(p.eps1) <= kResonanceTolerance;
  const bool zero2 = std::abs(p.eps2) <= kResonanceTolerance;
  if (zero1 && zero2) return Resonance::FullResonance;
  if (std::abs(p.eps_diff()) <= kResonanceTolerance) return Resonance::EqualDetuning;
  if (std::abs(p.eps_sum()) <= kResonanceTolerance) return Resonance::OppositeDetuning;
  return Resonance::Generic;
}

}  // namespace cqm
