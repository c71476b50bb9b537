#pragma once

// Closed-system time evolution of the coupled molecules.
//
// H is time independent, so psi(t) = sum_k exp(-i E_k t / hbar) <k|psi0> |k>
// is exact. This header is the only place energies are turned into angular
// frequencies (E / hbar, rad/ns).

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cqm/entanglement.hpp"
#include "cqm/error.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/linalg.hpp"
#include "cqm/spectrum.hpp"
#include "cqm/state.hpp"
#include "cqm/units.hpp"

namespace cqm {

// Angular frequency in rad/ns of an energy in ueV.
inline constexpr double angular_frequency(double energy_uev) { return energy_uev / UnitSystem::hbar; }

// Diagonalizes H once; evolves any number of states to any times.
class Propagator {
 public:
  explicit Propagator(const SystemParams& p) : params_(p), spectrum_(eigensystem(p)) {}

  const SystemParams& params() const { return params_; }
  const Spectrum& spectrum() const { return spectrum_; }

  // Positional-basis state at time t_ns >= 0.
  StateVector evolve(const StateVector& psi0, double t_ns) const {
    if (!(t_ns >= 0.0) || !std::isfinite(t_ns)) throw InvalidArgument("propagation time must be finite and >= 0");
    const StateVector start = to_positional(psi0);
    if (t_ns == 0.0) return start;
    Vec4 out{};
    for (std::size_t k = 0; k < kDim; ++k) {
      const Vec4& v = spectrum_.vectors[k];
      const double phase = -angular_frequency(spectrum_.energies[k]) * t_ns;
      const Complex coeff = std::polar(1.0, phase) * inner(v, start.amplitudes());
      for (std::size_t i = 0; i < kDim; ++i) out[i] += coeff * v[i];
    }
    return StateVector(out, Basis::Positional);
  }

 private:
  SystemParams params_;
  Spectrum spectrum_;
};

inline StateVector propagate(const SystemParams& p, const StateVector& psi0, double t_ns) {
  return Propagator(p).evolve(psi0, t_ns);
}

// Classical RK4 on i hbar dpsi/dt = H psi. Verification oracle only: the
// result carries the integrator's truncation error and is not renormalized.
inline Vec4 propagate_rk4(const SystemParams& p, const StateVector& psi0, double t_ns, int steps) {
  if (steps < 1) throw InvalidArgument("rk4 needs at least one step");
  if (!(t_ns >= 0.0)) throw InvalidArgument("propagation time must be >= 0");
  Mat4 gen = build_positional(p).matrix();
  gen *= Complex(0.0, -1.0 / UnitSystem::hbar);
  const double dt = t_ns / steps;
  Vec4 y = to_positional(psi0).amplitudes();
  auto axpy = [](const Vec4& a, Complex s, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < kDim; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    const Vec4 k1 = gen * y;
    const Vec4 k2 = gen * axpy(y, 0.5 * dt, k1);
    const Vec4 k3 = gen * axpy(y, 0.5 * dt, k2);
    const Vec4 k4 = gen * axpy(y, dt, k3);
    for (std::size_t i = 0; i < kDim; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

// Occupation probabilities of {LL, LR, RL, RR}.
struct Populations {
  double ll = 0.0;
  double lr = 0.0;
  double rl = 0.0;
  double rr = 0.0;

  std::array<double, 4> as_array() const { return {ll, lr, rl, rr}; }
  double sum() const { return ll + lr + rl + rr; }
};

inline Populations populations(const StateVector& psi) {
  const StateVector pos = to_positional(psi);
  const Vec4& c = pos.amplitudes();
  return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2]), std::norm(c[3])};
}

// Closed-form populations at full resonance for psi(0) = |RL>. With
// beta+- = sqrt(J^2 + 16 delta+-^2) and w+- = beta+- / (4 hbar):
//   P_RL = 1/4 [(J/b+ sin w+t + J/b- sin w-t)^2 + (cos w+t + cos w-t)^2]
//   P_LR = 1/4 [(J/b+ sin w+t - J/b- sin w-t)^2 + (cos w+t - cos w-t)^2]
//   P_LL = 4 (d+/b+ sin w+t + d-/b- sin w-t)^2
//   P_RR = 4 (d+/b+ sin w+t - d-/b- sin w-t)^2
inline Populations analytic_populations(const SystemParams& p, double t_ns) {
  p.validate();
  if (std::abs(p.eps1) + std::abs(p.eps2) > 0.0)
    throw NotResonant("analytic populations require eps1 = eps2 = 0");
  if (!(t_ns >= 0.0)) throw InvalidArgument("time must be >= 0");
  const double j = p.j;
  const double dp = p.delta_plus();
  const double dm = p.delta_minus();
  const double bp = std::sqrt(j * j + 16.0 * dp * dp);
  const double bm = std::sqrt(j * j + 16.0 * dm * dm);
  const double wp = angular_frequency(0.25 * bp) * t_ns;
  const double wm = angular_frequency(0.25 * bm) * t_ns;
  const double sp = std::sin(wp), cp = std::cos(wp);
  const double sm = std::sin(wm), cm = std::cos(wm);

  auto sq = [](double x) { return x * x; };
  Populations out;
  out.rl = 0.25 * (sq(j / bp * sp + j / bm * sm) + sq(cp + cm));
  out.lr = 0.25 * (sq(j / bp * sp - j / bm * sm) + sq(cp - cm));
  out.ll = 4.0 * sq(dp / bp * sp + dm / bm * sm);
  out.rr = 4.0 * sq(dp / bp * sp - dm / bm * sm);
  return out;
}

// Equal tunneling delta1 = delta2 = ratio J at full resonance turns |RL> into
// a Bell state at t_e = n pi hbar / Omega+ = m pi hbar / (2 Omega-), which has
// a real solution ratio = sqrt(4 n^2 / m^2 - 1) / 4 only for odd m < 2n.
struct BellCondition {
  int n = 1;
  int m = 1;
  double j = 25.0;
  double ratio = 0.0;        // delta1 / J
  double delta = 0.0;        // ueV
  double omega_plus = 0.0;   // ueV
  double omega_minus = 0.0;  // ueV
  double t_e = 0.0;          // ns, from n pi hbar / Omega+
  double t_e_minus = 0.0;    // ns, from m pi hbar / (2 Omega-)

  SystemParams params() const { return SystemParams{0.0, 0.0, delta, delta, j}; }
};

inline BellCondition bell_condition(int n, int m, double j) {
  if (n < 1) throw InvalidArgument("n must be a positive integer");
  if (m < 1 || m % 2 == 0) throw InvalidArgument("m must be a positive odd integer");
  if (!(j > 0.0) || !std::isfinite(j)) throw InvalidArgument("J must be positive");
  if (m >= 2 * n) throw NoRealSolution("no real tunneling ratio for m >= 2n");

  const double q = static_cast<double>(n) / static_cast<double>(m);
  BellCondition c;
  c.n = n;
  c.m = m;
  c.j = j;
  c.ratio = 0.25 * std::sqrt(4.0 * q * q - 1.0);
  c.delta = c.ratio * j;
  c.omega_plus = 0.25 * std::sqrt(j * j + 16.0 * c.delta * c.delta);
  c.omega_minus = 0.25 * j;
  c.t_e = n * std::numbers::pi / angular_frequency(c.omega_plus);
  c.t_e_minus = m * std::numbers::pi / (2.0 * angular_frequency(c.omega_minus));
  return c;
}

inline constexpr double kBellTimeTolerance = 1e-9;

// True when t is a Bell time for p: full resonance, equal tunneling,
// sin(Omega+ t) = 0 (LL, RR empty) and cos(Omega- t) = 0 (RL, LR at 1/2).
inline bool is_bell_time(const SystemParams& p, double t_ns) {
  if (classify_resonance(p) != Resonance::FullResonance) return false;
  if (std::abs(p.delta_minus()) > kZeroTunneling) return false;
  const double wp = angular_frequency(0.25 * std::sqrt(p.j * p.j + 16.0 * p.delta_plus() * p.delta_plus()));
  const double wm = angular_frequency(0.25 * p.j);
  return std::abs(std::sin(wp * t_ns)) < kBellTimeTolerance && std::abs(std::cos(wm * t_ns)) < kBellTimeTolerance;
}

struct Trajectory {
  std::vector<double> times;  // ns
  std::vector<StateVector> states;
  std::vector<Populations> populations;
  std::vector<double> concurrence;
};

// Uniform grid of `steps` points over [0, t_max], endpoints included.
inline std::vector<double> time_grid(double t_max, int steps) {
  if (steps < 2) throw InvalidArgument("time grid needs at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be positive");
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
  t.back() = t_max;
  return t;
}

inline Trajectory trajectory(const SystemParams& p, const StateVector& psi0, double t_max, int steps) {
  const Propagator prop(p);
  Trajectory tr;
  tr.times = time_grid(t_max, steps);
  tr.states.reserve(tr.times.size());
  tr.populations.reserve(tr.times.size());
  tr.concurrence.reserve(tr.times.size());
  for (double t : tr.times) {
    StateVector s = prop.evolve(psi0, t);
    tr.populations.push_back(populations(s));
    tr.concurrence.push_back(concurrence_pure(s));
    tr.states.push_back(std::move(s));
  }
  return tr;
}

}  // namespace cqm
