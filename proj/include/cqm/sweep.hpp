#pragma once

// Two-dimensional parameter scans of the concurrence.
//
// Every cell is an independent pure function of its coordinates. Rows are
// distributed over threads and written back by index, so the result does not
// depend on scheduling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cqm/dynamics.hpp"
#include "cqm/entanglement.hpp"
#include "cqm/error.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/spectrum.hpp"
#include "cqm/state.hpp"

namespace cqm {

// Inclusive uniform axis.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  std::string unit;

  void validate() const {
    if (count < 2) throw InvalidArgument("axis '" + name + "' needs at least 2 points");
    if (!std::isfinite(min) || !std::isfinite(max) || !(max > min))
      throw InvalidArgument("axis '" + name + "' needs finite min < max");
  }

  double value(int i) const {
    if (i == count - 1) return max;
    return min + (max - min) * i / (count - 1);
  }

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = value(i);
    return v;
  }

  friend bool operator==(const Axis&, const Axis&) = default;
};

enum class SweepKind { Eigen, TunnelingDynamics, DetuningDynamics };

inline constexpr std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::Eigen: return "eigen";
    case SweepKind::TunnelingDynamics: return "tunneling-dynamics";
    case SweepKind::DetuningDynamics: return "detuning-dynamics";
  }
  return "eigen";
}

struct SweepGrid {
  SweepKind kind = SweepKind::Eigen;
  Axis x;
  Axis y;
  // Row-major, y.count rows of x.count cells; row 0 is y.min.
  std::vector<double> values;
  // Eigen sweeps: 1 where the selected eigenvalue is degenerate.
  std::vector<std::uint8_t> degenerate;

  // Inputs, sufficient to re-run the sweep.
  SystemParams base;
  int state_index = 0;
  StateVector initial;
  int sign = 1;

  double at(int iy, int ix) const {
    return values.at(static_cast<std::size_t>(iy) * static_cast<std::size_t>(x.count) + static_cast<std::size_t>(ix));
  }
  std::vector<double> row(int iy) const {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(iy) * x.count;
    return {first, first + x.count};
  }
  std::vector<double> column(int ix) const {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(y.count));
    for (int iy = 0; iy < y.count; ++iy) c.push_back(at(iy, ix));
    return c;
  }
};

namespace detail {

// Calls fn(row) for every row in [0, rows), split over hardware threads.
template <class Fn>
void parallel_rows(int rows, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(rows)));
  if (workers <= 1) {
    for (int r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int r = w; r < rows; r += workers) fn(r);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::size_t cell(int iy, int ix, int nx) {
  return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix);
}

}  // namespace detail

inline Axis detuning_axis(std::string name, double min, double max, int count) {
  return Axis{std::move(name), min, max, count, "ueV"};
}

// Concurrence of eigenstate |state_index> over (eps1, eps2); x is eps1.
inline SweepGrid eigen_concurrence_map(const SystemParams& base, const Axis& eps1_axis, const Axis& eps2_axis,
                                       int state_index) {
  base.validate();
  eps1_axis.validate();
  eps2_axis.validate();
  if (state_index < 0 || state_index > 3) throw InvalidArgument("state index must be in 0..3");

  SweepGrid g;
  g.kind = SweepKind::Eigen;
  g.x = eps1_axis;
  g.y = eps2_axis;
  g.base = base;
  g.state_index = state_index;
  const std::size_t n = static_cast<std::size_t>(g.x.count) * static_cast<std::size_t>(g.y.count);
  g.values.assign(n, 0.0);
  g.degenerate.assign(n, 0);

  const auto k = static_cast<std::size_t>(state_index);
  detail::parallel_rows(g.y.count, [&](int iy) {
    SystemParams p = base;
    p.eps2 = g.y.value(iy);
    for (int ix = 0; ix < g.x.count; ++ix) {
      p.eps1 = g.x.value(ix);
      const Spectrum s = eigensystem(p);
      const std::size_t c = detail::cell(iy, ix, g.x.count);
      g.values[c] = concurrence_pure(eigenstate(s, k));
      g.degenerate[c] = s.is_degenerate(k) ? 1 : 0;
    }
  });
  return g;
}

inline Axis time_axis(double t_max, int steps) {
  Axis a{"t", 0.0, t_max, steps, "ns"};
  a.validate();
  return a;
}

// Concurrence of psi(t) over (t, delta1/J) with delta1 = delta2, at full
// resonance; x is time.
inline SweepGrid dynamics_tunneling_map(const SystemParams& base, double t_max, int t_steps, const Axis& ratio_axis,
                                        const StateVector& psi0) {
  base.validate();
  if (classify_resonance(base) != Resonance::FullResonance)
    throw NotResonant("tunneling dynamics map requires eps1 = eps2 = 0");
  ratio_axis.validate();

  SweepGrid g;
  g.kind = SweepKind::TunnelingDynamics;
  g.x = time_axis(t_max, t_steps);
  g.y = ratio_axis;
  g.base = base;
  g.initial = to_positional(psi0);
  g.values.assign(static_cast<std::size_t>(g.x.count) * static_cast<std::size_t>(g.y.count), 0.0);

  detail::parallel_rows(g.y.count, [&](int iy) {
    SystemParams p = base;
    p.delta1 = p.delta2 = g.y.value(iy) * base.j;
    const Propagator prop(p);
    for (int ix = 0; ix < g.x.count; ++ix)
      g.values[detail::cell(iy, ix, g.x.count)] = concurrence_pure(prop.evolve(g.initial, g.x.value(ix)));
  });
  return g;
}

inline constexpr double kEqualTunnelingTolerance = 1e-12;

// Concurrence of psi(t) over (t, eps1) along eps2 = sign * eps1, with equal
// tunneling in base; x is time.
inline SweepGrid dynamics_detuning_map(const SystemParams& base, double t_max, int t_steps, const Axis& eps_axis,
                                       const StateVector& psi0, int sign) {
  base.validate();
  if (std::abs(base.delta1 - base.delta2) > kEqualTunnelingTolerance)
    throw InvalidArgument("detuning dynamics map requires delta1 = delta2");
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  eps_axis.validate();

  SweepGrid g;
  g.kind = SweepKind::DetuningDynamics;
  g.x = time_axis(t_max, t_steps);
  g.y = eps_axis;
  g.base = base;
  g.initial = to_positional(psi0);
  g.sign = sign;
  g.values.assign(static_cast<std::size_t>(g.x.count) * static_cast<std::size_t>(g.y.count), 0.0);

  detail::parallel_rows(g.y.count, [&](int iy) {
    SystemParams p = base;
    p.eps1 = g.y.value(iy);
    p.eps2 = sign * p.eps1;
    const Propagator prop(p);
    for (int ix = 0; ix < g.x.count; ++ix)
      g.values[detail::cell(iy, ix, g.x.count)] = concurrence_pure(prop.evolve(g.initial, g.x.value(ix)));
  });
  return g;
}

}  // namespace cqm
