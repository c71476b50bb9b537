#pragma once

namespace cqm {

// Energies are in micro-electronvolts, times in nanoseconds.
struct UnitSystem {
  // Reduced Planck constant in ueV*ns (CODATA 2018).
  static constexpr double hbar = 0.6582119569;
};

}  // namespace cqm
