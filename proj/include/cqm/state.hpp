#pragma once

// Two-molecule state vectors and density matrices.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "cqm/eigen.hpp"
#include "cqm/error.hpp"
#include "cqm/linalg.hpp"

namespace cqm {

// Positional ordering: |LL>, |LR>, |RL>, |RR> (first letter is molecule 1).
// Bell ordering: |Psi->, |Phi->, |Psi+>, |Phi+>.
enum class Basis { Positional, Bell };

enum class PositionalState : std::size_t { LL = 0, LR = 1, RL = 2, RR = 3 };
enum class BellState : std::size_t { PsiMinus = 0, PhiMinus = 1, PsiPlus = 2, PhiPlus = 3 };

inline constexpr double kNormTolerance = 1e-12;

inline constexpr std::array<std::string_view, 4> kPositionalLabels{"LL", "LR", "RL", "RR"};
inline constexpr std::array<std::string_view, 4> kBellLabels{"PsiMinus", "PhiMinus", "PsiPlus", "PhiPlus"};

// Unit-norm complex 4-vector tagged with the basis its amplitudes refer to.
class StateVector {
 public:
  StateVector() : StateVector(Vec4{1.0, 0.0, 0.0, 0.0}) {}

  explicit StateVector(const Vec4& amplitudes, Basis basis = Basis::Positional)
      : amps_(amplitudes), basis_(basis) {
    const double n = norm(amps_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
      throw NotNormalized("state vector norm is " + std::to_string(n));
  }

  // Rescales to unit norm; rejects the zero vector.
  static StateVector normalized(Vec4 amplitudes, Basis basis = Basis::Positional) {
    const double n = norm(amplitudes);
    if (!std::isfinite(n) || n == 0.0) throw NotNormalized("cannot normalize a zero or non-finite vector");
    for (auto& a : amplitudes) a /= n;
    return StateVector(amplitudes, basis);
  }

  static StateVector unit(std::size_t index, Basis basis) {
    Vec4 a{};
    a.at(index) = 1.0;
    return StateVector(a, basis);
  }

  const Vec4& amplitudes() const { return amps_; }
  Basis basis() const { return basis_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  Vec4 amps_;
  Basis basis_ = Basis::Positional;
};

inline StateVector ket(PositionalState s) {
  return StateVector::unit(static_cast<std::size_t>(s), Basis::Positional);
}

// Bell state expressed in the Bell basis; convert with to_positional().
inline StateVector ket(BellState s) {
  return StateVector::unit(static_cast<std::size_t>(s), Basis::Bell);
}

inline constexpr double kDensityTolerance = 1e-12;

// Positional-basis density matrix: Hermitian, unit trace, positive
// semidefinite (eigenvalues >= -kDensityTolerance). The eigensystem computed
// for the positivity check is retained.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat4& m) {
    if (!all_finite(m)) throw InvalidDensityMatrix("density matrix has non-finite entries");
    if (max_abs_diff(m, dagger(m)) > kDensityTolerance)
      throw InvalidDensityMatrix("density matrix is not Hermitian");
    const Complex tr = trace(m);
    if (std::abs(tr - 1.0) > kDensityTolerance)
      throw InvalidDensityMatrix("density matrix trace is " + std::to_string(tr.real()));
    rho_ = HermitianMatrix4(m);
    spectrum_ = hermitian_eigensolve(rho_);
    if (spectrum_.energies[0] < -kDensityTolerance)
      throw InvalidDensityMatrix("density matrix has eigenvalue " + std::to_string(spectrum_.energies[0]));
  }

  // |psi><psi| for a positional-basis state.
  static DensityMatrix pure(const StateVector& psi) {
    if (psi.basis() != Basis::Positional)
      throw InvalidArgument("pure(): state must be in the positional basis");
    return DensityMatrix(outer(psi.amplitudes(), psi.amplitudes()));
  }

  static DensityMatrix maximally_mixed() { return DensityMatrix(0.25 * Mat4::identity()); }

  const Mat4& matrix() const { return rho_.matrix(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
  // Populations in ascending-eigenvalue order with matching eigenvectors.
  const EigenSystem<kDim>& spectrum() const { return spectrum_; }

 private:
  HermitianMatrix4 rho_;
  EigenSystem<kDim> spectrum_;
};

}  // namespace cqm
