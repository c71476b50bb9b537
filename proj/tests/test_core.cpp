#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "cqm/eigen.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/linalg.hpp"
#include "cqm/random.hpp"
#include "cqm/state.hpp"
#include "oracles.hpp"

using namespace cqm;

namespace {

template <std::size_t N>
double orthonormality_error(const EigenSystem<N>& es) {
  double worst = 0.0;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      worst = std::max(worst, std::abs(inner(es.vectors[a], es.vectors[b]) - (a == b ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST(Eigensolve, DiagonalMatrixSortsAndFlagsBothPairs) {
  const auto es = hermitian_eigensolve(Mat4::diagonal({6.25, -6.25, -6.25, 6.25}));
  EXPECT_EQ(es.energies, (std::array<double, 4>{-6.25, -6.25, 6.25, 6.25}));
  EXPECT_TRUE(es.degenerate[0]);
  EXPECT_FALSE(es.degenerate[1]);
  EXPECT_TRUE(es.degenerate[2]);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(es.is_degenerate(k));
}

TEST(Eigensolve, IdentityIsFullyDegenerate) {
  const auto es = hermitian_eigensolve(Mat4::identity());
  for (double e : es.energies) EXPECT_EQ(e, 1.0);
  for (bool d : es.degenerate) EXPECT_TRUE(d);
}

TEST(Eigensolve, ResonantHamiltonianMatchesClosedForm) {
  const SystemParams p{0.0, 0.0, 6.25, 6.25, 25.0};
  const auto es = hermitian_eigensolve(build_positional(p));
  // delta- = 0, delta+ = 6.25: -+ sqrt(J^2 + 16 delta^2)/4 and -+J/4.
  const double outer_level = std::sqrt(25.0 * 25.0 + 16.0 * 6.25 * 6.25) / 4.0;
  EXPECT_NEAR(outer_level, 8.8388, 5e-5);
  EXPECT_NEAR(es.energies[0], -outer_level, 1e-12);
  EXPECT_NEAR(es.energies[1], -6.25, 1e-12);
  EXPECT_NEAR(es.energies[2], 6.25, 1e-12);
  EXPECT_NEAR(es.energies[3], outer_level, 1e-12);
  EXPECT_FALSE(es.any_degenerate());
}

TEST(Eigensolve, RejectsNonHermitianInput) {
  Mat4 m = Mat4::identity();
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigensolve(m), NonHermitianInput);
  Mat4 c = Mat4::identity();
  c(2, 2) = Complex(1.0, 0.5);
  EXPECT_THROW(HermitianMatrix4{c}, NonHermitianInput);
  Mat4 nan = Mat4::identity();
  nan(1, 1) = std::nan("");
  EXPECT_THROW(HermitianMatrix4{nan}, NonHermitianInput);
}

TEST(Eigensolve, ZeroMatrix) {
  const auto es = hermitian_eigensolve(Mat4{});
  for (double e : es.energies) EXPECT_EQ(e, 0.0);
  EXPECT_LT(orthonormality_error(es), 1e-15);
}

TEST(Eigensolve, RandomRoundTripTraceAndResidual) {
  random::Engine rng(7);
  for (int s = 0; s < 1000; ++s) {
    const Mat4 m = random::hermitian<4>(rng, 1.0 + 20.0 * (s % 5));
    const auto es = hermitian_eigensolve(m);
    const double scale = frobenius_norm(m);

    ASSERT_TRUE(std::is_sorted(es.energies.begin(), es.energies.end()));
    ASSERT_LT(orthonormality_error(es), 1e-11);

    Mat4 rebuilt;
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      rebuilt += es.energies[k] * outer(es.vectors[k], es.vectors[k]);
      sum += es.energies[k];
      const Vec4 mv = m * es.vectors[k];
      for (std::size_t i = 0; i < 4; ++i)
        ASSERT_LT(std::abs(mv[i] - es.energies[k] * es.vectors[k][i]), 1e-10 * scale);
      // Independent check: each eigenvalue is a root of det(m - x I).
      ASSERT_LT(std::abs(oracle::char_poly(m, es.energies[k])), 1e-8 * std::pow(std::max(1.0, scale), 4));
    }
    ASSERT_LT(max_abs_diff(rebuilt, m), 1e-10);
    ASSERT_NEAR(sum, trace(m).real(), 1e-10);
  }
}

TEST(Eigensolve, PhaseConventionAndBitwiseStability) {
  random::Engine rng(11);
  for (int s = 0; s < 100; ++s) {
    const Mat4 m = random::hermitian<4>(rng);
    const auto a = hermitian_eigensolve(m);
    const auto b = hermitian_eigensolve(m);
    ASSERT_EQ(0, std::memcmp(&a.energies, &b.energies, sizeof a.energies));
    ASSERT_EQ(0, std::memcmp(&a.vectors, &b.vectors, sizeof a.vectors));
    for (const auto& v : a.vectors) {
      std::size_t i = 0;
      while (std::abs(v[i]) <= kPhaseThreshold) ++i;
      EXPECT_EQ(v[i].imag(), 0.0);
      EXPECT_GT(v[i].real(), 0.0);
    }
  }
}

TEST(Eigensolve, EightByEightEmbedding) {
  random::Engine rng(3);
  const Matrix<8> m = random::hermitian<8>(rng);
  const auto es = hermitian_eigensolve(m);
  EXPECT_LT(orthonormality_error(es), 1e-12);
  Matrix<8> rebuilt;
  for (std::size_t k = 0; k < 8; ++k) rebuilt += es.energies[k] * outer(es.vectors[k], es.vectors[k]);
  EXPECT_LT(max_abs_diff(rebuilt, m), 1e-12);
}

TEST(Linalg, ExpectationDaggerAndBellUnitarity) {
  random::Engine rng(5);
  for (int s = 0; s < 20; ++s) {
    const StateVector psi = random::haar_state(rng);
    EXPECT_NEAR(expectation(Mat4::identity(), psi.amplitudes()), 1.0, 1e-14);
    const Mat4 h = random::hermitian<4>(rng);
    EXPECT_LT(std::abs(inner(psi.amplitudes(), h * psi.amplitudes()).imag()), 1e-12);
    Mat4 g = random::hermitian<4>(rng);
    g(0, 3) += Complex(0.3, 1.0);
    EXPECT_EQ(dagger(dagger(g)), g);
  }
  const Mat4 b = bell_basis_matrix();
  EXPECT_LT(max_abs_diff(b * dagger(b), Mat4::identity()), 1e-13);
  EXPECT_LT(max_abs_diff(dagger(b) * b, Mat4::identity()), 1e-13);
}

TEST(StateVector, NormalizationContract) {
  EXPECT_THROW(StateVector(Vec4{1.0, 1.0, 0.0, 0.0}), NotNormalized);
  EXPECT_THROW(StateVector::normalized(Vec4{}), NotNormalized);
  const StateVector s = StateVector::normalized(Vec4{1.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(norm(s.amplitudes()), 1.0, 1e-15);
  EXPECT_EQ(s.basis(), Basis::Positional);
  EXPECT_EQ(ket(BellState::PhiPlus).basis(), Basis::Bell);
  EXPECT_EQ(ket(PositionalState::RL)[2], Complex(1.0));
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed());
  EXPECT_THROW(DensityMatrix(Mat4::identity()), InvalidDensityMatrix);  // trace 4
  EXPECT_THROW(DensityMatrix(Mat4::diagonal({1.5, -0.5, 0.0, 0.0})), InvalidDensityMatrix);
  Mat4 skew = Mat4::diagonal({0.5, 0.5, 0.0, 0.0});
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{skew}, InvalidDensityMatrix);
  EXPECT_THROW(DensityMatrix::pure(ket(BellState::PsiMinus)), InvalidArgument);
  const auto rho = DensityMatrix::pure(ket(PositionalState::LR));
  EXPECT_NEAR(rho.spectrum().energies[3], 1.0, 1e-15);
}
