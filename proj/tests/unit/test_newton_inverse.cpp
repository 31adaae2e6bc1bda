#include <gtest/gtest.h>

#include <cmath>

#include "simdiag/newton_inverse.hpp"
#include "simdiag/random.hpp"

using namespace simdiag;

namespace {

constexpr Precision kPrec = 256;

Real slack(Precision prec) { return Real::pow2(-static_cast<long>(prec) + 16, prec); }

// Random Z with ‖Z‖_inf = target.
Matrix scaled_random(std::size_t n, std::uint64_t seed, double target, Precision prec) {
  Matrix z = random_gaussian(n, Field::real, seed, false, prec);
  return z * (Real(target, prec) / norm_inf(z));
}

}  // namespace

TEST(InverseStep, FixedPoint) {
  auto state = InversePairState::from(Matrix::identity(3, kPrec), Matrix::identity(3, kPrec));
  auto next = inverse_step(state);
  EXPECT_EQ(next.E, state.E);
  EXPECT_EQ(next.F, state.F);
  EXPECT_EQ(norm_inf(next.Z), 0.0);
  EXPECT_EQ(next.iteration, 1);
}

TEST(InverseStep, ResidualPolynomialIdentity) {
  // E0 = F0 = 1.1 I gives Z0 = 0.21 I; the step must leave Z² (−3I/4 + Z/4).
  Matrix E = Matrix::identity(4, kPrec) * Real::parse("1.1", kPrec);
  auto state = InversePairState::from(E, E);
  EXPECT_LE(abs(state.Z.re(0, 0) - Real::parse("0.21", kPrec)), slack(kPrec));
  auto next = inverse_step(state);
  const Matrix& Z = state.Z;
  Matrix predicted = (Z * Z) * (Z * Real(0.25, kPrec) - Matrix::identity(4, kPrec) * Real(0.75, kPrec));
  EXPECT_LE(max_abs_entry(next.Z - predicted), slack(kPrec));
}

TEST(InverseStep, IdentityHoldsForRandomStates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Matrix E = random_gaussian(5, Field::complex, seed, false, kPrec);
    Matrix F = inverse(E) + scaled_random(5, seed + 100, 0.05, kPrec);
    auto state = InversePairState::from(E, F);
    auto next = inverse_step(state);
    const Matrix& Z = state.Z;
    Matrix predicted = (Z * Z) * (Z * Real(0.25, kPrec) - Matrix::identity(5, kPrec) * Real(0.75, kPrec));
    Real tolerance = slack(kPrec) * (Real(1.0, kPrec) + norm_inf(E) * norm_inf(F));
    EXPECT_LE(max_abs_entry(next.Z - predicted), tolerance) << "seed " << seed;
  }
}

TEST(InverseStep, LowPrecisionInverseSquares) {
  Matrix E = random_gaussian(6, Field::real, 3, false, kPrec);
  Matrix F = inverse(E.with_precision(30)).with_precision(kPrec);
  auto state = InversePairState::from(E, F);
  ASSERT_LE(norm_inf(state.Z), 1e-6);
  auto next = inverse_step(state);
  EXPECT_LE(norm_inf(next.Z), norm_inf(state.Z) * norm_inf(state.Z) + slack(kPrec));
  EXPECT_LE(norm_inf(next.Z), 1e-12);
}

TEST(InverseStep, SameMultiplierBothSides) {
  Matrix E = random_gaussian(4, Field::real, 8, false, kPrec);
  Matrix F = random_gaussian(4, Field::real, 9, false, kPrec);
  auto state = InversePairState::from(E, F);
  Matrix multiplier = plus_identity(state.Z * Real(-0.5, kPrec));
  auto next = inverse_step(state);
  EXPECT_EQ(next.E, E * multiplier);
  EXPECT_EQ(next.F, multiplier * F);
}

TEST(InverseSolve, ExactStartConvergesImmediately) {
  auto result = inverse_solve(Matrix::identity(3, kPrec), Matrix::identity(3, kPrec));
  EXPECT_EQ(result.status, SolveStatus::converged);
  EXPECT_EQ(result.trace.steps(), 0u);
  EXPECT_TRUE(result.certified);
}

TEST(InverseSolve, CertifiedDecayBound) {
  Matrix Z0 = scaled_random(6, 21, 0.4, kPrec);
  InverseSolveOptions options;
  options.max_iter = 7;
  auto result = inverse_solve(Matrix::identity(6, kPrec), plus_identity(Z0), options);
  EXPECT_TRUE(result.certified);
  ASSERT_EQ(result.trace.rows.size(), 8u);
  for (std::size_t i = 0; i < result.trace.rows.size(); ++i) {
    const Real bound = Real::pow2(1 - (1L << i), kPrec) * 0.4;
    EXPECT_LE(result.trace.rows[i].err_res, bound + slack(kPrec)) << "iterate " << i;
  }
}

TEST(InverseSolve, UncertifiedIsLabelled) {
  Matrix Z0 = scaled_random(4, 5, 0.9, kPrec);
  InverseSolveOptions options;
  options.max_iter = 10;
  auto result = inverse_solve(Matrix::identity(4, kPrec), plus_identity(Z0), options);
  EXPECT_FALSE(result.certified);
  EXPECT_EQ(result.trace.rows.front().certificate, std::nullopt);
}

TEST(InverseSolve, StopsAtTarget) {
  Matrix Z0 = scaled_random(4, 6, 0.1, kPrec);
  InverseSolveOptions options;
  options.target_residual = 1e-20;
  auto result = inverse_solve(Matrix::identity(4, kPrec), plus_identity(Z0), options);
  EXPECT_EQ(result.status, SolveStatus::converged);
  EXPECT_LE(result.trace.back().err_res, 1e-20);
  EXPECT_GT(result.trace.rows[result.trace.rows.size() - 2].err_res, 1e-20);
}
