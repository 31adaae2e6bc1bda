#include <gtest/gtest.h>

#include "simdiag/bench.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/newton_simdiag2.hpp"
#include "simdiag/random.hpp"

using namespace simdiag;

namespace {

constexpr Precision kPrec = 256;

Real tol(Precision prec) { return Real::pow2(-static_cast<long>(prec) + 16, prec); }

Real linearized_residual(const Spectrum& sigma, const Matrix& Z, const Spectrum& S, const Matrix& X, const Matrix& Y) {
  return max_abs_entry(Z - S.to_matrix() + sigma.to_matrix() * X + Y * sigma.to_matrix());
}


// Exact decimal entries rounded once at `prec`, unlike double literals.
Matrix decimal_matrix(std::initializer_list<std::initializer_list<const char*>> rows, Precision prec) {
  Matrix m(rows.size(), prec);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* v : row) m.set(i, j++, Real::parse(v, prec));
    ++i;
  }
  return m;
}

Complex decimal(const char* v, Precision prec) { return Complex(Real::parse(v, prec)); }

}  // namespace

TEST(SolveLinearized2, ZeroResiduals) {
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 1}, kPrec);
  auto u = solve_linearized2(s1, s2, Matrix(2, kPrec), Matrix(2, kPrec));
  EXPECT_EQ(max_abs_entry(u.X), 0.0);
  EXPECT_EQ(max_abs_entry(u.Y), 0.0);
  EXPECT_EQ(u.S1.max_abs(), 0.0);
  EXPECT_EQ(u.S2.max_abs(), 0.0);
}

TEST(SolveLinearized2, HandExample) {
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 1}, kPrec);
  Matrix Z1 = decimal_matrix({{"0.1", "0.2"}, {"0.3", "0.4"}}, kPrec);
  Matrix Z2 = decimal_matrix({{"0.5", "0.6"}, {"0.7", "0.8"}}, kPrec);
  auto u = solve_linearized2(s1, s2, Z1, Z2);
  Real t = tol(kPrec);
  EXPECT_LE(abs(u.X.at(0, 1) - decimal("-0.2", kPrec)), t);
  EXPECT_LE(abs(u.Y.at(0, 1)), t);
  // σ_i^k x_ij + σ_j^k y_ij + z^k_ij = 0 for slot pair (1, 2).
  EXPECT_LE(abs(s1[0] * u.X.at(0, 1) + s1[1] * u.Y.at(0, 1) + Z1.at(0, 1)), t);
  EXPECT_LE(abs(s2[0] * u.X.at(0, 1) + s2[1] * u.Y.at(0, 1) + Z2.at(0, 1)), t);
  EXPECT_LE(linearized_residual(s1, Z1, u.S1, u.X, u.Y), t);
  EXPECT_LE(linearized_residual(s2, Z2, u.S2, u.X, u.Y), t);
}

TEST(SolveLinearized2, RandomSubstitution) {
  NormalSampler sampler(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Field field = trial % 2 ? Field::complex : Field::real;
    const std::size_t n = 2 + trial % 6;
    Spectrum s1 = random_spectrum(n, field, sampler, kPrec);
    Spectrum s2 = random_spectrum(n, field, sampler, kPrec);
    Matrix Z1 = random_gaussian(n, field, sampler, false, kPrec);
    Matrix Z2 = random_gaussian(n, field, sampler, false, kPrec);
    auto u = solve_linearized2(s1, s2, Z1, Z2);
    Real scale = (Real(1.0, kPrec) + max_abs_entry(u.X) + max_abs_entry(u.Y)) *
                 (Real(1.0, kPrec) + max(s1.max_abs(), s2.max_abs()));
    EXPECT_LE(linearized_residual(s1, Z1, u.S1, u.X, u.Y), tol(kPrec) * scale);
    EXPECT_LE(linearized_residual(s2, Z2, u.S2, u.X, u.Y), tol(kPrec) * scale);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(u.X.at(i, i).is_zero());
      EXPECT_TRUE(u.Y.at(i, i).is_zero());
      EXPECT_EQ(u.S1[i], Z1.at(i, i));
      EXPECT_EQ(u.S2[i], Z2.at(i, i));
    }
  }
}

TEST(SolveLinearized2, StepNormBound) {
  NormalSampler sampler(8);
  for (int trial = 0; trial < 20; ++trial) {
    Spectrum s1 = random_spectrum(5, Field::complex, sampler, kPrec);
    Spectrum s2 = random_spectrum(5, Field::complex, sampler, kPrec);
    Matrix Z1 = random_gaussian(5, Field::complex, sampler, true, kPrec) * Real(1e-4, kPrec);
    Matrix Z2 = random_gaussian(5, Field::complex, sampler, true, kPrec) * Real(1e-4, kPrec);
    auto u = solve_linearized2(s1, s2, Z1, Z2);
    SimDiag2State probe{Matrix::identity(5, kPrec), Matrix::identity(5, kPrec), s1, s2, Z1, Z2};
    CertificateReport r = certificate2_of(probe);
    Real bound = r.kappa * r.epsilon * r.K * 2.0;
    EXPECT_LE(norm_inf(u.X), bound);
    EXPECT_LE(norm_inf(u.Y), bound);
  }
}

TEST(SolveLinearized2, ProportionalSlotsCollapse) {
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 6}, kPrec);
  EXPECT_THROW(solve_linearized2(s1, s2, Matrix(2, kPrec), Matrix(2, kPrec)), DeterminantCollapse);
}

TEST(Certificate2, ExactDecomposition) {
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 1}, kPrec);
  Matrix I = Matrix::identity(2, kPrec);
  auto r = certificate2(s1.to_matrix(), s2.to_matrix(), I, I, s1, s2);
  EXPECT_EQ(r.u, 0.0);
  EXPECT_TRUE(r.satisfied);
  EXPECT_EQ(r.threshold, 0.094);
}

TEST(Certificate2, ConstantsFromDefinitions) {
  // |det| = |1·1 − 2·3| = 5, so κ = 1; K = 3; u = 4·27·ε = 108ε.
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 1}, kPrec);
  Matrix I = Matrix::identity(2, kPrec);
  Matrix F = Matrix::from_rows({{1, 1e-3}, {0, 1}}, kPrec);
  auto r = certificate2(s1.to_matrix(), s2.to_matrix(), I, F, s1, s2);
  EXPECT_EQ(r.kappa, 1.0);
  EXPECT_EQ(r.K, 3.0);
  EXPECT_LE(abs(r.u - r.epsilon * 108.0), tol(kPrec));
  EXPECT_GT(r.epsilon, 0.0);
}

TEST(SimDiag2Solve, ExactStartTakesNoSteps) {
  Spectrum s1 = Spectrum::from_reals({1, 2}, kPrec), s2 = Spectrum::from_reals({3, 1}, kPrec);
  Matrix I = Matrix::identity(2, kPrec);
  auto result = simdiag2_solve(s1.to_matrix(), s2.to_matrix(), I, I, s1, s2);
  EXPECT_EQ(result.status, SolveStatus::converged);
  EXPECT_EQ(result.trace.steps(), 0u);
}

TEST(SimDiag2Solve, CertifiedDecay) {
  int certified_runs = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    RunConfig cfg;
    cfg.n = 6;
    cfg.perturb_exp = 7;
    cfg.field = Field::complex;
    cfg.seed = seed;
    cfg.precision_bits = 512;
    Test2Instance inst = make_test2(cfg);
    SimDiag2SolveOptions options;
    options.max_iter = 6;
    auto result = simdiag2_solve(inst.M1, inst.M2, inst.E0, inst.F0, inst.sigma1_0, inst.sigma2_0, options);
    if (!result.certified) continue;
    ++certified_runs;
    const Real& eps0 = result.trace.rows.front().err_res;
    for (std::size_t i = 0; i < result.trace.rows.size(); ++i) {
      EXPECT_LE(result.trace.rows[i].err_res, Real::pow2(1 - (1L << i), 512) * eps0 + Real::pow2(-500, 512));
    }
    // One-step bound ε₁ ≤ 12κ²K³ε₀².
    const CertificateReport& r = result.initial_certificate;
    Real bound = r.kappa * r.kappa * r.K * r.K * r.K * eps0 * eps0 * 12.0;
    EXPECT_LE(result.trace.rows[1].err_res, bound);
    // Diagonal rescaling of (E, F) scales both spectra slotwise, so only the
    // slot ratios σ1_i/σ2_i are fixed by the construction.
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const Complex got = result.state.sigma1[i] / result.state.sigma2[i];
      const Complex want = inst.sigma1[i] / inst.sigma2[i];
      EXPECT_LE(abs(got - want), Real::pow2(-400, 512) * (Real(1.0, 512) + abs(want)));
    }
  }
  EXPECT_GT(certified_runs, 0);
}
