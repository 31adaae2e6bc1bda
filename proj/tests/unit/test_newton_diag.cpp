#include <gtest/gtest.h>

#include "simdiag/bench.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/random.hpp"

using namespace simdiag;

namespace {

constexpr Precision kPrec = 256;

Real tol(Precision prec) { return Real::pow2(-static_cast<long>(prec) + 16, prec); }

// Residuals of Z + X + Y = 0 and Δ − S + ΣX + YΣ = 0.
std::pair<Real, Real> linearized_residuals(const Spectrum& sigma, const Matrix& Z, const Matrix& Delta,
                                      const UpdateTriple& u) {
  Matrix first = Z + u.X + u.Y;
  Matrix second = Delta - u.S.to_matrix() + sigma.to_matrix() * u.X + u.Y * sigma.to_matrix();
  return {max_abs_entry(first), max_abs_entry(second)};
}

struct Instance {
  Matrix M, E, F;
  Spectrum sigma;
};

// M = EΣE⁻¹ exactly diagonalizable.
Instance exact_instance(std::size_t n, Field field, std::uint64_t seed, Precision prec) {
  NormalSampler sampler(seed);
  Matrix E = random_gaussian(n, field, sampler, false, prec);
  Spectrum sigma = random_spectrum(n, field, sampler, prec);
  Matrix F = inverse(E);
  return {scale_columns(E, sigma.values()) * F, E, F, sigma};
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

TEST(SolveLinearized, ZeroResiduals) {
  Spectrum sigma = Spectrum::from_reals({1, 2, 4}, kPrec);
  UpdateTriple u = solve_linearized(sigma, Matrix(3, kPrec), Matrix(3, kPrec));
  EXPECT_EQ(max_abs_entry(u.X), 0.0);
  EXPECT_EQ(max_abs_entry(u.Y), 0.0);
  EXPECT_EQ(u.S.max_abs(), 0.0);
}

TEST(SolveLinearized, HandExample) {
  Spectrum sigma = Spectrum::from_reals({1, 3}, kPrec);
  Matrix Z = decimal_matrix({{"0.1", "0.2"}, {"0.3", "0.4"}}, kPrec);
  Matrix D = decimal_matrix({{"0.5", "0.6"}, {"0.7", "0.8"}}, kPrec);
  UpdateTriple u = solve_linearized(sigma, Z, D);
  Real t = tol(kPrec);
  EXPECT_LE(abs(u.S[0] - decimal("0.4", kPrec)), t);
  EXPECT_LE(abs(u.S[1] - decimal("-0.4", kPrec)), t);
  EXPECT_LE(max_abs_entry(u.X - decimal_matrix({{"0", "0"}, {"-0.2", "0"}}, kPrec)), t);
  EXPECT_LE(max_abs_entry(u.Y - decimal_matrix({{"-0.1", "-0.2"}, {"-0.1", "-0.4"}}, kPrec)), t);
  auto [r1, r2] = linearized_residuals(sigma, Z, D, u);
  EXPECT_LE(r1, t);
  EXPECT_LE(r2, t);
}

TEST(SolveLinearized, RandomSubstitution) {
  NormalSampler sampler(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Field field = trial % 2 ? Field::complex : Field::real;
    const std::size_t n = 2 + trial % 7;
    Spectrum sigma = random_spectrum(n, field, sampler, kPrec);
    Matrix Z = random_gaussian(n, field, sampler, false, kPrec);
    Matrix D = random_gaussian(n, field, sampler, false, kPrec);
    UpdateTriple u = solve_linearized(sigma, Z, D);
    auto [r1, r2] = linearized_residuals(sigma, Z, D, u);
    Real scale = Real(1.0, kPrec) + max_abs_entry(u.X) + max_abs_entry(u.Y);
    scale *= Real(1.0, kPrec) + sigma.max_abs();
    EXPECT_LE(r1, tol(kPrec) * scale);
    EXPECT_LE(r2, tol(kPrec) * scale);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(u.X.at(i, i).is_zero());
    EXPECT_EQ(u.X.is_real(), field == Field::real);
  }
}

TEST(SolveLinearized, StepNormBound) {
  NormalSampler sampler(4);
  for (int trial = 0; trial < 20; ++trial) {
    Spectrum sigma = random_spectrum(5, Field::complex, sampler, kPrec);
    Matrix Z = random_gaussian(5, Field::complex, sampler, true, kPrec) * Real(1e-3, kPrec);
    Matrix D = random_gaussian(5, Field::complex, sampler, true, kPrec) * Real(1e-3, kPrec);
    UpdateTriple u = solve_linearized(sigma, Z, D);
    Real eps = max(norm_inf(Z), norm_inf(D));
    Real bound = separation_constant(sigma) * eps * (magnitude_constant(sigma) + Real(1.0, kPrec));
    EXPECT_LE(norm_inf(u.X), bound);
    EXPECT_LE(norm_inf(u.Y), bound);
  }
}

TEST(SolveLinearized, CollisionThrows) {
  Spectrum sigma(std::vector<Complex>{Complex(1.0, 0, kPrec), Complex(Real(1.0, kPrec) + Real::pow2(-200, kPrec))});
  EXPECT_THROW(solve_linearized(sigma, Matrix(2, kPrec), Matrix(2, kPrec)), SpectrumCollision);
  Spectrum far(std::vector<Complex>{Complex(1.0, 0, kPrec), Complex(Real(1.0, kPrec) + Real::pow2(-100, kPrec))});
  EXPECT_NO_THROW(solve_linearized(far, Matrix(2, kPrec), Matrix(2, kPrec)));
}

TEST(Certificate, ExactDecomposition) {
  Spectrum sigma = Spectrum::from_reals({1, 2, 3}, kPrec);
  Matrix M = sigma.to_matrix();
  Matrix I = Matrix::identity(3, kPrec);
  CertificateReport r = certificate(M, I, I, sigma);
  EXPECT_EQ(r.epsilon, 0.0);
  EXPECT_EQ(r.u, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(Certificate, ConstantsFromDefinitions) {
  // Σ = diag(0.5, 1.5): κ = 1, K = 1.5, u = 2.5³ ε.
  Spectrum sigma = Spectrum::from_reals({0.5, 1.5}, kPrec);
  Matrix M = sigma.to_matrix();
  Matrix E = Matrix::identity(2, kPrec);
  Matrix F = Matrix::from_rows({{1, 0.01}, {0, 1}}, kPrec);  // ‖FE − I‖ = 0.01, ‖FME − Σ‖ = 0.015
  CertificateReport r = certificate(M, E, F, sigma);
  EXPECT_EQ(r.kappa, 1.0);
  EXPECT_EQ(r.K, 1.5);
  EXPECT_LE(abs(r.u - r.epsilon * 15.625), tol(kPrec));
  EXPECT_EQ(r.threshold, 0.136);
  EXPECT_EQ(r.satisfied, r.u <= 0.136);
}

TEST(Certificate, KappaFromGap) {
  Spectrum sigma = Spectrum::from_reals({0.0, 0.25, 2.0}, kPrec);
  EXPECT_EQ(separation_constant(sigma), 4.0);
  EXPECT_EQ(magnitude_constant(Spectrum::from_reals({0.1, 0.2}, kPrec)), 1.0);
}

TEST(DiagStep, FixedPoint) {
  Instance inst = exact_instance(4, Field::real, 1, kPrec);
  auto state = DiagState::from(inst.M, inst.E, inst.F, inst.sigma);
  auto next = diag_step(inst.M, state);
  EXPECT_LE(next.residual(), tol(kPrec) * 64.0);
  EXPECT_LE(distance(next.sigma, inst.sigma), tol(kPrec) * 64.0);
}

TEST(DiagStep, OneStepQuadraticBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RunConfig cfg;
    cfg.n = 6;
    cfg.perturb_exp = 7;
    cfg.field = Field::complex;
    cfg.seed = seed;
    cfg.precision_bits = kPrec;
    Test1Instance inst = make_test1(cfg);
    auto state = DiagState::from(inst.M, inst.E, inst.E_inv, inst.sigma);
    CertificateReport r = certificate_of(state);
    if (!r.satisfied) continue;
    auto next = diag_step(inst.M, state);
    Real k1 = r.K + Real(1.0, kPrec);
    Real bound = r.kappa * r.kappa * k1 * k1 * k1 * r.epsilon * r.epsilon * 3.0;
    EXPECT_LE(next.residual(), bound) << "seed " << seed;
  }
}

TEST(DiagSolve, ExactStartTakesNoSteps) {
  Spectrum sigma = Spectrum::from_reals({1, 2}, kPrec);
  Matrix I = Matrix::identity(2, kPrec);
  auto result = diag_solve(sigma.to_matrix(), I, I, sigma);
  EXPECT_EQ(result.status, SolveStatus::converged);
  EXPECT_EQ(result.trace.steps(), 0u);
}

TEST(DiagSolve, CertifiedDecayAndDrift) {
  int certified_runs = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RunConfig cfg;
    cfg.n = 8;
    cfg.perturb_exp = 8;
    cfg.field = Field::complex;
    cfg.seed = seed;
    cfg.precision_bits = 512;
    Test1Instance inst = make_test1(cfg);
    DiagSolveOptions options;
    options.max_iter = 6;
    auto result = diag_solve(inst.M, inst.E, inst.E_inv, inst.sigma, options);
    if (!result.certified) continue;
    ++certified_runs;
    const Real& eps0 = result.trace.rows.front().err_res;
    const Real floor = Real::pow2(-500, 512);
    for (std::size_t i = 0; i < result.trace.rows.size(); ++i) {
      EXPECT_LE(result.trace.rows[i].err_res, Real::pow2(1 - (1L << i), 512) * eps0 + floor);
    }
    EXPECT_LE(distance(result.state.sigma, inst.sigma), eps0 * 2.0);
  }
  EXPECT_GT(certified_runs, 0);
}

TEST(DiagSolve, TraceShapeAndStatus) {
  RunConfig cfg;
  cfg.n = 5;
  cfg.perturb_exp = 6;
  cfg.field = Field::complex;
  cfg.seed = 2;
  cfg.precision_bits = 512;
  Test1Instance inst = make_test1(cfg);
  DiagSolveOptions options;
  options.max_iter = 3;
  options.stop_at_precision_floor = false;
  auto result = diag_solve(inst.M, inst.E, inst.E_inv, inst.sigma, options);
  ASSERT_EQ(result.trace.rows.size(), 4u);
  EXPECT_EQ(result.status, SolveStatus::max_iterations);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(result.trace.rows[i].iteration, static_cast<int>(i) + 1);
    ASSERT_TRUE(result.trace.rows[i].certificate.has_value());
  }
  EXPECT_EQ(result.trace.meta.precision_bits, 512);
}

TEST(DiagSolve, DivergenceIsReported) {
  // A far-off start on a matrix with clustered eigenvalues.
  Spectrum sigma = Spectrum::from_reals({0.0, 0.01, 0.02, 5.0}, kPrec);
  Matrix E = random_gaussian(4, Field::real, 77, false, kPrec);
  Matrix M = scale_columns(E, sigma.values()) * inverse(E);
  Matrix E0 = Matrix::identity(4, kPrec);
  auto result = diag_solve(M, E0, E0, Spectrum::from_reals({-1.0, 1.0, 2.0, 3.0}, kPrec));
  EXPECT_NE(result.status, SolveStatus::converged);
  EXPECT_FALSE(result.certified);
}

TEST(DiagSolve, WidensMixedPrecision) {
  Instance inst = exact_instance(3, Field::real, 5, 64);
  auto result = diag_solve(inst.M.with_precision(256), inst.E, inst.F, inst.sigma);
  EXPECT_EQ(result.state.E.precision(), 256);
  EXPECT_LE(result.trace.back().err_res, Real::pow2(-200, 256));
}
