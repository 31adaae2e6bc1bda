#include <gtest/gtest.h>

#include <cmath>

#include <algorithm>

#include "simdiag/bootstrap.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/poly_eigen.hpp"
#include "simdiag/random.hpp"

using namespace simdiag;

namespace {

constexpr Precision kPrec = 256;

Real tol(Precision prec, long slack = 16) { return Real::pow2(-static_cast<long>(prec) + slack, prec); }

// Monic polynomial with the given roots, coefficients as decimal strings of doubles' exact values.
Polynomial from_roots(const std::vector<Real>& roots) {
  const Precision prec = roots.front().precision();
  std::vector<Real> c{Real(1.0, prec)};
  for (const auto& r : roots) {
    std::vector<Real> next(c.size() + 1, Real(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  std::vector<std::string> coeffs;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) coeffs.push_back(c[k].to_string());
  return Polynomial(coeffs);
}

}  // namespace

TEST(Wilkinson, SmallDegrees) {
  EXPECT_EQ(wilkinson_poly(1).coefficient_strings(), (std::vector<std::string>{"-1"}));
  EXPECT_EQ(wilkinson_poly(2).coefficient_strings(), (std::vector<std::string>{"2", "-3"}));
}

TEST(Wilkinson, DegreeTwentyVieta) {
  Polynomial p = wilkinson_poly(20);
  EXPECT_EQ(p.coefficient_strings()[19], "-210");
  EXPECT_EQ(p.coefficient_strings()[0], "2432902008176640000");
  for (int k = 1; k <= 20; ++k) EXPECT_TRUE(p.evaluate(Real(k, 128)).is_zero()) << k;
}

TEST(Polynomial, Json) {
  Polynomial p = wilkinson_poly(3);
  Polynomial back = polynomial_from_json(to_json(p));
  EXPECT_EQ(back.coefficient_strings(), p.coefficient_strings());
  EXPECT_EQ(polynomial_from_json(nlohmann::json::parse(R"({"degree":2,"coeffs":[2,"-3"]})")).degree(), 2u);
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"degree":3,"coeffs":["1"]})")), ParseError);
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"degree":1,"coeffs":["x"]})")), ParseError);
  EXPECT_THROW(Polynomial({}), InvalidArgument);
}

TEST(Companion, LinearAndQuadratic) {
  Matrix c1 = companion_matrix(Polynomial({"-7"}), kPrec);
  EXPECT_EQ(c1, Matrix::from_rows({{7}}, kPrec));
  Matrix c2 = companion_matrix(wilkinson_poly(2), kPrec);
  EXPECT_EQ(c2, Matrix::from_rows({{0, -2}, {1, 3}}, kPrec));
  // char poly x² − tr x + det.
  EXPECT_EQ(trace(c2).re, 3.0);
  EXPECT_LE(abs(determinant(c2).re - Real(2.0, kPrec)), tol(kPrec));
}

TEST(Companion, TraceIsMinusLeadingCoefficient) {
  EXPECT_EQ(trace(companion_matrix(wilkinson_poly(10), kPrec)).re, 55.0);
}

TEST(Arrowhead, QuadraticHandExample) {
  std::vector<Real> nodes{Real(1.5, kPrec)};
  Arrowhead a = fiedler_arrowhead(wilkinson_poly(2), nodes, kPrec);
  EXPECT_EQ(a.data.d, 1.5);
  EXPECT_EQ(a.data.c[0] * a.data.c[0], 0.25);
  EXPECT_EQ(a.A, Matrix::from_rows({{1.5, 0.5}, {0.5, 1.5}}, kPrec));
  // det(xI − A) = x² − 3x + 2.
  EXPECT_EQ(trace(a.A).re, 3.0);
  EXPECT_LE(abs(determinant(a.A).re - Real(2.0, kPrec)), tol(kPrec));
}

TEST(Arrowhead, NonInterlacingNodesThrow) {
  // Both nodes between roots 1 and 2 of (x−1)(x−2)(x−3): one radicand turns positive.
  std::vector<Real> nodes{Real(1.2, kPrec), Real(1.8, kPrec)};
  EXPECT_THROW(fiedler_arrowhead(wilkinson_poly(3), nodes, kPrec), PositiveRadicand);
  EXPECT_THROW(fiedler_arrowhead(wilkinson_poly(3), {Real(1.5, kPrec)}, kPrec), DimensionMismatch);
  EXPECT_THROW(fiedler_arrowhead(wilkinson_poly(3), {Real(2.5, kPrec), Real(1.5, kPrec)}, kPrec),
               InvalidArgument);
}

TEST(Arrowhead, DefiningRelationAndCharacteristicPolynomial) {
  NormalSampler sampler(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) raw.push_back(sampler.normal() * 3.0);
    std::sort(raw.begin(), raw.end());
    std::vector<Real> roots, nodes;
    for (double r : raw) roots.emplace_back(r, kPrec);
    for (std::size_t i = 0; i + 1 < n; ++i) nodes.push_back((roots[i] + roots[i + 1]) * 0.5);
    Polynomial p = from_roots(roots);
    Arrowhead a = fiedler_arrowhead(p, nodes, kPrec);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Real q_prime(1.0, kPrec);
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (j != i) q_prime *= nodes[i] - nodes[j];
      Real lhs = p.evaluate(nodes[i]);
      Real rhs = -(a.data.c[i] * a.data.c[i] * q_prime);
      EXPECT_LE(abs(lhs - rhs), tol(kPrec, 24) * (Real(1.0, kPrec) + abs(lhs)));
    }
    for (int s = 0; s <= static_cast<int>(n); ++s) {
      Real x(static_cast<double>(s) - 1.7, kPrec);
      Matrix shifted = Matrix::identity(n, kPrec) * x - a.A;
      Real det = determinant(shifted).re;
      Real px = p.evaluate(x);
      EXPECT_LE(abs(det - px), tol(kPrec, 32) * (Real(1.0, kPrec) + abs(px)));
    }
    Real tr = trace(a.A).re;
    EXPECT_LE(abs(tr + p.coefficient(n - 1, kPrec)), tol(kPrec, 8) * (Real(1.0, kPrec) + abs(tr)));
  }
}

TEST(Arrowhead, WilkinsonTwentyDoubleEigenvalues) {
  // Coefficients near 1e18 need more than double to build; only the eigensolver runs in double.
  Arrowhead a = fiedler_arrowhead(wilkinson_poly(20), wilkinson_nodes(20, 1024), 1024);
  Eigendecomposition e = double_eigendecomposition(a.A, 53);
  std::vector<double> values;
  for (const auto& v : e.sigma.values()) values.push_back(v.re.to_double());
  std::sort(values.begin(), values.end());
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(values[k], k + 1.0, 1e-9);
}

TEST(Bootstrap, GeneralMatrixResidual) {
  Matrix M = random_gaussian(6, Field::real, 4, false, kPrec);
  Eigendecomposition e = double_eigendecomposition(M, kPrec);
  EXPECT_LE(norm_inf(minus_identity(e.F * e.E)), tol(kPrec, 32));
  EXPECT_LE(norm_inf(minus_diagonal(e.F * M * e.E, e.sigma.values())), 1e-12);
}

TEST(RefineRoots, Quadratic) {
  RefineRootsOptions options;
  options.prec = 512;
  options.iters = 10;
  RefineRootsResult r = refine_roots(wilkinson_poly(2), options);
  std::vector<double> got{r.roots[0].re.to_double(), r.roots[1].re.to_double()};
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<double>{1.0, 2.0}));
  for (const auto& root : r.roots.values()) {
    Real nearest(std::round(root.re.to_double()), 512);
    EXPECT_LE(abs(root - Complex(nearest)), Real::pow2(-409, 512));
  }
}

TEST(RefineRoots, CompanionNineteenAndRealRoots) {
  RefineRootsOptions options;
  options.route = RootRoute::companion;
  options.prec = 512;
  options.iters = 12;
  RefineRootsResult r = refine_roots(wilkinson_poly(19), options);
  for (const auto& root : r.roots.values()) {
    const double k = std::round(root.re.to_double());
    EXPECT_GE(k, 1.0);
    EXPECT_LE(k, 19.0);
    EXPECT_LE(abs(root - Complex(Real(k, 512))), 1e-50);
    EXPECT_LE(abs(root.im), Real::pow2(-409, 512));
  }
}

TEST(RefineRoots, ParseRoute) {
  EXPECT_EQ(parse_route("companion"), RootRoute::companion);
  EXPECT_THROW(parse_route("x"), InvalidArgument);
}
