#include "simdiag/poly_eigen.hpp"

#include <gmpxx.h>

#include "simdiag/bootstrap.hpp"
#include "simdiag/errors.hpp"

namespace simdiag {

Polynomial::Polynomial(std::vector<std::string> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("polynomial degree must be at least 1");
  for (const auto& c : coeffs_) Real::parse(c, kDoublePrecision);  // validates the literal
}

Real Polynomial::coefficient(std::size_t k, Precision prec) const { return Real::parse(coeffs_.at(k), prec); }

Real Polynomial::evaluate(const Real& x) const {
  const Precision prec = x.precision();
  Real acc(1.0, prec);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coefficient(k, prec);
  return acc;
}

Complex Polynomial::evaluate(const Complex& x) const {
  const Precision prec = x.precision();
  Complex acc(1.0, 0.0, prec);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + Complex(coefficient(k, prec));
  return acc;
}

nlohmann::json to_json(const Polynomial& p) {
  return {{"degree", p.degree()}, {"coeffs", p.coefficient_strings()}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs")) {
    throw ParseError("polynomial: expected an object with \"degree\" and \"coeffs\"");
  }
  const auto& raw = j.at("coeffs");
  if (!j.at("degree").is_number_integer() || !raw.is_array()) throw ParseError("polynomial: malformed fields");
  const auto degree = j.at("degree").get<long long>();
  if (degree < 1 || static_cast<std::size_t>(degree) != raw.size()) {
    throw ParseError("polynomial: \"coeffs\" must hold exactly degree entries a_0..a_{n-1}");
  }
  std::vector<std::string> coeffs;
  for (const auto& c : raw) {
    if (c.is_string()) {
      coeffs.push_back(c.get<std::string>());
    } else if (c.is_number_integer()) {
      coeffs.push_back(std::to_string(c.get<long long>()));
    } else {
      throw ParseError("polynomial: coefficients must be decimal strings or integers");
    }
  }
  try {
    return Polynomial(std::move(coeffs));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("polynomial: ") + e.what());
  }
}

Polynomial wilkinson_poly(std::size_t n) {
  if (n < 1) throw InvalidArgument("wilkinson_poly: n must be at least 1");
  // c[k] is the coefficient of x^k, leading 1 included.
  std::vector<mpz_class> c{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<mpz_class> next(c.size() + 1, 0);
    const mpz_class root = static_cast<unsigned long>(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= root * c[k];
    }
    c = std::move(next);
  }
  std::vector<std::string> coeffs;
  for (std::size_t k = 0; k < n; ++k) coeffs.push_back(c[k].get_str());
  return Polynomial(std::move(coeffs));
}

Matrix companion_matrix(const Polynomial& p, Precision prec) {
  const std::size_t n = p.degree();
  Matrix C(n, prec);
  for (std::size_t i = 1; i < n; ++i) C.set(i, i - 1, Real(1.0, prec));
  for (std::size_t i = 0; i < n; ++i) C.set(i, n - 1, -p.coefficient(i, prec));
  return C;
}

std::vector<Real> wilkinson_nodes(std::size_t n, Precision prec) {
  std::vector<Real> nodes;
  for (std::size_t i = 1; i < n; ++i) nodes.push_back(Real(static_cast<double>(i) + 0.5, prec));
  return nodes;
}

Arrowhead fiedler_arrowhead(const Polynomial& p, const std::vector<Real>& nodes, Precision prec) {
  const std::size_t n = p.degree();
  if (nodes.size() + 1 != n) {
    throw DimensionMismatch("fiedler_arrowhead: need degree - 1 = " + std::to_string(n - 1) + " nodes, got " +
                            std::to_string(nodes.size()));
  }
  ArrowheadData data{{}, {}, Real(prec)};
  for (const auto& b : nodes) data.b.push_back(b.with_precision(prec));
  for (std::size_t i = 1; i < data.b.size(); ++i) {
    if (!(data.b[i - 1] < data.b[i])) throw InvalidArgument("fiedler_arrowhead: nodes must be strictly increasing");
  }

  Real node_sum(prec);
  for (const auto& b : data.b) node_sum += b;
  data.d = -p.coefficient(n - 1, prec) - node_sum;

  for (std::size_t i = 0; i < data.b.size(); ++i) {
    Real q_prime(1.0, prec);
    for (std::size_t j = 0; j < data.b.size(); ++j) {
      if (j != i) q_prime *= data.b[i] - data.b[j];
    }
    Real radicand = -(p.evaluate(data.b[i]) / q_prime);
    if (radicand.sign() < 0) {
      throw PositiveRadicand("fiedler_arrowhead: P(b)/Q'(b) > 0 at node " + std::to_string(i + 1) +
                             "; nodes do not interlace the roots");
    }
    data.c.push_back(sqrt(radicand));
  }

  Matrix A(n, prec);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    A.set(i, i, data.b[i]);
    A.set(i, n - 1, data.c[i]);
    A.set(n - 1, i, data.c[i]);
  }
  A.set(n - 1, n - 1, data.d);
  return {std::move(data), std::move(A)};
}

std::string_view to_string(RootRoute route) { return route == RootRoute::companion ? "companion" : "arrowhead"; }

RootRoute parse_route(std::string_view text) {
  if (text == "companion") return RootRoute::companion;
  if (text == "arrowhead") return RootRoute::arrowhead;
  throw InvalidArgument("unknown route '" + std::string(text) + "' (expected companion or arrowhead)");
}

RefineRootsResult refine_roots(const Polynomial& p, const RefineRootsOptions& options) {
  if (options.prec < kMinPrecision) throw InvalidArgument("refine_roots: precision below 24 bits");
  if (options.iters < 0) throw InvalidArgument("refine_roots: iters must be nonnegative");
  const Precision prec = options.prec;
  Matrix M;
  if (options.route == RootRoute::companion) {
    M = companion_matrix(p, prec);
  } else {
    const auto nodes = options.nodes.empty() ? wilkinson_nodes(p.degree(), prec) : options.nodes;
    M = fiedler_arrowhead(p, nodes, prec).A;
  }
  Eigendecomposition start = double_eigendecomposition(M, prec);
  DiagSolveOptions solve;
  solve.max_iter = options.iters;
  DiagSolveResult solved = diag_solve(M, start.E, start.F, start.sigma, solve);
  RefineRootsResult result;
  result.roots = solved.state.sigma;
  result.trace = std::move(solved.trace);
  result.trace.meta.solver = std::string("refine_roots/") + std::string(to_string(options.route));
  result.status = solved.status;
  result.certified = solved.certified;
  return result;
}

}  // namespace simdiag
