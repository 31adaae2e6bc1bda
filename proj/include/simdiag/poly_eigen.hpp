#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "simdiag/matrix.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/spectrum.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

/// Monic polynomial x^n + a_{n-1}x^{n-1} + ... + a_0. Coefficients are kept as
/// decimal strings so integer data stays exact until a precision is chosen.
class Polynomial {
 public:
  /// `coeffs` = a_0 .. a_{n-1}; the degree is coeffs.size() and must be ≥ 1.
  explicit Polynomial(std::vector<std::string> coeffs);

  std::size_t degree() const { return coeffs_.size(); }
  const std::vector<std::string>& coefficient_strings() const { return coeffs_; }
  /// a_k rounded to `prec`.
  Real coefficient(std::size_t k, Precision prec) const;

  /// Horner evaluation at working precision.
  Real evaluate(const Real& x) const;
  Complex evaluate(const Complex& x) const;

 private:
  std::vector<std::string> coeffs_;
};

/// {"degree": n, "coeffs": ["a_0", ..., "a_{n-1}"]}.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

/// ∏_{i=1}^{n} (x − i) with exact integer coefficients.
Polynomial wilkinson_poly(std::size_t n);

/// Ones on the subdiagonal, −a_0 .. −a_{n−1} down the last column.
Matrix companion_matrix(const Polynomial& p, Precision prec);

struct ArrowheadData {
  std::vector<Real> b;  ///< nodes
  std::vector<Real> c;  ///< couplings, c_i ≥ 0
  Real d;               ///< corner
};

struct Arrowhead {
  ArrowheadData data;
  Matrix A;  ///< [[diag(b), c], [cᵗ, d]]
};

/// Symmetric arrowhead whose characteristic polynomial is P, with
/// c_i² = −P(b_i)/Q′(b_i), Q = ∏(x − b_i), d = −a_{n−1} − Σ b_i.
/// Throws PositiveRadicand when the nodes do not interlace the roots.
Arrowhead fiedler_arrowhead(const Polynomial& p, const std::vector<Real>& nodes, Precision prec);

/// b_i = i + 1/2 for i = 1..n−1.
std::vector<Real> wilkinson_nodes(std::size_t n, Precision prec);

enum class RootRoute { companion, arrowhead };
std::string_view to_string(RootRoute route);
RootRoute parse_route(std::string_view text);

struct RefineRootsOptions {
  RootRoute route = RootRoute::arrowhead;
  Precision prec = 1024;
  int iters = 4;
  /// Arrowhead nodes; empty means Wilkinson nodes i + 1/2.
  std::vector<Real> nodes;
};

struct RefineRootsResult {
  Spectrum roots;
  IterationTrace trace;
  SolveStatus status = SolveStatus::max_iterations;
  bool certified = false;
};

/// Builds the chosen matrix, takes a double-precision eigendecomposition as the
/// starting point, and runs `iters` Newton steps at `prec`.
RefineRootsResult refine_roots(const Polynomial& p, const RefineRootsOptions& options);

}  // namespace simdiag
