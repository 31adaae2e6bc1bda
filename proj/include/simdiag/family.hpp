#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "simdiag/matrix.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/spectrum.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

/// Ordered tuple of p ≥ 1 same-size matrices.
class Pencil {
 public:
  explicit Pencil(std::vector<Matrix> matrices);

  std::size_t size() const { return matrices_.size(); }
  std::size_t n() const { return matrices_.front().n(); }
  const Matrix& operator[](std::size_t i) const { return matrices_[i]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  Precision precision() const;

 private:
  std::vector<Matrix> matrices_;
};

/// Least-squares weights for Σ_i α_i Σ_i ≈ σ.
struct CombinationWeights {
  std::vector<Complex> alpha;
  Spectrum target;
  Real residual;  ///< ‖Sα − σ‖₂
};

struct Combination {
  CombinationWeights weights;
  Matrix M;  ///< Σ α_i M_i
};

/// Slot k is E(:,k)* M E(:,k) / E(:,k)* E(:,k). Throws InvalidArgument on a zero column.
Spectrum rayleigh_extract(const Matrix& M, const Matrix& E);

/// Solves min ‖Sα − σ‖₂ where column i of S holds spectra[i] and σ are the
/// n-th roots of unity, by Householder QR with column pivoting. Throws
/// RankDeficient when the smallest pivot is below 2^(−prec/2) times the largest.
Combination combine_pencil(const Pencil& pencil, const std::vector<Spectrum>& spectra);

inline constexpr double kFamilyCertificateThreshold = 0.272;

struct FamilyCertificate {
  /// epsilon = ‖F0 M E0 − Σ‖ with Σ the roots of unity; u = n²ε; K = 1;
  /// κ = 1/(2 sin(π/n)) (1 when n < 2 or κ would fall below 1).
  CertificateReport report;
  /// ‖F0 E0 − I‖, which the criterion above does not include.
  Real inverse_residual;
};

FamilyCertificate theorem6_certificate(std::size_t n, const Matrix& F0, const Matrix& M, const Matrix& E0);

enum class FamilyStrategy { subproblem1, subproblem2, combination };
std::string_view to_string(FamilyStrategy strategy);
FamilyStrategy parse_strategy(std::string_view text);

struct FamilySolveOptions {
  double target_residual = 0.0;
  int max_iter = 64;
  bool stop_at_precision_floor = true;
};

struct FamilySolveResult {
  Matrix E;
  Matrix F;
  std::vector<Spectrum> spectra;  ///< one per pencil member, slot order of E
  std::vector<Real> residuals;    ///< ‖F M_i E − Σ_i‖ per member
  IterationTrace trace;
  SolveStatus status = SolveStatus::max_iterations;
  bool certified = false;
  std::optional<Combination> combination;
  std::optional<FamilyCertificate> combination_certificate;
};

/// subproblem1: refine on M_1, then extract the rest by Rayleigh quotients.
/// subproblem2: refine on (M_1, M_2) jointly, rescale F so diag(FE) = I, then extract the rest.
/// combination: refine on Σ α_i M_i, then extract every spectrum.
/// Starting spectra are diag(F0 M E0) for the matrices being refined.
FamilySolveResult family_solve(const Pencil& pencil, const Matrix& E0, const Matrix& F0, FamilyStrategy strategy,
                               const FamilySolveOptions& options = {});

}  // namespace simdiag
