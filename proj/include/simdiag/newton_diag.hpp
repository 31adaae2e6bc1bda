#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/spectrum.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

/// Default bound on κ²(K+1)³ε below which the single-matrix iteration is
/// guaranteed to converge quadratically.
inline constexpr double kDiagCertificateThreshold = 0.136;

/// Point (E, F, Σ) of the system FE − I = 0, FME − Σ = 0 with its residuals.
struct DiagState {
  Matrix E;
  Matrix F;
  Spectrum sigma;
  Matrix Z;      ///< FE − I
  Matrix Delta;  ///< FME − Σ

  /// Builds the state and recomputes Z and Delta at working precision.
  static DiagState from(const Matrix& M, Matrix E, Matrix F, Spectrum sigma);

  /// err_res = max(‖Z‖, ‖Δ‖).
  Real residual() const;
};

/// Solution of the linearized system. X has zero diagonal; S is diagonal.
struct UpdateTriple {
  Matrix X;
  Matrix Y;
  Spectrum S;
};

struct CertificateReport {
  Real epsilon;
  Real kappa;
  Real K;
  Real u;
  Real threshold;
  bool satisfied = false;
};

/// Throws SpectrumCollision if two slots are closer than 2^(−prec/2)·max(1, max|σ|).
void require_distinct(const Spectrum& sigma, Precision prec);

/// Closed-form solution of Z + X + Y = 0, Δ − S + ΣX + YΣ = 0:
///   S = diag(Δ − ZΣ), x_ij = (−δ_ij + z_ij σ_j)/(σ_i − σ_j),
///   y_ii = −z_ii,     y_ij = (δ_ij − z_ij σ_i)/(σ_i − σ_j).
UpdateTriple solve_linearized(const Spectrum& sigma, const Matrix& Z, const Matrix& Delta);

/// κ = max(1, max_{i≠j} 1/|σ_i − σ_j|).
Real separation_constant(const Spectrum& sigma);
/// K = max(1, max_i |σ_i|).
Real magnitude_constant(const Spectrum& sigma);

/// u = κ²(K+1)³ε with ε = max(‖FE − I‖, ‖FME − Σ‖).
CertificateReport certificate(const Matrix& M, const Matrix& E, const Matrix& F, const Spectrum& sigma,
                              double threshold = kDiagCertificateThreshold);
CertificateReport certificate_of(const DiagState& state, double threshold = kDiagCertificateThreshold);

/// E' = E(I + X), F' = (I + Y)F, Σ' = Σ + S, then Z and Δ are recomputed.
DiagState diag_step(const Matrix& M, const DiagState& state);

struct DiagSolveOptions {
  double target_residual = 0.0;
  int max_iter = 64;
  double threshold = kDiagCertificateThreshold;
  /// Stop once the residual stalls below 2^(−prec/2): rounding dominates there.
  bool stop_at_precision_floor = true;
};

struct DiagSolveResult {
  DiagState state;
  IterationTrace trace;
  CertificateReport initial_certificate;
  SolveStatus status = SolveStatus::max_iterations;
  bool certified = false;
};

/// Runs diag_step from (E0, F0, Σ0). All inputs are widened to the largest
/// precision among them. Trace rows hold the certificate and err_res of every
/// iterate, starting with the initial point. An uncertified run whose residual
/// grows three times in a row stops with status diverging.
DiagSolveResult diag_solve(const Matrix& M, const Matrix& E0, const Matrix& F0, const Spectrum& sigma0,
                           const DiagSolveOptions& options = {});

}  // namespace simdiag
