#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/spectrum.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

/// A = QR with Q unitary and R upper triangular with real nonnegative diagonal.
struct QRFactors {
  Matrix Q;
  Matrix R;
};

/// Householder QR at the precision of A. Zero columns give zero R diagonals.
QRFactors householder_qr(const Matrix& A);

/// State of the unshifted QR iteration: A_k = Q_accum* A_0 Q_accum.
struct QRIterationState {
  Matrix A;
  Matrix Q_accum;
  int k = 0;  ///< QR factorizations performed
};

/// A_{k+1} = R_k Q_k and Q_accum ← Q_accum Q_k.
QRIterationState qr_iterate(const QRIterationState& state);

struct QRBasicResult {
  Spectrum sigma;  ///< diag(A_k) at exit
  Matrix Q_accum;
  Matrix A;        ///< final iterate
  int iterations = 0;
  Real err;        ///< ‖A_k‖ lower-triangular max at exit
  SolveStatus status = SolveStatus::max_iterations;
};

/// Unshifted QR iteration until the strictly-lower max entry is ≤ threshold.
/// The iteration count is the number of factorizations, so at least 1.
QRBasicResult qr_basic(const Matrix& A, double threshold = 1e-6, int max_iter = 10000);

struct QRNewtonTestResult {
  Spectrum sigma;
  Matrix E;
  Matrix F;  ///< E*
  int iterations = 0;
  CertificateReport certificate;
  SolveStatus status = SolveStatus::max_iterations;
};

/// QR iteration that stops as soon as (Σ_k = diag(A_k), E_k = ∏Q, F_k = E_k*)
/// passes the single-matrix Newton certificate against M_ref. Iterates whose
/// diagonal collides count as uncertified.
QRNewtonTestResult qr_with_newton_test(const Matrix& A, const Matrix& M_ref, int max_iter = 10000,
                                       double cert_threshold = kDiagCertificateThreshold);

struct HybridOptions {
  Precision base_precision = kDoublePrecision;
  Precision target_precision = 256;
  int qr_max_iter = 10000;
  double cert_threshold = kDiagCertificateThreshold;
  DiagSolveOptions newton;
};

struct HybridResult {
  QRNewtonTestResult start;
  DiagSolveResult refined;
};

/// QR with Newton test at base precision, then diag_solve on A at target precision.
HybridResult hybrid_eigensolve(const Matrix& A, const HybridOptions& options = {});

}  // namespace simdiag
