#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/spectrum.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

inline constexpr double kSimDiag2CertificateThreshold = 0.094;

/// Point (E, F, Σ1, Σ2) of the system FM1E − Σ1 = 0, FM2E − Σ2 = 0.
/// FE − I is not part of this system and is not tracked.
struct SimDiag2State {
  Matrix E;
  Matrix F;
  Spectrum sigma1;
  Spectrum sigma2;
  Matrix Z1;  ///< FM1E − Σ1
  Matrix Z2;  ///< FM2E − Σ2

  static SimDiag2State from(const Matrix& M1, const Matrix& M2, Matrix E, Matrix F, Spectrum sigma1,
                            Spectrum sigma2);

  /// err_res = max(‖Z1‖, ‖Z2‖).
  Real residual() const;
};

struct UpdateTriple2 {
  Matrix X;
  Matrix Y;
  Spectrum S1;
  Spectrum S2;
};

/// det[[σ1_j, σ2_j], [σ1_i, σ2_i]] for slots i, j.
Complex slot_determinant(const Spectrum& sigma1, const Spectrum& sigma2, std::size_t i, std::size_t j);

/// Throws DeterminantCollapse if some |det| for i ≠ j is below 2^(−prec/2)·max(1, max|σ|)².
void require_non_proportional(const Spectrum& sigma1, const Spectrum& sigma2, Precision prec);

/// Closed-form solution of Z_k − S_k + Σ_k X + YΣ_k = 0, k = 1, 2, with zero
/// diagonals in X and Y and S_k = diag(Z_k).
UpdateTriple2 solve_linearized2(const Spectrum& sigma1, const Spectrum& sigma2, const Matrix& Z1, const Matrix& Z2);

/// u = 4εκ²K³ with ε = max(‖Z1‖, ‖Z2‖), κ = max(1, max_{i≠j} 1/|det|),
/// K = max(1, max |σ^k_j|).
CertificateReport certificate2(const Matrix& M1, const Matrix& M2, const Matrix& E, const Matrix& F,
                               const Spectrum& sigma1, const Spectrum& sigma2,
                               double threshold = kSimDiag2CertificateThreshold);
CertificateReport certificate2_of(const SimDiag2State& state, double threshold = kSimDiag2CertificateThreshold);

/// E' = E(I + X), F' = (I + Y)F, Σ_k' = Σ_k + S_k.
SimDiag2State simdiag2_step(const Matrix& M1, const Matrix& M2, const SimDiag2State& state);

struct SimDiag2SolveOptions {
  double target_residual = 0.0;
  int max_iter = 64;
  double threshold = kSimDiag2CertificateThreshold;
  bool stop_at_precision_floor = true;
};

struct SimDiag2SolveResult {
  SimDiag2State state;
  IterationTrace trace;
  CertificateReport initial_certificate;
  SolveStatus status = SolveStatus::max_iterations;
  bool certified = false;
};

/// Same stopping rules as diag_solve.
SimDiag2SolveResult simdiag2_solve(const Matrix& M1, const Matrix& M2, const Matrix& E0, const Matrix& F0,
                                   const Spectrum& sigma1, const Spectrum& sigma2,
                                   const SimDiag2SolveOptions& options = {});

}  // namespace simdiag
