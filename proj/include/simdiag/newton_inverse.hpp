#pragma once

#include <cstddef>

#include "simdiag/matrix.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

/// (E, F) together with the exactly recomputed residual Z = FE − I.
struct InversePairState {
  Matrix E;
  Matrix F;
  Matrix Z;
  int iteration = 0;

  static InversePairState from(Matrix E, Matrix F);
};

/// One inversion-free step: X = −Z/2, E' = E(I + X), F' = (I + X)F.
/// When ‖Z‖ ≤ 1 the new residual satisfies ‖Z'‖ ≤ ‖Z‖².
InversePairState inverse_step(const InversePairState& state);

struct InverseSolveOptions {
  double target_residual = 0.0;
  int max_iter = 64;
};

struct InverseSolveResult {
  InversePairState state;
  IterationTrace trace;
  SolveStatus status = SolveStatus::max_iterations;
  /// ‖Z₀‖ < 1/2, the sufficient condition for quadratic convergence.
  bool certified = false;
};

/// Iterates inverse_step until ‖Z‖ ≤ target_residual or max_iter steps. The
/// trace records ‖Z‖ (infinity norm) for every iterate.
InverseSolveResult inverse_solve(const Matrix& E0, const Matrix& F0, const InverseSolveOptions& options = {});

}  // namespace simdiag
