#pragma once

#include "simdiag/matrix.hpp"
#include "simdiag/spectrum.hpp"

namespace simdiag {

/// Initial point (E, F, Σ) for the Newton refinement.
struct Eigendecomposition {
  Matrix E;
  Matrix F;
  Spectrum sigma;
};

/// Double-precision eigendecomposition of M, widened to `prec`.
///
/// Symmetric real input uses a symmetric solver and F = Eᵗ; anything else is
/// balanced, solved with a general solver, and F is the inverse of the widened
/// E at `prec`. Columns of E have unit 2-norm; slots are in solver order.
Eigendecomposition double_eigendecomposition(const Matrix& M, Precision prec);

}  // namespace simdiag
