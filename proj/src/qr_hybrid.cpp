#include "simdiag/qr_hybrid.hpp"

#include <vector>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

// Real Householder QR on raw MPFR registers; R is overwritten in place.
void householder_real(Matrix& R, Matrix& Q) {
  const std::size_t n = R.n();
  const Precision prec = R.precision();
  Real below(prec), norm(prec), alpha(prec), vtv(prec), w(prec), t(prec);
  std::vector<std::vector<Real>> reflectors(n);
  std::vector<Real> betas(n, Real(prec));

  for (std::size_t k = 0; k + 1 < n; ++k) {
    mpfr_set_zero(below.raw(), 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      mpfr_sqr(t.raw(), R.re(i, k).raw(), kRound);
      mpfr_add(below.raw(), below.raw(), t.raw(), kRound);
    }
    if (below.is_zero()) continue;
    const Real& x0 = R.re(k, k);
    mpfr_sqr(t.raw(), x0.raw(), kRound);
    mpfr_add(norm.raw(), below.raw(), t.raw(), kRound);
    mpfr_sqrt(norm.raw(), norm.raw(), kRound);
    // alpha takes the sign opposite to x0 so v0 = x0 - alpha never cancels.
    if (x0.sign() >= 0) {
      mpfr_neg(alpha.raw(), norm.raw(), kRound);
    } else {
      mpfr_set(alpha.raw(), norm.raw(), kRound);
    }
    std::vector<Real> v(n - k, Real(prec));
    mpfr_sub(v[0].raw(), x0.raw(), alpha.raw(), kRound);
    for (std::size_t i = k + 1; i < n; ++i) mpfr_set(v[i - k].raw(), R.re(i, k).raw(), kRound);
    mpfr_sqr(vtv.raw(), v[0].raw(), kRound);
    mpfr_add(vtv.raw(), vtv.raw(), below.raw(), kRound);
    mpfr_ui_div(betas[k].raw(), 2, vtv.raw(), kRound);

    for (std::size_t j = k + 1; j < n; ++j) {
      mpfr_set_zero(w.raw(), 1);
      for (std::size_t i = k; i < n; ++i) {
        mpfr_mul(t.raw(), v[i - k].raw(), R.re(i, j).raw(), kRound);
        mpfr_add(w.raw(), w.raw(), t.raw(), kRound);
      }
      mpfr_mul(w.raw(), w.raw(), betas[k].raw(), kRound);
      for (std::size_t i = k; i < n; ++i) {
        mpfr_mul(t.raw(), w.raw(), v[i - k].raw(), kRound);
        mpfr_sub(R.re(i, j).raw(), R.re(i, j).raw(), t.raw(), kRound);
      }
    }
    mpfr_set(R.re(k, k).raw(), alpha.raw(), kRound);
    for (std::size_t i = k + 1; i < n; ++i) mpfr_set_zero(R.re(i, k).raw(), 1);
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-2}, accumulated backwards so each reflector touches
  // only the trailing block.
  Q = Matrix::identity(n, prec);
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    for (std::size_t j = k; j < n; ++j) {
      mpfr_set_zero(w.raw(), 1);
      for (std::size_t i = k; i < n; ++i) {
        mpfr_mul(t.raw(), v[i - k].raw(), Q.re(i, j).raw(), kRound);
        mpfr_add(w.raw(), w.raw(), t.raw(), kRound);
      }
      mpfr_mul(w.raw(), w.raw(), betas[k].raw(), kRound);
      for (std::size_t i = k; i < n; ++i) {
        mpfr_mul(t.raw(), w.raw(), v[i - k].raw(), kRound);
        mpfr_sub(Q.re(i, j).raw(), Q.re(i, j).raw(), t.raw(), kRound);
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (R.re(k, k).sign() >= 0) continue;
    for (std::size_t j = k; j < n; ++j) mpfr_neg(R.re(k, j).raw(), R.re(k, j).raw(), kRound);
    for (std::size_t i = 0; i < n; ++i) mpfr_neg(Q.re(i, k).raw(), Q.re(i, k).raw(), kRound);
  }
}

void householder_complex(Matrix& R, Matrix& Q) {
  const std::size_t n = R.n();
  const Precision prec = R.precision();
  std::vector<std::vector<Complex>> reflectors(n);
  std::vector<Real> betas(n, Real(prec));

  for (std::size_t k = 0; k + 1 < n; ++k) {
    Real below(prec);
    for (std::size_t i = k + 1; i < n; ++i) below += norm(R.at(i, k));
    if (below.is_zero()) continue;
    const Complex x0 = R.at(k, k);
    const Real x0_abs = abs(x0);
    const Real length = sqrt(below + x0_abs * x0_abs);
    // alpha = -phase(x0)·‖x‖.
    Complex alpha = x0_abs.is_zero() ? Complex(-length) : -(x0 * (length / x0_abs));
    std::vector<Complex> v(n - k, Complex(prec));
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = R.at(i, k);
    betas[k] = Real(2.0, prec) / (norm(v[0]) + below);

    for (std::size_t j = k + 1; j < n; ++j) {
      Complex w(prec);
      for (std::size_t i = k; i < n; ++i) w += conj(v[i - k]) * R.at(i, j);
      w = w * betas[k];
      for (std::size_t i = k; i < n; ++i) R.set(i, j, R.at(i, j) - v[i - k] * w);
    }
    R.set(k, k, alpha);
    for (std::size_t i = k + 1; i < n; ++i) R.set(i, k, Real(prec));
    reflectors[k] = std::move(v);
  }

  Q = Matrix::identity(n, prec);
  Q.promote_to_complex();
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    for (std::size_t j = k; j < n; ++j) {
      Complex w(prec);
      for (std::size_t i = k; i < n; ++i) w += conj(v[i - k]) * Q.at(i, j);
      w = w * betas[k];
      for (std::size_t i = k; i < n; ++i) Q.set(i, j, Q.at(i, j) - v[i - k] * w);
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Complex r = R.at(k, k);
    if (r.is_real() && r.re.sign() >= 0) continue;
    const Real r_abs = abs(r);
    if (r_abs.is_zero()) continue;
    const Complex phase = conj(r) / r_abs;  // d_k with d_k r_kk = |r_kk|
    for (std::size_t j = k; j < n; ++j) R.set(k, j, phase * R.at(k, j));
    R.set(k, k, r_abs);
    const Complex back = conj(phase);
    for (std::size_t i = 0; i < n; ++i) Q.set(i, k, Q.at(i, k) * back);
  }
}

}  // namespace

QRFactors householder_qr(const Matrix& A) {
  Matrix R = A;
  Matrix Q;
  if (A.is_real()) {
    householder_real(R, Q);
  } else {
    householder_complex(R, Q);
    R.demote_if_real();
    Q.demote_if_real();
  }
  return {std::move(Q), std::move(R)};
}

QRIterationState qr_iterate(const QRIterationState& state) {
  QRFactors f = householder_qr(state.A);
  return {f.R * f.Q, state.Q_accum * f.Q, state.k + 1};
}

QRBasicResult qr_basic(const Matrix& A, double threshold, int max_iter) {
  if (max_iter < 1) throw InvalidArgument("qr_basic: max_iter must be at least 1");
  QRIterationState state{A, Matrix::identity(A.n(), A.precision()), 0};
  Real err(A.precision());
  do {
    state = qr_iterate(state);
    err = norm_lower_tri_max(state.A);
  } while (err > threshold && state.k < max_iter);

  QRBasicResult result;
  result.sigma = Spectrum::diagonal_of(state.A);
  result.iterations = state.k;
  result.status = err > threshold ? SolveStatus::max_iterations : SolveStatus::converged;
  result.err = std::move(err);
  result.Q_accum = std::move(state.Q_accum);
  result.A = std::move(state.A);
  return result;
}

QRNewtonTestResult qr_with_newton_test(const Matrix& A, const Matrix& M_ref, int max_iter, double cert_threshold) {
  if (max_iter < 1) throw InvalidArgument("qr_with_newton_test: max_iter must be at least 1");
  require_same_size(A, M_ref, "qr_with_newton_test");
  QRIterationState state{A, Matrix::identity(A.n(), A.precision()), 0};
  QRNewtonTestResult result;
  bool certified = false;
  do {
    state = qr_iterate(state);
    result.sigma = Spectrum::diagonal_of(state.A);
    result.E = state.Q_accum;
    result.F = adjoint(state.Q_accum);
    try {
      result.certificate = certificate(M_ref, result.E, result.F, result.sigma, cert_threshold);
      certified = result.certificate.satisfied;
    } catch (const SpectrumCollision&) {
      certified = false;
    }
  } while (!certified && state.k < max_iter);
  result.iterations = state.k;
  result.status = certified ? SolveStatus::converged : SolveStatus::max_iterations;
  return result;
}

HybridResult hybrid_eigensolve(const Matrix& A, const HybridOptions& options) {
  const Matrix base = A.with_precision(options.base_precision);
  HybridResult result{qr_with_newton_test(base, base, options.qr_max_iter, options.cert_threshold), {}};
  const Precision target = options.target_precision;
  result.refined = diag_solve(A.with_precision(target), result.start.E.with_precision(target),
                              result.start.F.with_precision(target), result.start.sigma.with_precision(target),
                              options.newton);
  return result;
}

}  // namespace simdiag
