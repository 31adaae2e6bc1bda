#include "simdiag/newton_diag.hpp"

#include <algorithm>
#include <chrono>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

Precision working_precision(std::initializer_list<Precision> precs) { return std::max(precs); }

}  // namespace

DiagState DiagState::from(const Matrix& M, Matrix E, Matrix F, Spectrum sigma) {
  require_same_size(M, E, "diag state");
  require_same_size(E, F, "diag state");
  if (sigma.size() != M.n()) throw DimensionMismatch("diag state: spectrum size mismatch");
  Matrix Z = minus_identity(F * E);
  Matrix Delta = minus_diagonal(F * (M * E), sigma.values());
  return {std::move(E), std::move(F), std::move(sigma), std::move(Z), std::move(Delta)};
}

Real DiagState::residual() const { return max(norm_inf(Z), norm_inf(Delta)); }

void require_distinct(const Spectrum& sigma, Precision prec) {
  if (sigma.size() < 2) return;
  Real scale = max(Real(1.0, prec), sigma.max_abs());
  Real tolerance = Real::pow2(-static_cast<long>(prec / 2), prec) * scale;
  Real gap = sigma.min_gap();
  if (gap < tolerance) {
    throw SpectrumCollision("spectrum slots collide: min gap " + gap.to_scientific(6) + " below " +
                            tolerance.to_scientific(6));
  }
}

Real separation_constant(const Spectrum& sigma) {
  Real one(1.0, sigma.precision());
  if (sigma.size() < 2) return one;
  return max(one, one / sigma.min_gap());
}

Real magnitude_constant(const Spectrum& sigma) { return max(Real(1.0, sigma.precision()), sigma.max_abs()); }

UpdateTriple solve_linearized(const Spectrum& sigma, const Matrix& Z, const Matrix& Delta) {
  require_same_size(Z, Delta, "solve_linearized");
  const std::size_t n = Z.n();
  if (sigma.size() != n) throw DimensionMismatch("solve_linearized: spectrum size mismatch");
  const Precision prec = working_precision({Z.precision(), Delta.precision(), sigma.precision()});
  require_distinct(sigma, prec);

  const Field field = (Z.is_real() && Delta.is_real() && sigma.is_real()) ? Field::real : Field::complex;
  Matrix X(n, prec, field);
  Matrix Y(n, prec, field);
  std::vector<Complex> s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z_ii = Z.at(i, i);
    s.push_back(Delta.at(i, i) - z_ii * sigma[i]);
    Y.set(i, i, -z_ii);
  }
  // σ_i − σ_j flips sign under i <-> j, so one reciprocal serves both entries.
  if (field == Field::real) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Real& si = sigma[i].re;
        const Real& sj = sigma[j].re;
        const Real inv = Real(1.0, prec) / (si - sj);
        X.re(i, j) = (Z.re(i, j) * sj - Delta.re(i, j)) * inv;
        Y.re(i, j) = (Delta.re(i, j) - Z.re(i, j) * si) * inv;
        X.re(j, i) = (Delta.re(j, i) - Z.re(j, i) * si) * inv;
        Y.re(j, i) = (Z.re(j, i) * sj - Delta.re(j, i)) * inv;
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex inv = Complex(Real(1.0, prec)) / (sigma[i] - sigma[j]);
        const Complex z = Z.at(i, j), d = Delta.at(i, j);
        X.set(i, j, (z * sigma[j] - d) * inv);
        Y.set(i, j, (d - z * sigma[i]) * inv);
        const Complex w = Z.at(j, i), e = Delta.at(j, i);
        X.set(j, i, (e - w * sigma[i]) * inv);
        Y.set(j, i, (w * sigma[j] - e) * inv);
      }
    }
  }
  return {std::move(X), std::move(Y), Spectrum(std::move(s))};
}

CertificateReport certificate_of(const DiagState& state, double threshold) {
  const Precision prec = state.Z.precision();
  require_distinct(state.sigma, prec);
  CertificateReport report;
  report.epsilon = state.residual();
  report.kappa = separation_constant(state.sigma);
  report.K = magnitude_constant(state.sigma);
  Real k1 = report.K + Real(1.0, prec);
  report.u = report.kappa * report.kappa * k1 * k1 * k1 * report.epsilon;
  report.threshold = Real(threshold, prec);
  report.satisfied = report.u <= report.threshold;
  return report;
}

CertificateReport certificate(const Matrix& M, const Matrix& E, const Matrix& F, const Spectrum& sigma,
                              double threshold) {
  return certificate_of(DiagState::from(M, E, F, sigma), threshold);
}

DiagState diag_step(const Matrix& M, const DiagState& state) {
  UpdateTriple update = solve_linearized(state.sigma, state.Z, state.Delta);
  Matrix E = state.E * plus_identity(update.X);
  Matrix F = plus_identity(update.Y) * state.F;
  Spectrum sigma = state.sigma + update.S;
  require_distinct(sigma, E.precision());
  return DiagState::from(M, std::move(E), std::move(F), std::move(sigma));
}

DiagSolveResult diag_solve(const Matrix& M, const Matrix& E0, const Matrix& F0, const Spectrum& sigma0,
                           const DiagSolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const Precision prec =
      working_precision({M.precision(), E0.precision(), F0.precision(), sigma0.precision()});
  const Matrix Mw = M.with_precision(prec);
  require_distinct(sigma0.with_precision(prec), prec);

  DiagSolveResult result{DiagState::from(Mw, E0.with_precision(prec), F0.with_precision(prec),
                                         sigma0.with_precision(prec)),
                         IterationTrace{}, CertificateReport{}, SolveStatus::max_iterations, false};
  result.trace.meta.n = M.n();
  result.trace.meta.field =
      std::string(to_string(M.is_real() && E0.is_real() && F0.is_real() && sigma0.is_real() ? Field::real
                                                                                              : Field::complex));
  result.trace.meta.precision_bits = prec;
  result.trace.meta.solver = "newton_diag";

  CertificateReport report = certificate_of(result.state, options.threshold);
  result.initial_certificate = report;
  result.certified = report.satisfied;
  result.trace.append(report.u, report.epsilon, elapsed());

  const Real floor = Real::pow2(-static_cast<long>(prec / 2), prec);
  int growth = 0;
  for (int step = 0;; ++step) {
    if (report.epsilon <= options.target_residual) {
      result.status = SolveStatus::converged;
      break;
    }
    if (step >= options.max_iter) break;
    const Real previous = report.epsilon;
    const bool previous_certified = report.satisfied;
    result.state = diag_step(Mw, result.state);
    report = certificate_of(result.state, options.threshold);
    result.trace.append(report.u, report.epsilon, elapsed());

    if (options.stop_at_precision_floor && previous <= floor && report.epsilon * 2.0 >= previous) {
      result.status = SolveStatus::converged;
      break;
    }
    growth = (!previous_certified && report.epsilon > previous) ? growth + 1 : 0;
    if (growth >= 3) {
      result.status = SolveStatus::diverging;
      break;
    }
  }
  return result;
}

}  // namespace simdiag
