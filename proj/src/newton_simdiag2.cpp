#include "simdiag/newton_simdiag2.hpp"

#include <algorithm>
#include <chrono>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

void require_slots(const Spectrum& sigma1, const Spectrum& sigma2, std::size_t n, const char* where) {
  if (sigma1.size() != n || sigma2.size() != n) {
    throw DimensionMismatch(std::string(where) + ": spectrum size mismatch");
  }
}

Real joint_magnitude(const Spectrum& sigma1, const Spectrum& sigma2) {
  return max(Real(1.0, std::max(sigma1.precision(), sigma2.precision())), max(sigma1.max_abs(), sigma2.max_abs()));
}

// max_{i≠j} 1/|det|, or 0 for a single slot.
Real max_inverse_determinant(const Spectrum& sigma1, const Spectrum& sigma2, Precision prec) {
  Real worst(0.0, prec);
  const std::size_t n = sigma1.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Real inv = Real(1.0, prec) / abs(slot_determinant(sigma1, sigma2, i, j));
      if (inv > worst) worst = inv;
    }
  }
  return worst;
}

}  // namespace

SimDiag2State SimDiag2State::from(const Matrix& M1, const Matrix& M2, Matrix E, Matrix F, Spectrum sigma1,
                                  Spectrum sigma2) {
  require_same_size(M1, M2, "simdiag2 state");
  require_same_size(M1, E, "simdiag2 state");
  require_same_size(E, F, "simdiag2 state");
  require_slots(sigma1, sigma2, M1.n(), "simdiag2 state");
  Matrix Z1 = minus_diagonal(F * (M1 * E), sigma1.values());
  Matrix Z2 = minus_diagonal(F * (M2 * E), sigma2.values());
  return {std::move(E), std::move(F), std::move(sigma1), std::move(sigma2), std::move(Z1), std::move(Z2)};
}

Real SimDiag2State::residual() const { return max(norm_inf(Z1), norm_inf(Z2)); }

Complex slot_determinant(const Spectrum& sigma1, const Spectrum& sigma2, std::size_t i, std::size_t j) {
  return sigma1[j] * sigma2[i] - sigma2[j] * sigma1[i];
}

void require_non_proportional(const Spectrum& sigma1, const Spectrum& sigma2, Precision prec) {
  if (sigma1.size() < 2) return;
  Real scale = joint_magnitude(sigma1, sigma2);
  Real tolerance = Real::pow2(-static_cast<long>(prec / 2), prec) * scale * scale;
  const std::size_t n = sigma1.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Real det = abs(slot_determinant(sigma1, sigma2, i, j));
      if (det < tolerance) {
        throw DeterminantCollapse("slots " + std::to_string(i) + " and " + std::to_string(j) +
                                  " are nearly proportional: |det| = " + det.to_scientific(6));
      }
    }
  }
}

UpdateTriple2 solve_linearized2(const Spectrum& sigma1, const Spectrum& sigma2, const Matrix& Z1,
                                const Matrix& Z2) {
  require_same_size(Z1, Z2, "solve_linearized2");
  const std::size_t n = Z1.n();
  require_slots(sigma1, sigma2, n, "solve_linearized2");
  const Precision prec = std::max({Z1.precision(), Z2.precision(), sigma1.precision(), sigma2.precision()});
  require_non_proportional(sigma1, sigma2, prec);

  const bool real = Z1.is_real() && Z2.is_real() && sigma1.is_real() && sigma2.is_real();
  const Field field = real ? Field::real : Field::complex;
  Matrix X(n, prec, field);
  Matrix Y(n, prec, field);
  // σ1_i x + σ1_j y = −z1, σ2_i x + σ2_j y = −z2 by Cramer's rule. The
  // determinant flips sign under i <-> j, so one reciprocal serves both entries.
  if (real) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Real& a1 = sigma1[i].re;
        const Real& b1 = sigma1[j].re;
        const Real& a2 = sigma2[i].re;
        const Real& b2 = sigma2[j].re;
        const Real inv = Real(1.0, prec) / (a1 * b2 - b1 * a2);
        X.re(i, j) = (b1 * Z2.re(i, j) - Z1.re(i, j) * b2) * inv;
        Y.re(i, j) = (Z1.re(i, j) * a2 - a1 * Z2.re(i, j)) * inv;
        X.re(j, i) = (Z1.re(j, i) * a2 - a1 * Z2.re(j, i)) * inv;
        Y.re(j, i) = (b1 * Z2.re(j, i) - Z1.re(j, i) * b2) * inv;
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex inv = Complex(Real(1.0, prec)) / (sigma1[i] * sigma2[j] - sigma1[j] * sigma2[i]);
        const Complex z1 = Z1.at(i, j), z2 = Z2.at(i, j);
        X.set(i, j, (sigma1[j] * z2 - z1 * sigma2[j]) * inv);
        Y.set(i, j, (z1 * sigma2[i] - sigma1[i] * z2) * inv);
        const Complex w1 = Z1.at(j, i), w2 = Z2.at(j, i);
        X.set(j, i, (w1 * sigma2[i] - sigma1[i] * w2) * inv);
        Y.set(j, i, (sigma1[j] * w2 - w1 * sigma2[j]) * inv);
      }
    }
  }
  return {std::move(X), std::move(Y), Spectrum(Z1.diagonal_entries()), Spectrum(Z2.diagonal_entries())};
}

CertificateReport certificate2_of(const SimDiag2State& state, double threshold) {
  const Precision prec = state.Z1.precision();
  require_non_proportional(state.sigma1, state.sigma2, prec);
  CertificateReport report;
  report.epsilon = state.residual();
  report.kappa = max(Real(1.0, prec), max_inverse_determinant(state.sigma1, state.sigma2, prec));
  report.K = joint_magnitude(state.sigma1, state.sigma2);
  report.u = report.epsilon * 4.0 * report.kappa * report.kappa * report.K * report.K * report.K;
  report.threshold = Real(threshold, prec);
  report.satisfied = report.u <= report.threshold;
  return report;
}

CertificateReport certificate2(const Matrix& M1, const Matrix& M2, const Matrix& E, const Matrix& F,
                               const Spectrum& sigma1, const Spectrum& sigma2, double threshold) {
  return certificate2_of(SimDiag2State::from(M1, M2, E, F, sigma1, sigma2), threshold);
}

SimDiag2State simdiag2_step(const Matrix& M1, const Matrix& M2, const SimDiag2State& state) {
  UpdateTriple2 update = solve_linearized2(state.sigma1, state.sigma2, state.Z1, state.Z2);
  Matrix E = state.E * plus_identity(update.X);
  Matrix F = plus_identity(update.Y) * state.F;
  Spectrum sigma1 = state.sigma1 + update.S1;
  Spectrum sigma2 = state.sigma2 + update.S2;
  require_non_proportional(sigma1, sigma2, E.precision());
  return SimDiag2State::from(M1, M2, std::move(E), std::move(F), std::move(sigma1), std::move(sigma2));
}

SimDiag2SolveResult simdiag2_solve(const Matrix& M1, const Matrix& M2, const Matrix& E0, const Matrix& F0,
                                   const Spectrum& sigma1, const Spectrum& sigma2,
                                   const SimDiag2SolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const Precision prec = std::max({M1.precision(), M2.precision(), E0.precision(), F0.precision(),
                                   sigma1.precision(), sigma2.precision()});
  const Matrix M1w = M1.with_precision(prec);
  const Matrix M2w = M2.with_precision(prec);
  require_non_proportional(sigma1.with_precision(prec), sigma2.with_precision(prec), prec);

  SimDiag2SolveResult result{SimDiag2State::from(M1w, M2w, E0.with_precision(prec), F0.with_precision(prec),
                                                 sigma1.with_precision(prec), sigma2.with_precision(prec)),
                             IterationTrace{}, CertificateReport{}, SolveStatus::max_iterations, false};
  const bool real = M1.is_real() && M2.is_real() && E0.is_real() && F0.is_real() && sigma1.is_real() &&
                    sigma2.is_real();
  result.trace.meta.n = M1.n();
  result.trace.meta.field = std::string(to_string(real ? Field::real : Field::complex));
  result.trace.meta.precision_bits = prec;
  result.trace.meta.solver = "newton_simdiag2";

  CertificateReport report = certificate2_of(result.state, options.threshold);
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
    result.state = simdiag2_step(M1w, M2w, result.state);
    report = certificate2_of(result.state, options.threshold);
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
