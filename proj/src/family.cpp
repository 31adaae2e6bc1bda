#include "simdiag/family.hpp"

#include <algorithm>

#include "simdiag/errors.hpp"
#include "simdiag/newton_simdiag2.hpp"

namespace simdiag {

Pencil::Pencil(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InvalidArgument("pencil must hold at least one matrix");
  for (const auto& m : matrices_) require_same_size(matrices_.front(), m, "pencil");
}

Precision Pencil::precision() const {
  Precision prec = kMinPrecision;
  for (const auto& m : matrices_) prec = std::max(prec, m.precision());
  return prec;
}

Spectrum rayleigh_extract(const Matrix& M, const Matrix& E) {
  require_same_size(M, E, "rayleigh_extract");
  const std::size_t n = E.n();
  const Matrix ME = M * E;
  const Precision prec = ME.precision();
  std::vector<Complex> slots;
  slots.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex numerator(prec);
    Real denominator(prec);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e = E.at(i, k);
      numerator += conj(e) * ME.at(i, k);
      denominator += norm(e);
    }
    if (denominator.is_zero()) {
      throw InvalidArgument("rayleigh_extract: column " + std::to_string(k) + " of E is zero");
    }
    slots.push_back(numerator / denominator);
  }
  return Spectrum(std::move(slots));
}

Combination combine_pencil(const Pencil& pencil, const std::vector<Spectrum>& spectra) {
  const std::size_t n = pencil.n();
  const std::size_t p = pencil.size();
  if (spectra.size() != p) throw DimensionMismatch("combine_pencil: need one spectrum per pencil member");
  Precision prec = pencil.precision();
  for (const auto& s : spectra) {
    if (s.size() != n) throw DimensionMismatch("combine_pencil: spectrum size differs from n");
    prec = std::max(prec, s.precision());
  }
  if (p > n) throw RankDeficient("combine_pencil: p > n columns cannot have full column rank");

  const Spectrum target = Spectrum::roots_of_unity(n, prec);
  std::vector<std::vector<Complex>> cols(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j].push_back(spectra[j][i].with_precision(prec));
  }
  std::vector<Complex> rhs;
  for (std::size_t i = 0; i < n; ++i) rhs.push_back(target[i]);
  std::vector<std::size_t> perm(p);
  for (std::size_t j = 0; j < p; ++j) perm[j] = j;
  std::vector<Real> diag(p, Real(prec));

  for (std::size_t k = 0; k < p; ++k) {
    // Pivot: the remaining column with the largest trailing norm.
    std::size_t best = k;
    Real best_norm(-1.0, prec);
    for (std::size_t j = k; j < p; ++j) {
      Real s(prec);
      for (std::size_t i = k; i < n; ++i) s += norm(cols[j][i]);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    std::swap(cols[k], cols[best]);
    std::swap(perm[k], perm[best]);

    auto& x = cols[k];
    const Real length = sqrt(best_norm);
    diag[k] = length;
    if (length.is_zero()) continue;
    const Real x0_abs = abs(x[k]);
    Complex alpha = x0_abs.is_zero() ? Complex(-length) : -(x[k] * (length / x0_abs));
    std::vector<Complex> v(n - k, Complex(prec));
    v[0] = x[k] - alpha;
    Real vtv = norm(v[0]);
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k] = x[i];
      vtv += norm(x[i]);
    }
    const Real beta = Real(2.0, prec) / vtv;
    auto reflect = [&](std::vector<Complex>& y) {
      Complex w(prec);
      for (std::size_t i = k; i < n; ++i) w += conj(v[i - k]) * y[i];
      w = w * beta;
      for (std::size_t i = k; i < n; ++i) y[i] -= v[i - k] * w;
    };
    for (std::size_t j = k + 1; j < p; ++j) reflect(cols[j]);
    reflect(rhs);
    x[k] = alpha;
    for (std::size_t i = k + 1; i < n; ++i) x[i] = Complex(prec);
  }

  const Real tolerance = Real::pow2(-static_cast<long>(prec / 2), prec) * diag[0];
  if (diag[0].is_zero() || diag[p - 1] < tolerance) {
    throw RankDeficient("combine_pencil: stacked spectra are rank deficient (smallest pivot " +
                        diag[p - 1].to_scientific(6) + ")");
  }

  // Back substitution on the leading p×p triangle.
  std::vector<Complex> solution(p, Complex(prec));
  for (std::size_t k = p; k-- > 0;) {
    Complex acc = rhs[k];
    for (std::size_t j = k + 1; j < p; ++j) acc -= cols[j][k] * solution[j];
    solution[k] = acc / cols[k][k];
  }
  std::vector<Complex> alpha(p, Complex(prec));
  for (std::size_t k = 0; k < p; ++k) alpha[perm[k]] = solution[k];

  Real residual(prec);
  for (std::size_t i = 0; i < n; ++i) {
    Complex r = -target[i];
    for (std::size_t j = 0; j < p; ++j) r += alpha[j] * spectra[j][i];
    residual += norm(r);
  }

  Matrix M = pencil[0].with_precision(prec) * alpha[0];
  for (std::size_t j = 1; j < p; ++j) M = M + pencil[j].with_precision(prec) * alpha[j];
  M.demote_if_real();
  return {{std::move(alpha), target, sqrt(residual)}, std::move(M)};
}

FamilyCertificate theorem6_certificate(std::size_t n, const Matrix& F0, const Matrix& M, const Matrix& E0) {
  if (M.n() != n) throw DimensionMismatch("theorem6_certificate: n differs from the matrix size");
  require_same_size(M, E0, "theorem6_certificate");
  require_same_size(M, F0, "theorem6_certificate");
  const Precision prec = std::max({F0.precision(), M.precision(), E0.precision()});
  const Spectrum target = Spectrum::roots_of_unity(n, prec);
  const Matrix FME = F0 * (M * E0);

  FamilyCertificate out;
  CertificateReport& r = out.report;
  r.epsilon = norm_inf(minus_diagonal(FME, target.values()));
  Real one(1.0, prec);
  r.kappa = one;
  if (n >= 2) {
    Real angle = Real::pi(prec) / Real(static_cast<std::int64_t>(n), prec);
    Real s(prec);
    mpfr_sin(s.raw(), angle.raw(), kRound);
    r.kappa = max(one, one / (s * 2.0));
  }
  r.K = one;
  r.u = r.epsilon * Real(static_cast<std::int64_t>(n * n), prec);
  r.threshold = Real(kFamilyCertificateThreshold, prec);
  r.satisfied = r.u <= r.threshold;
  out.inverse_residual = norm_inf(minus_identity(F0 * E0));
  return out;
}

std::string_view to_string(FamilyStrategy strategy) {
  switch (strategy) {
    case FamilyStrategy::subproblem1: return "subproblem1";
    case FamilyStrategy::subproblem2: return "subproblem2";
    case FamilyStrategy::combination: return "combination";
  }
  return "unknown";
}

FamilyStrategy parse_strategy(std::string_view text) {
  if (text == "subproblem1") return FamilyStrategy::subproblem1;
  if (text == "subproblem2") return FamilyStrategy::subproblem2;
  if (text == "combination") return FamilyStrategy::combination;
  throw InvalidArgument("unknown strategy '" + std::string(text) + "'");
}

namespace {

DiagSolveOptions diag_options(const FamilySolveOptions& o) {
  DiagSolveOptions d;
  d.target_residual = o.target_residual;
  d.max_iter = o.max_iter;
  d.stop_at_precision_floor = o.stop_at_precision_floor;
  return d;
}

}  // namespace

FamilySolveResult family_solve(const Pencil& pencil, const Matrix& E0, const Matrix& F0, FamilyStrategy strategy,
                               const FamilySolveOptions& options) {
  require_same_size(pencil[0], E0, "family_solve");
  require_same_size(E0, F0, "family_solve");
  const Precision prec = std::max({pencil.precision(), E0.precision(), F0.precision()});
  const Matrix E = E0.with_precision(prec);
  const Matrix F = F0.with_precision(prec);
  std::vector<Matrix> members;
  for (const auto& m : pencil.matrices()) members.push_back(m.with_precision(prec));
  const std::size_t p = members.size();
  auto start_spectrum = [&](const Matrix& M) { return Spectrum::diagonal_of(F * (M * E)); };

  FamilySolveResult result;
  std::size_t refined = 0;  // leading members whose spectra come from the solver
  switch (strategy) {
    case FamilyStrategy::subproblem1: {
      DiagSolveResult solved = diag_solve(members[0], E, F, start_spectrum(members[0]), diag_options(options));
      result.E = std::move(solved.state.E);
      result.F = std::move(solved.state.F);
      result.spectra.push_back(std::move(solved.state.sigma));
      result.trace = std::move(solved.trace);
      result.status = solved.status;
      result.certified = solved.certified;
      refined = 1;
      break;
    }
    case FamilyStrategy::subproblem2: {
      if (p < 2) throw InvalidArgument("family_solve: subproblem2 needs at least two matrices");
      SimDiag2SolveOptions o;
      o.target_residual = options.target_residual;
      o.max_iter = options.max_iter;
      o.stop_at_precision_floor = options.stop_at_precision_floor;
      SimDiag2SolveResult solved = simdiag2_solve(members[0], members[1], E, F, start_spectrum(members[0]),
                                                  start_spectrum(members[1]), o);
      // The two-matrix system leaves (E, F) free up to diagonal scaling; rescale
      // F so that diag(FE) = I, matching the other strategies.
      std::vector<Complex> inv_scale;
      for (const auto& d : (solved.state.F * solved.state.E).diagonal_entries())
        inv_scale.push_back(Complex(Real(1.0, prec)) / d);
      std::vector<Complex> s1, s2;
      for (std::size_t k = 0; k < inv_scale.size(); ++k) {
        s1.push_back(solved.state.sigma1[k] * inv_scale[k]);
        s2.push_back(solved.state.sigma2[k] * inv_scale[k]);
      }
      result.E = std::move(solved.state.E);
      result.F = scale_rows(inv_scale, solved.state.F);
      result.spectra.emplace_back(std::move(s1));
      result.spectra.emplace_back(std::move(s2));
      result.trace = std::move(solved.trace);
      result.status = solved.status;
      result.certified = solved.certified;
      refined = 2;
      break;
    }
    case FamilyStrategy::combination: {
      std::vector<Spectrum> estimates;
      for (const auto& m : members) estimates.push_back(start_spectrum(m));
      Combination combo = combine_pencil(Pencil(members), estimates);
      result.combination_certificate = theorem6_certificate(combo.M.n(), F, combo.M, E);
      DiagSolveResult solved = diag_solve(combo.M, E, F, start_spectrum(combo.M), diag_options(options));
      result.E = std::move(solved.state.E);
      result.F = std::move(solved.state.F);
      result.trace = std::move(solved.trace);
      result.trace.meta.solver = "family/combination";
      result.status = solved.status;
      result.certified = solved.certified;
      result.combination = std::move(combo);
      break;
    }
  }
  for (std::size_t i = refined; i < p; ++i) result.spectra.push_back(rayleigh_extract(members[i], result.E));
  for (std::size_t i = 0; i < p; ++i) {
    result.residuals.push_back(norm_inf(minus_diagonal(result.F * (members[i] * result.E), result.spectra[i].values())));
  }
  return result;
}

}  // namespace simdiag
