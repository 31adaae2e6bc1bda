#include "simdiag/bench.hpp"

#include "simdiag/errors.hpp"
#include "simdiag/qr_hybrid.hpp"
#include "simdiag/random.hpp"

namespace simdiag {

namespace {

constexpr int kMaxResamples = 64;

Real power_of_ten(int exponent, Precision prec) {
  Real out(prec);
  mpfr_ui_pow_ui(out.raw(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent), kRound);
  if (exponent >= 0) return out;
  return Real(1.0, prec) / out;
}

// E⁻¹, or nothing when E is singular or its condition exceeds 2^(prec/4).
std::optional<Matrix> well_conditioned_inverse(const Matrix& E) {
  try {
    Matrix inv = inverse(E);
    const Real cond = norm_inf(E) * norm_inf(inv);
    if (cond > Real::pow2(static_cast<long>(E.precision() / 4), E.precision())) return std::nullopt;
    return inv;
  } catch (const SingularMatrix&) {
    return std::nullopt;
  }
}

Spectrum unit_diagonal(std::size_t n, Field field, NormalSampler& sampler, Precision prec) {
  Spectrum d = random_spectrum(n, field, sampler, prec);
  Real total(prec);
  for (std::size_t i = 0; i < n; ++i) total += norm(d[i]);
  const Real length = sqrt(total);
  for (std::size_t i = 0; i < n; ++i) d[i] = d[i] / length;
  return d;
}

Spectrum perturbed(const Spectrum& s, const Spectrum& direction, const Real& scale) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[i] + direction[i] * scale);
  return Spectrum(std::move(out));
}

TraceMeta meta_for(const RunConfig& cfg, std::string solver) {
  TraceMeta meta;
  meta.n = cfg.n;
  meta.field = std::string(to_string(cfg.field));
  meta.perturb_exp = cfg.perturb_exp;
  meta.seed = cfg.seed;
  meta.precision_bits = cfg.precision_bits;
  meta.solver = std::move(solver);
  return meta;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InvalidArgument("unknown format '" + std::string(text) + "' (expected csv or json)");
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("n must be at least 2");
  if (cfg.precision_bits < kMinPrecision) throw InvalidArgument("precision must be at least 24 bits");
  if (cfg.perturb_exp < 0) throw InvalidArgument("perturbation exponent must be nonnegative");
  if (cfg.iters < 0) throw InvalidArgument("iters must be nonnegative");
}

Test1Instance make_test1(const RunConfig& cfg) {
  validate(cfg);
  const Precision prec = cfg.precision_bits;
  for (int offset = 0; offset < kMaxResamples; ++offset) {
    NormalSampler sampler(cfg.seed + static_cast<std::uint64_t>(offset));
    Matrix E = random_gaussian(cfg.n, cfg.field, sampler, false, prec);
    Spectrum sigma = random_spectrum(cfg.n, cfg.field, sampler, prec);
    Matrix A = random_gaussian(cfg.n, cfg.field, sampler, true, prec);
    auto E_inv = well_conditioned_inverse(E);
    if (!E_inv) continue;
    Matrix M = scale_columns(E, sigma.values()) * *E_inv + A * power_of_ten(-cfg.perturb_exp, prec);
    return {std::move(M), std::move(E), std::move(*E_inv), std::move(sigma), offset};
  }
  throw SingularMatrix("test1: no well-conditioned draw within the resample budget");
}

Test2Instance make_test2(const RunConfig& cfg) {
  validate(cfg);
  const Precision prec = cfg.precision_bits;
  const Real scale = power_of_ten(-cfg.perturb_exp, prec);
  for (int offset = 0; offset < kMaxResamples; ++offset) {
    NormalSampler sampler(cfg.seed + static_cast<std::uint64_t>(offset));
    Matrix E = random_gaussian(cfg.n, cfg.field, sampler, false, prec);
    Matrix F = random_gaussian(cfg.n, cfg.field, sampler, false, prec);
    Spectrum sigma1 = random_spectrum(cfg.n, cfg.field, sampler, prec);
    Spectrum sigma2 = random_spectrum(cfg.n, cfg.field, sampler, prec);
    Matrix A = random_gaussian(cfg.n, cfg.field, sampler, true, prec);
    Matrix B = random_gaussian(cfg.n, cfg.field, sampler, true, prec);
    Spectrum C = unit_diagonal(cfg.n, cfg.field, sampler, prec);
    Spectrum D = unit_diagonal(cfg.n, cfg.field, sampler, prec);
    auto E_inv = well_conditioned_inverse(E);
    auto F_inv = well_conditioned_inverse(F);
    if (!E_inv || !F_inv) continue;
    Matrix M1 = scale_columns(*F_inv, sigma1.values()) * *E_inv;
    Matrix M2 = scale_columns(*F_inv, sigma2.values()) * *E_inv;
    Test2Instance inst{std::move(M1),
                       std::move(M2),
                       E + A * scale,
                       F + B * scale,
                       perturbed(sigma1, C, scale),
                       perturbed(sigma2, D, scale),
                       std::move(sigma1),
                       std::move(sigma2),
                       offset};
    return inst;
  }
  throw SingularMatrix("test2: no well-conditioned draw within the resample budget");
}

TestRun run_test1(const RunConfig& cfg) {
  Test1Instance inst = make_test1(cfg);
  DiagSolveOptions options;
  options.max_iter = cfg.iters;
  if (cfg.cert_threshold) options.threshold = *cfg.cert_threshold;
  DiagSolveResult solved = diag_solve(inst.M, inst.E, inst.E_inv, inst.sigma, options);
  TestRun run{std::move(solved.trace), solved.status, solved.certified, inst.resample_offset};
  run.trace.meta = meta_for(cfg, "test1");
  return run;
}

TestRun run_test2(const RunConfig& cfg) {
  Test2Instance inst = make_test2(cfg);
  SimDiag2SolveOptions options;
  options.max_iter = cfg.iters;
  if (cfg.cert_threshold) options.threshold = *cfg.cert_threshold;
  SimDiag2SolveResult solved =
      simdiag2_solve(inst.M1, inst.M2, inst.E0, inst.F0, inst.sigma1_0, inst.sigma2_0, options);
  TestRun run{std::move(solved.trace), solved.status, solved.certified, inst.resample_offset};
  run.trace.meta = meta_for(cfg, "test2");
  return run;
}

std::vector<QRCompareRow> run_qr_compare(const QRCompareConfig& cfg) {
  if (cfg.min_n < 1 || cfg.max_n < cfg.min_n) throw InvalidArgument("qr-compare: need 1 <= min_n <= max_n");
  if (cfg.trials < 1) throw InvalidArgument("qr-compare: trials must be positive");
  if (cfg.max_iter < 1) throw InvalidArgument("qr-compare: max_iter must be positive");
  if (!(cfg.threshold > 0.0)) throw InvalidArgument("qr-compare: threshold must be positive");
  std::vector<QRCompareRow> rows;
  NormalSampler sampler(cfg.seed);
  for (std::size_t n = cfg.min_n; n <= cfg.max_n; ++n) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const Matrix G = random_gaussian(n, Field::real, sampler, false, cfg.precision_bits);
      const Matrix A = G * transpose(G);
      const QRBasicResult alg1 = qr_basic(A, cfg.threshold, cfg.max_iter);
      const QRNewtonTestResult alg3 = qr_with_newton_test(A, A, cfg.max_iter, cfg.cert_threshold);
      rows.push_back({n, trial, alg1.status == SolveStatus::converged ? alg1.iterations : -1,
                      alg3.status == SolveStatus::converged ? alg3.iterations : -1});
    }
  }
  return rows;
}

RefineRootsResult run_wilkinson(const WilkinsonConfig& cfg) {
  if (cfg.n < 1) throw InvalidArgument("wilkinson: n must be at least 1");
  RefineRootsOptions options;
  options.route = cfg.route;
  options.prec = cfg.precision_bits;
  options.iters = cfg.iters;
  RefineRootsResult result = refine_roots(wilkinson_poly(cfg.n), options);
  result.trace.meta.solver = "wilkinson/" + std::string(to_string(cfg.route));
  return result;
}

void write_trace(std::ostream& out, const IterationTrace& trace, OutputFormat format, bool include_wall_time) {
  if (format == OutputFormat::csv) {
    write_csv(out, trace);
  } else {
    out << to_json(trace, include_wall_time).dump(2) << '\n';
  }
}

void write_qr_compare(std::ostream& out, const std::vector<QRCompareRow>& rows, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "n,trial,iters_alg1,iters_alg3\n";
    for (const auto& r : rows) out << r.n << ',' << r.trial << ',' << r.iters_alg1 << ',' << r.iters_alg3 << '\n';
    return;
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n}, {"trial", r.trial}, {"iters_alg1", r.iters_alg1}, {"iters_alg3", r.iters_alg3}});
  }
  out << j.dump(2) << '\n';
}

void write_roots(std::ostream& out, const RefineRootsResult& result, OutputFormat format, bool include_wall_time) {
  const int digits = trace_digits(result.trace.meta.precision_bits);
  if (format == OutputFormat::csv) {
    write_csv(out, result.trace);
    out << "\nslot,root_re,root_im\n";
    for (std::size_t k = 0; k < result.roots.size(); ++k) {
      out << k + 1 << ',' << result.roots[k].re.to_scientific(digits) << ','
          << result.roots[k].im.to_scientific(digits) << '\n';
    }
    return;
  }
  nlohmann::json j = to_json(result.trace, include_wall_time);
  nlohmann::json roots = nlohmann::json::array();
  for (std::size_t k = 0; k < result.roots.size(); ++k) {
    roots.push_back({result.roots[k].re.to_scientific(digits), result.roots[k].im.to_scientific(digits)});
  }
  j["roots"] = std::move(roots);
  j["status"] = std::string(to_string(result.status));
  j["certified"] = result.certified;
  out << j.dump(2) << '\n';
}

}  // namespace simdiag
