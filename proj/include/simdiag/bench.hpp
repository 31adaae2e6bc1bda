#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simdiag/matrix.hpp"
#include "simdiag/newton_diag.hpp"
#include "simdiag/newton_simdiag2.hpp"
#include "simdiag/poly_eigen.hpp"
#include "simdiag/trace.hpp"

namespace simdiag {

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view text);

/// Settings shared by the experiment runners. Fields irrelevant to a runner are ignored.
struct RunConfig {
  std::size_t n = 10;
  int perturb_exp = 6;
  Field field = Field::real;
  std::uint64_t seed = 0;
  Precision precision_bits = 1024;
  int iters = 7;
  std::optional<double> cert_threshold;  ///< default: the solver's own constant
  OutputFormat format = OutputFormat::csv;
};

/// Throws InvalidArgument unless n ≥ 2, precision ≥ 24, e ≥ 0 and iters ≥ 0.
void validate(const RunConfig& cfg);

/// Randomly drawn Test1 instance: M = EΣE⁻¹ + 10^−e A with ‖A‖_F = 1.
struct Test1Instance {
  Matrix M;
  Matrix E;
  Matrix E_inv;
  Spectrum sigma;
  int resample_offset = 0;  ///< seed offset used after rejecting ill-conditioned draws
};

/// Test2 instance: M_k = F⁻¹Σ_kE⁻¹ and a start perturbed by 10^−e.
struct Test2Instance {
  Matrix M1;
  Matrix M2;
  Matrix E0;
  Matrix F0;
  Spectrum sigma1_0;
  Spectrum sigma2_0;
  Spectrum sigma1;  ///< exact spectra of the construction
  Spectrum sigma2;
  int resample_offset = 0;
};

Test1Instance make_test1(const RunConfig& cfg);
Test2Instance make_test2(const RunConfig& cfg);

struct TestRun {
  IterationTrace trace;
  SolveStatus status = SolveStatus::max_iterations;
  bool certified = false;
  int resample_offset = 0;
};

/// Test1: diag_solve from (E, E⁻¹, Σ) for cfg.iters steps.
TestRun run_test1(const RunConfig& cfg);
/// Test2: simdiag2_solve from the perturbed start for cfg.iters steps.
TestRun run_test2(const RunConfig& cfg);

struct QRCompareConfig {
  std::size_t min_n = 3;
  std::size_t max_n = 20;
  int trials = 10;
  std::uint64_t seed = 0;
  double threshold = 1e-6;
  double cert_threshold = kDiagCertificateThreshold;
  int max_iter = 20000;
  Precision precision_bits = kDoublePrecision;
};

/// Iteration counts; −1 marks a run that hit max_iter.
struct QRCompareRow {
  std::size_t n = 0;
  int trial = 0;
  int iters_alg1 = 0;
  int iters_alg3 = 0;
};

/// Gaussian G, A = G Gᵗ, compared by plain QR and QR with the Newton test.
std::vector<QRCompareRow> run_qr_compare(const QRCompareConfig& cfg);

struct WilkinsonConfig {
  std::size_t n = 20;
  Precision precision_bits = 1024;
  int iters = 4;
  RootRoute route = RootRoute::arrowhead;
};

RefineRootsResult run_wilkinson(const WilkinsonConfig& cfg);

void write_trace(std::ostream& out, const IterationTrace& trace, OutputFormat format, bool include_wall_time = true);
void write_qr_compare(std::ostream& out, const std::vector<QRCompareRow>& rows, OutputFormat format);
void write_roots(std::ostream& out, const RefineRootsResult& result, OutputFormat format, bool include_wall_time = true);

}  // namespace simdiag
