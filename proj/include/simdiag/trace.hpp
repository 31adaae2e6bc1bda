#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simdiag/real.hpp"

namespace simdiag {

/// Outcome of an iterative solve. Non-convergence is reported, not thrown.
enum class SolveStatus { converged, max_iterations, diverging };

std::string_view to_string(SolveStatus status);

/// One evaluated iterate. Row 1 is the starting point, row k the iterate after
/// k - 1 Newton steps.
struct TraceRow {
  int iteration = 0;
  std::optional<Real> certificate;
  Real err_res;
  double wall_time = 0.0;  ///< seconds since the solve started
};

struct TraceMeta {
  std::size_t n = 0;
  std::string field;
  std::optional<int> perturb_exp;
  std::optional<std::uint64_t> seed;
  Precision precision_bits = kDoublePrecision;
  std::string solver;
};

class IterationTrace {
 public:
  TraceMeta meta;
  std::vector<TraceRow> rows;

  void append(std::optional<Real> certificate, Real err_res, double wall_time);
  bool empty() const { return rows.empty(); }
  const TraceRow& back() const { return rows.back(); }
  std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
};

/// Significant digits used when printing trace values at `prec` bits.
int trace_digits(Precision prec);

/// CSV with header `iteration,certificate,err_res`; an absent certificate is an empty field.
void write_csv(std::ostream& out, const IterationTrace& trace);
nlohmann::json to_json(const IterationTrace& trace, bool include_wall_time = true);

/// Whether log10(err_{k+1}) <= factor * log10(err_k) holds for every row pair
/// once err_k <= 1e-4. Pairs whose predicted next error would fall below
/// `floor` are skipped, since rounding at working precision bounds the residual there.
bool digit_doubling(const IterationTrace& trace, double factor, const Real& floor);

}  // namespace simdiag
