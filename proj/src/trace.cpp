#include "simdiag/trace.hpp"

#include <algorithm>

namespace simdiag {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iterations:
      return "max_iterations";
    case SolveStatus::diverging:
      return "diverging";
  }
  return "unknown";
}

void IterationTrace::append(std::optional<Real> certificate, Real err_res, double wall_time) {
  rows.push_back({static_cast<int>(rows.size()) + 1, std::move(certificate), std::move(err_res), wall_time});
}

int trace_digits(Precision prec) { return std::max<int>(6, static_cast<int>(prec / 32)); }

void write_csv(std::ostream& out, const IterationTrace& trace) {
  const int digits = trace_digits(trace.meta.precision_bits);
  out << "iteration,certificate,err_res\n";
  for (const auto& row : trace.rows) {
    out << row.iteration << ',';
    if (row.certificate) out << row.certificate->to_scientific(digits);
    out << ',' << row.err_res.to_scientific(digits) << '\n';
  }
}

nlohmann::json to_json(const IterationTrace& trace, bool include_wall_time) {
  const int digits = trace_digits(trace.meta.precision_bits);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : trace.rows) {
    nlohmann::json r = {{"iteration", row.iteration},
                        {"certificate", row.certificate ? nlohmann::json(row.certificate->to_scientific(digits))
                                                        : nlohmann::json(nullptr)},
                        {"err_res", row.err_res.to_scientific(digits)}};
    if (include_wall_time) r["wall_time"] = row.wall_time;
    rows.push_back(std::move(r));
  }
  nlohmann::json meta = {{"n", trace.meta.n},
                         {"field", trace.meta.field},
                         {"precision_bits", trace.meta.precision_bits},
                         {"solver", trace.meta.solver}};
  meta["perturb_exp"] = trace.meta.perturb_exp ? nlohmann::json(*trace.meta.perturb_exp) : nlohmann::json(nullptr);
  meta["seed"] = trace.meta.seed ? nlohmann::json(*trace.meta.seed) : nlohmann::json(nullptr);
  return {{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

bool digit_doubling(const IterationTrace& trace, double factor, const Real& floor) {
  const double floor_log = floor.is_zero() ? -1e300 : log10(floor).to_double();
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    const Real& now = trace.rows[k].err_res;
    const Real& next = trace.rows[k + 1].err_res;
    if (now > 1e-4) continue;
    if (now.is_zero()) {
      if (!next.is_zero()) return false;
      continue;
    }
    const double predicted = factor * log10(now).to_double();
    if (predicted < floor_log) continue;
    if (next.is_zero()) continue;
    if (log10(next).to_double() > predicted) return false;
  }
  return true;
}

}  // namespace simdiag
