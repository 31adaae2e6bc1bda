#include "simdiag/newton_inverse.hpp"

#include <chrono>

namespace simdiag {

InversePairState InversePairState::from(Matrix E, Matrix F) {
  require_same_size(E, F, "inverse pair");
  Matrix Z = minus_identity(F * E);
  return {std::move(E), std::move(F), std::move(Z), 0};
}

InversePairState inverse_step(const InversePairState& state) {
  // I + X with X = −Z/2.
  Matrix multiplier = plus_identity(state.Z * Real(-0.5, state.Z.precision()));
  Matrix E = state.E * multiplier;
  Matrix F = multiplier * state.F;
  InversePairState next = InversePairState::from(std::move(E), std::move(F));
  next.iteration = state.iteration + 1;
  return next;
}

InverseSolveResult inverse_solve(const Matrix& E0, const Matrix& F0, const InverseSolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  InverseSolveResult result{InversePairState::from(E0, F0), {}, SolveStatus::max_iterations, false};
  result.trace.meta.n = E0.n();
  result.trace.meta.field = std::string(to_string(result.state.Z.field()));
  result.trace.meta.precision_bits = result.state.Z.precision();
  result.trace.meta.solver = "newton_inverse";

  Real err = norm_inf(result.state.Z);
  result.certified = err < 0.5;
  result.trace.append(std::nullopt, err, elapsed());

  for (int step = 0;; ++step) {
    if (err <= options.target_residual) {
      result.status = SolveStatus::converged;
      break;
    }
    if (step >= options.max_iter) break;
    result.state = inverse_step(result.state);
    err = norm_inf(result.state.Z);
    result.trace.append(std::nullopt, err, elapsed());
  }
  return result;
}

}  // namespace simdiag
