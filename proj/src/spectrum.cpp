#include "simdiag/spectrum.hpp"

#include <algorithm>
#include <limits>

#include "simdiag/errors.hpp"

namespace simdiag {

Spectrum Spectrum::from_reals(const std::vector<double>& values, Precision prec) {
  std::vector<Complex> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v, 0.0, prec);
  return Spectrum(std::move(out));
}

Spectrum Spectrum::roots_of_unity(std::size_t n, Precision prec) {
  std::vector<Complex> out;
  out.reserve(n);
  const Real two_pi = Real::pi(prec) * Real(2, prec);
  for (std::size_t k = 0; k < n; ++k) {
    Real angle = two_pi * Real(static_cast<std::int64_t>(k), prec) / Real(static_cast<std::int64_t>(n), prec);
    out.push_back(k == 0 ? Complex(1.0, 0.0, prec) : Complex::unit_phase(angle, prec));
  }
  return Spectrum(std::move(out));
}

Precision Spectrum::precision() const {
  Precision prec = kMinPrecision;
  for (const auto& v : values_) prec = std::max(prec, v.precision());
  return prec;
}

bool Spectrum::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v.is_real(); });
}

Matrix Spectrum::to_matrix() const { return Matrix::diagonal(values_, precision()); }

Spectrum Spectrum::with_precision(Precision prec) const {
  std::vector<Complex> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.with_precision(prec));
  return Spectrum(std::move(out));
}

Real Spectrum::min_gap() const {
  if (values_.size() < 2) throw InvalidArgument("min_gap needs at least two slots");
  Real best = abs(values_[0] - values_[1]);
  for (std::size_t i = 0; i < values_.size(); ++i)
    for (std::size_t j = i + 1; j < values_.size(); ++j) {
      Real gap = abs(values_[i] - values_[j]);
      if (gap < best) best = std::move(gap);
    }
  return best;
}

Real Spectrum::max_abs() const {
  Real best(precision());
  for (const auto& v : values_) {
    Real mod = abs(v);
    if (mod > best) best = std::move(mod);
  }
  return best;
}

Spectrum operator+(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) throw DimensionMismatch("spectrum addition: size mismatch");
  std::vector<Complex> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + b[k]);
  return Spectrum(std::move(out));
}

Spectrum operator-(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) throw DimensionMismatch("spectrum subtraction: size mismatch");
  std::vector<Complex> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] - b[k]);
  return Spectrum(std::move(out));
}

Real distance(const Spectrum& a, const Spectrum& b) {
  Spectrum diff = a - b;
  return diff.max_abs();
}

std::vector<std::size_t> match_slots(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) throw DimensionMismatch("match_slots: size mismatch");
  const std::size_t n = a.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> assignment(n, kNone);
  std::vector<bool> taken(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t best_i = kNone;
    std::size_t best_j = kNone;
    Real best(a.precision());
    for (std::size_t i = 0; i < n; ++i) {
      if (assignment[i] != kNone) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        Real d = abs(a[i] - b[j]);
        if (best_i == kNone || d < best) {
          best = std::move(d);
          best_i = i;
          best_j = j;
        }
      }
    }
    assignment[best_i] = best_j;
    taken[best_j] = true;
  }
  return assignment;
}

}  // namespace simdiag
