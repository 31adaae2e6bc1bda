#pragma once

#include <cstddef>
#include <vector>

#include "simdiag/complex.hpp"
#include "simdiag/matrix.hpp"

namespace simdiag {

/// Ordered diagonal σ_1..σ_n. Slot order is meaningful and never permuted.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<Complex> values) : values_(std::move(values)) {}
  Spectrum(std::size_t n, Precision prec) : values_(n, Complex(prec)) {}

  static Spectrum from_reals(const std::vector<double>& values, Precision prec);
  /// Diagonal of `m`.
  static Spectrum diagonal_of(const Matrix& m) { return Spectrum(m.diagonal_entries()); }
  /// (1, w, ..., w^{n-1}) with w = e^{2iπ/n}, each slot evaluated from the exact angle 2πk/n.
  static Spectrum roots_of_unity(std::size_t n, Precision prec);

  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t k) const { return values_[k]; }
  Complex& operator[](std::size_t k) { return values_[k]; }
  const std::vector<Complex>& values() const { return values_; }
  Precision precision() const;
  bool is_real() const;

  Matrix to_matrix() const;
  Spectrum with_precision(Precision prec) const;

  /// min_{i≠j} |σ_i − σ_j|. Requires at least two slots.
  Real min_gap() const;
  /// max_i |σ_i|.
  Real max_abs() const;

  friend Spectrum operator+(const Spectrum& a, const Spectrum& b);
  friend Spectrum operator-(const Spectrum& a, const Spectrum& b);

 private:
  std::vector<Complex> values_;
};

/// Max-norm of the difference ‖a − b‖ (infinity norm of the diagonal matrix).
Real distance(const Spectrum& a, const Spectrum& b);

/// Greedy nearest-value slot matching: result[k] is the slot of `b` assigned to slot k of `a`.
std::vector<std::size_t> match_slots(const Spectrum& a, const Spectrum& b);

}  // namespace simdiag
