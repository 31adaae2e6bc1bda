#pragma once

#include <algorithm>
#include <ostream>
#include <utility>

#include "simdiag/real.hpp"

namespace simdiag {

/// Complex scalar with independent MPFR real and imaginary parts.
struct Complex {
  Real re;
  Real im;

  Complex() : Complex(kDoublePrecision) {}
  explicit Complex(Precision prec) : re(prec), im(prec) {}
  Complex(Real real_part, Real imag_part) : re(std::move(real_part)), im(std::move(imag_part)) {}
  explicit Complex(const Real& real_part) : re(real_part), im(real_part.precision()) {}
  Complex(double real_part, double imag_part, Precision prec) : re(real_part, prec), im(imag_part, prec) {}

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  bool is_real() const { return im.is_zero(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Complex with_precision(Precision prec) const { return {re.with_precision(prec), im.with_precision(prec)}; }

  /// e^{i theta} at precision `prec`.
  static Complex unit_phase(const Real& theta, Precision prec);

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Complex operator-(const Complex& x);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);

Complex conj(const Complex& x);
/// Modulus |x|.
Real abs(const Complex& x);
/// Squared modulus |x|^2.
Real norm(const Complex& x);

std::ostream& operator<<(std::ostream& out, const Complex& x);

}  // namespace simdiag
