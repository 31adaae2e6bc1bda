#include "simdiag/complex.hpp"

#include "simdiag/errors.hpp"

namespace simdiag {

Complex Complex::unit_phase(const Real& theta, Precision prec) {
  Complex out(prec);
  Real angle = theta.with_precision(prec);
  mpfr_sin_cos(out.im.raw(), out.re.raw(), angle.raw(), kRound);
  return out;
}

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  *this = *this * rhs;
  return *this;
}

Complex operator-(const Complex& x) { return {-x.re, -x.im}; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }

Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  if (a.im.is_zero() && b.im.is_zero()) {
    return Complex(a.re * b.re);
  }
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }

Complex operator/(const Complex& a, const Complex& b) {
  if (b.is_zero()) throw NonFiniteValue("complex division by zero");
  if (b.im.is_zero()) return a / b.re;
  Real denom = norm(b);
  return {(a.re * b.re + a.im * b.im) / denom, (a.im * b.re - a.re * b.im) / denom};
}

Complex operator/(const Complex& a, const Real& b) {
  if (b.is_zero()) throw NonFiniteValue("complex division by zero");
  return {a.re / b, a.im / b};
}

Complex conj(const Complex& x) { return {x.re, -x.im}; }

Real abs(const Complex& x) { return hypot(x.re, x.im); }

Real norm(const Complex& x) { return x.re * x.re + x.im * x.im; }

std::ostream& operator<<(std::ostream& out, const Complex& x) {
  out << x.re;
  if (!x.im.is_zero()) out << (x.im.sign() < 0 ? " - " : " + ") << abs(x.im) << "i";
  return out;
}

}  // namespace simdiag
