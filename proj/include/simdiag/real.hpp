#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace simdiag {

using Precision = mpfr_prec_t;

inline constexpr Precision kMinPrecision = 24;
inline constexpr Precision kDoublePrecision = 53;

inline constexpr mpfr_rnd_t kRound = MPFR_RNDN;

/// Owning wrapper around an MPFR floating-point value.
///
/// Every value carries its own precision. Binary operations produce a result at
/// the larger of the two operand precisions, which is equivalent to widening the
/// narrower operand first (widening is exact). All operations round to nearest
/// and throw NonFiniteValue instead of producing NaN or infinity.
class Real {
 public:
  Real() : Real(kDoublePrecision) {}
  explicit Real(Precision prec);
  Real(double value, Precision prec);
  Real(std::int64_t value, Precision prec);
  Real(int value, Precision prec) : Real(static_cast<std::int64_t>(value), prec) {}

  /// Parses a decimal (or integer) literal, rounding to nearest at `prec`.
  static Real parse(std::string_view text, Precision prec);
  /// 2^exponent, exact.
  static Real pow2(long exponent, Precision prec);
  static Real pi(Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return mpfr_get_prec(value_); }
  /// Copy of this value rounded (or exactly widened) to `prec`.
  Real with_precision(Precision prec) const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, kRound); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Shortest decimal string that reads back to the identical value at this precision.
  std::string to_string() const;
  /// Scientific notation with `digits` significant digits, e.g. "1.2345e-17".
  std::string to_scientific(int digits) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator-(const Real& x);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, double b);
  friend Real operator*(double a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, double b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  void release() noexcept;

  mpfr_t value_;
};

/// Throws NonFiniteValue when `x` is NaN or infinite.
void check_finite(mpfr_srcptr x, const char* where);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real hypot(const Real& a, const Real& b);
Real log10(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& out, const Real& x);

}  // namespace simdiag
