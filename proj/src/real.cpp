#include "simdiag/real.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

Precision checked(Precision prec) {
  if (prec < kMinPrecision) {
    throw InvalidArgument("precision must be at least " + std::to_string(kMinPrecision) + " bits, got " +
                          std::to_string(prec));
  }
  return prec;
}

Precision widest(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

void check_finite(mpfr_srcptr x, const char* where) {
  if (!mpfr_number_p(x)) {
    throw NonFiniteValue(std::string("non-finite value produced in ") + where);
  }
}

Real::Real(Precision prec) {
  mpfr_init2(value_, checked(prec));
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, Precision prec) : Real(prec) {
  mpfr_set_d(value_, value, kRound);
  check_finite(value_, "Real(double)");
}

Real::Real(std::int64_t value, Precision prec) : Real(prec) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpfr_set_si(value_, static_cast<long>(value), kRound);
}

Real Real::parse(std::string_view text, Precision prec) {
  Real out(prec);
  std::string buffer(text);
  // strtofr accepts leading blanks; the format does not.
  if (buffer.empty() || std::isspace(static_cast<unsigned char>(buffer.front()))) {
    throw ParseError("malformed decimal literal '" + buffer + "'");
  }
  char* end = nullptr;
  mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, kRound);
  if (end == buffer.c_str() || *end != '\0') {
    throw ParseError("malformed decimal literal '" + buffer + "'");
  }
  if (!mpfr_number_p(out.value_)) {
    throw ParseError("non-finite decimal literal '" + buffer + "'");
  }
  return out;
}

Real Real::pow2(long exponent, Precision prec) {
  Real out(prec);
  mpfr_set_ui_2exp(out.value_, 1, exponent, kRound);
  return out;
}

Real Real::pi(Precision prec) {
  Real out(prec);
  mpfr_const_pi(out.value_, kRound);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  // Steal the limb storage; the moved-from object is left without storage and
  // only supports destruction or assignment.
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (value_->_mpfr_d == nullptr) {
    mpfr_init2(value_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(value_, other.precision());
  }
  mpfr_set(value_, other.value_, kRound);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  release();
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
  return *this;
}

Real::~Real() { release(); }

void Real::release() noexcept {
  if (value_->_mpfr_d != nullptr) {
    mpfr_clear(value_);
    value_->_mpfr_d = nullptr;
  }
}

Real Real::with_precision(Precision prec) const {
  Real out(prec);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

std::string Real::to_string() const {
  if (mpfr_zero_p(value_)) return mpfr_signbit(value_) ? "-0" : "0";
  mpfr_exp_t exponent = 0;
  char* digits = mpfr_get_str(nullptr, &exponent, 10, 0, value_, kRound);
  std::string text(digits);
  mpfr_free_str(digits);
  bool negative = text.front() == '-';
  if (negative) text.erase(0, 1);
  while (text.size() > 1 && text.back() == '0') text.pop_back();
  std::string out = negative ? "-" : "";
  out += text.substr(0, 1);
  if (text.size() > 1) out += "." + text.substr(1);
  long e10 = static_cast<long>(exponent) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

std::string Real::to_scientific(int digits) const {
  digits = std::max(digits, 1);
  char* buffer = nullptr;
  std::string format = "%." + std::to_string(digits - 1) + "Re";
  if (mpfr_asprintf(&buffer, format.c_str(), value_) < 0) {
    throw Error("mpfr_asprintf failed");
  }
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_add(value_, value_, rhs.value_, kRound);
  check_finite(value_, "operator+=");
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_sub(value_, value_, rhs.value_, kRound);
  check_finite(value_, "operator-=");
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_mul(value_, value_, rhs.value_, kRound);
  check_finite(value_, "operator*=");
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_div(value_, value_, rhs.value_, kRound);
  check_finite(value_, "operator/=");
  return *this;
}

Real operator-(const Real& x) {
  Real out(x.precision());
  mpfr_neg(out.value_, x.value_, kRound);
  return out;
}

Real operator+(const Real& a, const Real& b) {
  Real out(widest(a, b));
  mpfr_add(out.value_, a.value_, b.value_, kRound);
  check_finite(out.value_, "operator+");
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(widest(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, kRound);
  check_finite(out.value_, "operator-");
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(widest(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, kRound);
  check_finite(out.value_, "operator*");
  return out;
}

Real operator/(const Real& a, const Real& b) {
  Real out(widest(a, b));
  mpfr_div(out.value_, a.value_, b.value_, kRound);
  check_finite(out.value_, "operator/");
  return out;
}

Real operator*(const Real& a, double b) {
  Real out(a.precision());
  mpfr_mul_d(out.value_, a.value_, b, kRound);
  check_finite(out.value_, "operator*(double)");
  return out;
}

Real operator/(const Real& a, double b) {
  Real out(a.precision());
  mpfr_div_d(out.value_, a.value_, b, kRound);
  check_finite(out.value_, "operator/(double)");
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b) {
  int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.raw(), x.raw(), kRound);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.precision());
  mpfr_sqrt(out.raw(), x.raw(), kRound);
  check_finite(out.raw(), "sqrt");
  return out;
}

Real hypot(const Real& a, const Real& b) {
  Real out(widest(a, b));
  mpfr_hypot(out.raw(), a.raw(), b.raw(), kRound);
  check_finite(out.raw(), "hypot");
  return out;
}

Real log10(const Real& x) {
  Real out(x.precision());
  mpfr_log10(out.raw(), x.raw(), kRound);
  check_finite(out.raw(), "log10");
  return out;
}

Real max(const Real& a, const Real& b) { return a >= b ? a.with_precision(widest(a, b)) : b.with_precision(widest(a, b)); }

Real min(const Real& a, const Real& b) { return a <= b ? a.with_precision(widest(a, b)) : b.with_precision(widest(a, b)); }

std::ostream& operator<<(std::ostream& out, const Real& x) { return out << x.to_string(); }

}  // namespace simdiag
