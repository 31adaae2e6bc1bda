#include "simdiag/matrix.hpp"

#include <algorithm>
#include <string>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

/// RAII block of scratch MPFR registers for the hand-written kernels.
class Scratch {
 public:
  Scratch(std::size_t count, Precision prec) : regs_(count) {
    for (auto& r : regs_) mpfr_init2(r, prec);
  }
  ~Scratch() {
    for (auto& r : regs_) mpfr_clear(r);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_ptr operator[](std::size_t k) { return regs_[k]; }

 private:
  std::vector<mpfr_t> regs_;
};

/// c += a * b for real n x n row-major arrays; zero entries of `a` are skipped.
void accumulate_product(std::span<const Real> a, std::span<const Real> b, std::span<Real> c, std::size_t n,
                        Precision prec) {
  Scratch s(1, prec);
  for (std::size_t i = 0; i < n; ++i) {
    Real* crow = c.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      mpfr_srcptr aik = a[i * n + k].raw();
      if (mpfr_zero_p(aik)) continue;
      const Real* brow = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        mpfr_mul(s[0], aik, brow[j].raw(), kRound);
        mpfr_add(crow[j].raw(), crow[j].raw(), s[0], kRound);
      }
    }
  }
}

std::vector<Real> zeros(std::size_t count, Precision prec) { return std::vector<Real>(count, Real(prec)); }

std::vector<Real> elementwise_sum(std::span<const Real> a, std::span<const Real> b, Precision prec) {
  std::vector<Real> out = zeros(a.size(), prec);
  for (std::size_t k = 0; k < a.size(); ++k) mpfr_add(out[k].raw(), a[k].raw(), b[k].raw(), kRound);
  return out;
}

/// Dense LU factorization with partial pivoting, kept in raw MPFR form.
struct LuFactors {
  std::size_t n;
  bool complex;
  std::vector<Real> re;
  std::vector<Real> im;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

LuFactors lu_factor(const Matrix& m) {
  const std::size_t n = m.n();
  const Precision prec = m.precision();
  LuFactors lu{n, !m.is_real(), {m.re_data().begin(), m.re_data().end()}, {}, {}, 1, false};
  if (lu.complex) lu.im.assign(m.im_data().begin(), m.im_data().end());
  lu.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) lu.perm[i] = i;

  Scratch s(6, prec);
  auto modulus2 = [&](std::size_t idx, mpfr_ptr out) {
    mpfr_sqr(out, lu.re[idx].raw(), kRound);
    if (lu.complex) {
      mpfr_sqr(s[5], lu.im[idx].raw(), kRound);
      mpfr_add(out, out, s[5], kRound);
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    modulus2(k * n + k, s[0]);
    for (std::size_t i = k + 1; i < n; ++i) {
      modulus2(i * n + k, s[1]);
      if (mpfr_greater_p(s[1], s[0])) {
        mpfr_swap(s[0], s[1]);
        pivot = i;
      }
    }
    if (mpfr_zero_p(s[0])) {
      lu.singular = true;
      return lu;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        mpfr_swap(lu.re[k * n + j].raw(), lu.re[pivot * n + j].raw());
        if (lu.complex) mpfr_swap(lu.im[k * n + j].raw(), lu.im[pivot * n + j].raw());
      }
      std::swap(lu.perm[k], lu.perm[pivot]);
      lu.sign = -lu.sign;
    }
    // s[0] = |pivot|^2; inverse pivot = conj(p) / |p|^2 in (s[1], s[2]).
    mpfr_div(s[1], lu.re[k * n + k].raw(), s[0], kRound);
    if (lu.complex) {
      mpfr_div(s[2], lu.im[k * n + k].raw(), s[0], kRound);
      mpfr_neg(s[2], s[2], kRound);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::size_t ik = i * n + k;
      if (mpfr_zero_p(lu.re[ik].raw()) && (!lu.complex || mpfr_zero_p(lu.im[ik].raw()))) continue;
      // l = a_ik * inv_pivot
      if (lu.complex) {
        mpfr_mul(s[3], lu.re[ik].raw(), s[1], kRound);
        mpfr_mul(s[4], lu.im[ik].raw(), s[2], kRound);
        mpfr_sub(s[3], s[3], s[4], kRound);
        mpfr_mul(s[4], lu.re[ik].raw(), s[2], kRound);
        mpfr_mul(s[5], lu.im[ik].raw(), s[1], kRound);
        mpfr_add(lu.im[ik].raw(), s[4], s[5], kRound);
        mpfr_set(lu.re[ik].raw(), s[3], kRound);
      } else {
        mpfr_mul(lu.re[ik].raw(), lu.re[ik].raw(), s[1], kRound);
      }
      mpfr_srcptr lr = lu.re[ik].raw();
      for (std::size_t j = k + 1; j < n; ++j) {
        const std::size_t kj = k * n + j;
        const std::size_t ij = i * n + j;
        mpfr_mul(s[3], lr, lu.re[kj].raw(), kRound);
        if (lu.complex) {
          mpfr_srcptr li = lu.im[ik].raw();
          mpfr_mul(s[4], li, lu.im[kj].raw(), kRound);
          mpfr_sub(s[3], s[3], s[4], kRound);
          mpfr_mul(s[4], lr, lu.im[kj].raw(), kRound);
          mpfr_mul(s[5], li, lu.re[kj].raw(), kRound);
          mpfr_add(s[4], s[4], s[5], kRound);
          mpfr_sub(lu.im[ij].raw(), lu.im[ij].raw(), s[4], kRound);
        }
        mpfr_sub(lu.re[ij].raw(), lu.re[ij].raw(), s[3], kRound);
      }
    }
  }
  return lu;
}

}  // namespace

std::string_view to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field parse_field(std::string_view text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw ParseError("unknown field '" + std::string(text) + "' (expected real or complex)");
}

Matrix::Matrix(std::size_t n, Precision prec, Field field)
    : n_(n), prec_(prec), re_(zeros(n * n, prec)), zero_(prec) {
  if (field == Field::complex) im_ = zeros(n * n, prec);
}

Matrix Matrix::identity(std::size_t n, Precision prec) {
  Matrix out(n, prec);
  for (std::size_t i = 0; i < n; ++i) mpfr_set_ui(out.re(i, i).raw(), 1, kRound);
  return out;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows, Precision prec) {
  Matrix out(rows.size(), prec);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionMismatch("from_rows: matrix must be square");
    std::size_t j = 0;
    for (double v : row) out.re(i, j++) = Real(v, prec);
    ++i;
  }
  return out;
}

Matrix Matrix::from_doubles(std::size_t n, std::span<const double> re, Precision prec) {
  if (re.size() != n * n) throw DimensionMismatch("from_doubles: expected n*n entries");
  Matrix out(n, prec);
  for (std::size_t k = 0; k < re.size(); ++k) out.re_[k] = Real(re[k], prec);
  return out;
}

Matrix Matrix::from_doubles(std::size_t n, std::span<const double> re, std::span<const double> im, Precision prec) {
  Matrix out = from_doubles(n, re, prec);
  if (im.size() != n * n) throw DimensionMismatch("from_doubles: expected n*n imaginary entries");
  out.promote_to_complex();
  for (std::size_t k = 0; k < im.size(); ++k) out.im_[k] = Real(im[k], prec);
  out.demote_if_real();
  return out;
}

Matrix Matrix::diagonal(std::span<const Complex> values, Precision prec) {
  Matrix out(values.size(), prec);
  for (std::size_t i = 0; i < values.size(); ++i) out.set(i, i, values[i]);
  return out;
}

Real& Matrix::im_mut(std::size_t i, std::size_t j) {
  promote_to_complex();
  return im_[i * n_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, const Complex& value) {
  mpfr_set(re_[i * n_ + j].raw(), value.re.raw(), kRound);
  if (!value.im.is_zero() || !im_.empty()) {
    mpfr_set(im_mut(i, j).raw(), value.im.raw(), kRound);
  }
}

void Matrix::set(std::size_t i, std::size_t j, const Real& value) {
  mpfr_set(re_[i * n_ + j].raw(), value.raw(), kRound);
  if (!im_.empty()) mpfr_set_zero(im_[i * n_ + j].raw(), 1);
}

void Matrix::promote_to_complex() {
  if (im_.empty()) im_ = zeros(n_ * n_, prec_);
}

void Matrix::demote_if_real() {
  if (std::all_of(im_.begin(), im_.end(), [](const Real& x) { return x.is_zero(); })) im_.clear();
}

Matrix Matrix::with_precision(Precision prec) const {
  Matrix out(n_, prec, field());
  for (std::size_t k = 0; k < re_.size(); ++k) mpfr_set(out.re_[k].raw(), re_[k].raw(), kRound);
  for (std::size_t k = 0; k < im_.size(); ++k) mpfr_set(out.im_[k].raw(), im_[k].raw(), kRound);
  return out;
}

std::vector<Complex> Matrix::diagonal_entries() const {
  std::vector<Complex> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(at(i, i));
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) return false;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j)
      if (!(a.re(i, j) == b.re(i, j)) || !(a.im(i, j) == b.im(i, j))) return false;
  return true;
}

void check_finite(const Matrix& m, const char* where) {
  for (const Real& x : m.re_data()) check_finite(x.raw(), where);
  for (const Real& x : m.im_data()) check_finite(x.raw(), where);
}

void require_same_size(const Matrix& a, const Matrix& b, const char* where) {
  if (a.n() != b.n()) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" + std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()) + ")");
  }
}

namespace {

template <typename Op>
Matrix combine(const Matrix& a, const Matrix& b, Op op, const char* where) {
  require_same_size(a, b, where);
  const Precision prec = std::max(a.precision(), b.precision());
  const bool cplx = !a.is_real() || !b.is_real();
  Matrix out(a.n(), prec, cplx ? Field::complex : Field::real);
  auto ore = out.re_data();
  auto are = a.re_data();
  auto bre = b.re_data();
  for (std::size_t k = 0; k < ore.size(); ++k) op(ore[k].raw(), are[k].raw(), bre[k].raw(), kRound);
  if (cplx) {
    auto oim = out.im_data();
    for (std::size_t i = 0; i < a.n(); ++i)
      for (std::size_t j = 0; j < a.n(); ++j)
        op(oim[i * a.n() + j].raw(), a.im(i, j).raw(), b.im(i, j).raw(), kRound);
  }
  check_finite(out, where);
  return out;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, mpfr_add, "matrix addition"); }

Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, mpfr_sub, "matrix subtraction"); }

Matrix operator-(const Matrix& a) {
  Matrix out = a;
  for (Real& x : out.re_data()) mpfr_neg(x.raw(), x.raw(), kRound);
  for (Real& x : out.im_data()) mpfr_neg(x.raw(), x.raw(), kRound);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "matrix product");
  const std::size_t n = a.n();
  const Precision prec = std::max(a.precision(), b.precision());
  if (a.is_real() && b.is_real()) {
    Matrix out(n, prec);
    accumulate_product(a.re_data(), b.re_data(), out.re_data(), n, prec);
    check_finite(out, "matrix product");
    return out;
  }
  Matrix out(n, prec, Field::complex);
  if (a.is_real()) {
    accumulate_product(a.re_data(), b.re_data(), out.re_data(), n, prec);
    accumulate_product(a.re_data(), b.im_data(), out.im_data(), n, prec);
  } else if (b.is_real()) {
    accumulate_product(a.re_data(), b.re_data(), out.re_data(), n, prec);
    accumulate_product(a.im_data(), b.re_data(), out.im_data(), n, prec);
  } else {
    // Three real products: re = ArBr - AiBi, im = (Ar+Ai)(Br+Bi) - ArBr - AiBi.
    std::vector<Real> rr = zeros(n * n, prec);
    std::vector<Real> ii = zeros(n * n, prec);
    accumulate_product(a.re_data(), b.re_data(), rr, n, prec);
    accumulate_product(a.im_data(), b.im_data(), ii, n, prec);
    std::vector<Real> asum = elementwise_sum(a.re_data(), a.im_data(), prec);
    std::vector<Real> bsum = elementwise_sum(b.re_data(), b.im_data(), prec);
    accumulate_product(asum, bsum, out.im_data(), n, prec);
    auto ore = out.re_data();
    auto oim = out.im_data();
    for (std::size_t k = 0; k < n * n; ++k) {
      mpfr_sub(ore[k].raw(), rr[k].raw(), ii[k].raw(), kRound);
      mpfr_sub(oim[k].raw(), oim[k].raw(), rr[k].raw(), kRound);
      mpfr_sub(oim[k].raw(), oim[k].raw(), ii[k].raw(), kRound);
    }
  }
  check_finite(out, "matrix product");
  return out;
}

Matrix operator*(const Matrix& a, const Real& s) {
  Matrix out = a.with_precision(std::max(a.precision(), s.precision()));
  for (Real& x : out.re_data()) mpfr_mul(x.raw(), x.raw(), s.raw(), kRound);
  for (Real& x : out.im_data()) mpfr_mul(x.raw(), x.raw(), s.raw(), kRound);
  check_finite(out, "matrix scaling");
  return out;
}

Matrix operator*(const Matrix& a, const Complex& s) {
  if (s.is_real()) return a * s.re;
  const Precision prec = std::max(a.precision(), s.precision());
  Matrix out(a.n(), prec, Field::complex);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) out.set(i, j, a.at(i, j) * s);
  return out;
}

Matrix diag_of(const Matrix& m) {
  Matrix out(m.n(), m.precision(), m.field());
  for (std::size_t i = 0; i < m.n(); ++i) out.set(i, i, m.at(i, i));
  return out;
}

Matrix off_of(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.n(); ++i) {
    mpfr_set_zero(out.re(i, i).raw(), 1);
    if (!out.is_real()) mpfr_set_zero(out.im_mut(i, i).raw(), 1);
  }
  return out;
}

Matrix plus_identity(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.n(); ++i) mpfr_add_ui(out.re(i, i).raw(), out.re(i, i).raw(), 1, kRound);
  return out;
}

Matrix minus_identity(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.n(); ++i) mpfr_sub_ui(out.re(i, i).raw(), out.re(i, i).raw(), 1, kRound);
  return out;
}

Matrix minus_diagonal(const Matrix& m, std::span<const Complex> d) {
  if (d.size() != m.n()) throw DimensionMismatch("minus_diagonal: dimension mismatch");
  Matrix out = m;
  for (std::size_t i = 0; i < m.n(); ++i) {
    mpfr_sub(out.re(i, i).raw(), out.re(i, i).raw(), d[i].re.raw(), kRound);
    if (!d[i].im.is_zero() || !out.is_real()) {
      Real& im = out.im_mut(i, i);
      mpfr_sub(im.raw(), im.raw(), d[i].im.raw(), kRound);
    }
  }
  return out;
}

Matrix scale_rows(std::span<const Complex> d, const Matrix& m) {
  if (d.size() != m.n()) throw DimensionMismatch("scale_rows: dimension mismatch");
  Matrix out(m.n(), m.precision(), m.field());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out.set(i, j, d[i] * m.at(i, j));
  return out;
}

Matrix scale_columns(const Matrix& m, std::span<const Complex> d) {
  if (d.size() != m.n()) throw DimensionMismatch("scale_columns: dimension mismatch");
  Matrix out(m.n(), m.precision(), m.field());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out.set(i, j, m.at(i, j) * d[j]);
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.n(), m.precision(), m.field());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out.set(j, i, m.at(i, j));
  return out;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.n(), m.precision(), m.field());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out.set(j, i, conj(m.at(i, j)));
  return out;
}

Complex trace(const Matrix& m) {
  Complex out(m.precision());
  for (std::size_t i = 0; i < m.n(); ++i) out += m.at(i, i);
  return out;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.n();
  const Precision prec = m.precision();
  LuFactors lu = lu_factor(m);
  if (lu.singular) throw SingularMatrix("inverse: matrix is singular at working precision");

  auto factor = [&](std::size_t idx) { return Complex(lu.re[idx], lu.complex ? lu.im[idx] : Real(prec)); };
  Matrix out(n, prec, m.field());
  // Solve L U x = P e_c for each column c.
  std::vector<Complex> x(n, Complex(prec));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc(lu.perm[i] == c ? 1.0 : 0.0, 0.0, prec);
      for (std::size_t k = 0; k < i; ++k) {
        if (x[k].is_zero()) continue;
        acc -= factor(i * n + k) * x[k];
      }
      x[i] = std::move(acc);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex acc = x[ii];
      for (std::size_t k = ii + 1; k < n; ++k) acc -= factor(ii * n + k) * x[k];
      x[ii] = acc / factor(ii * n + ii);
    }
    for (std::size_t i = 0; i < n; ++i) out.set(i, c, x[i]);
  }
  check_finite(out, "inverse");
  return out;
}

Complex determinant(const Matrix& m) {
  const Precision prec = m.precision();
  LuFactors lu = lu_factor(m);
  if (lu.singular) return Complex(prec);
  Complex out(static_cast<double>(lu.sign), 0.0, prec);
  for (std::size_t i = 0; i < m.n(); ++i) {
    const std::size_t idx = i * m.n() + i;
    out *= Complex(lu.re[idx], lu.complex ? lu.im[idx] : Real(prec));
  }
  return out;
}

Real norm_inf(const Matrix& m) {
  Real best(m.precision());
  Real row(m.precision());
  Real mod(m.precision());
  for (std::size_t i = 0; i < m.n(); ++i) {
    mpfr_set_zero(row.raw(), 1);
    for (std::size_t j = 0; j < m.n(); ++j) {
      if (m.is_real()) {
        mpfr_abs(mod.raw(), m.re(i, j).raw(), kRound);
      } else {
        mpfr_hypot(mod.raw(), m.re(i, j).raw(), m.im(i, j).raw(), kRound);
      }
      mpfr_add(row.raw(), row.raw(), mod.raw(), kRound);
    }
    if (row > best) best = row;
  }
  return best;
}

Real norm_frobenius(const Matrix& m) {
  Real sum(m.precision());
  Real sq(m.precision());
  for (const Real& x : m.re_data()) {
    mpfr_sqr(sq.raw(), x.raw(), kRound);
    mpfr_add(sum.raw(), sum.raw(), sq.raw(), kRound);
  }
  for (const Real& x : m.im_data()) {
    mpfr_sqr(sq.raw(), x.raw(), kRound);
    mpfr_add(sum.raw(), sum.raw(), sq.raw(), kRound);
  }
  return sqrt(sum);
}

Real norm_lower_tri_max(const Matrix& m) {
  Real best(m.precision());
  for (std::size_t i = 1; i < m.n(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Real mod = abs(m.at(i, j));
      if (mod > best) best = mod;
    }
  return best;
}

Real max_abs_entry(const Matrix& m) {
  Real best(m.precision());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) {
      Real mod = abs(m.at(i, j));
      if (mod > best) best = mod;
    }
  return best;
}

std::ostream& operator<<(std::ostream& out, const Matrix& m) {
  out << "[";
  for (std::size_t i = 0; i < m.n(); ++i) {
    out << (i ? ",\n [" : "[");
    for (std::size_t j = 0; j < m.n(); ++j) out << (j ? ", " : "") << m.at(i, j);
    out << "]";
  }
  return out << "]";
}

}  // namespace simdiag
