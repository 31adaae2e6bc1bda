#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "simdiag/complex.hpp"
#include "simdiag/real.hpp"

namespace simdiag {

enum class Field { real, complex };

std::string_view to_string(Field field);
Field parse_field(std::string_view text);

/// Dense square matrix of MPFR entries.
///
/// A real matrix stores only the real parts; its imaginary parts are exactly
/// zero. Writing a non-zero imaginary part promotes the matrix to complex.
/// Storage is row-major and every entry has the matrix precision.
class Matrix {
 public:
  Matrix() : Matrix(0, kDoublePrecision) {}
  Matrix(std::size_t n, Precision prec, Field field = Field::real);

  static Matrix identity(std::size_t n, Precision prec);
  /// Row-major real entries.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows, Precision prec);
  static Matrix from_doubles(std::size_t n, std::span<const double> re, Precision prec);
  static Matrix from_doubles(std::size_t n, std::span<const double> re, std::span<const double> im, Precision prec);
  static Matrix diagonal(std::span<const Complex> values, Precision prec);

  std::size_t n() const { return n_; }
  Precision precision() const { return prec_; }
  Field field() const { return im_.empty() ? Field::real : Field::complex; }
  bool is_real() const { return im_.empty(); }

  const Real& re(std::size_t i, std::size_t j) const { return re_[i * n_ + j]; }
  Real& re(std::size_t i, std::size_t j) { return re_[i * n_ + j]; }
  /// Imaginary part; the shared exact zero for real matrices.
  const Real& im(std::size_t i, std::size_t j) const { return im_.empty() ? zero_ : im_[i * n_ + j]; }
  /// Mutable imaginary part; promotes a real matrix to complex.
  Real& im_mut(std::size_t i, std::size_t j);

  Complex at(std::size_t i, std::size_t j) const { return {re(i, j), im(i, j)}; }
  void set(std::size_t i, std::size_t j, const Complex& value);
  void set(std::size_t i, std::size_t j, const Real& value);

  void promote_to_complex();
  /// Drops the imaginary storage when every imaginary part is exactly zero.
  void demote_if_real();

  /// Copy rounded (or exactly widened) to `prec`.
  Matrix with_precision(Precision prec) const;
  std::vector<Complex> diagonal_entries() const;

  std::span<Real> re_data() { return re_; }
  std::span<const Real> re_data() const { return re_; }
  std::span<Real> im_data() { return im_; }
  std::span<const Real> im_data() const { return im_; }

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t n_;
  Precision prec_;
  std::vector<Real> re_;
  std::vector<Real> im_;
  Real zero_;
};

/// Throws NonFiniteValue if any entry is NaN or infinite.
void check_finite(const Matrix& m, const char* where);
void require_same_size(const Matrix& a, const Matrix& b, const char* where);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
/// Matrix product; complex products use three real products.
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Real& s);
Matrix operator*(const Matrix& a, const Complex& s);

inline Matrix matmul(const Matrix& a, const Matrix& b) { return a * b; }
inline Matrix matadd(const Matrix& a, const Matrix& b) { return a + b; }
inline Matrix matsub(const Matrix& a, const Matrix& b) { return a - b; }

/// Zeroes the off-diagonal part.
Matrix diag_of(const Matrix& m);
/// Zeroes the diagonal.
Matrix off_of(const Matrix& m);
/// I + m.
Matrix plus_identity(const Matrix& m);
/// m - I.
Matrix minus_identity(const Matrix& m);
/// m - diag(d).
Matrix minus_diagonal(const Matrix& m, std::span<const Complex> d);
/// diag(d) * m.
Matrix scale_rows(std::span<const Complex> d, const Matrix& m);
/// m * diag(d).
Matrix scale_columns(const Matrix& m, std::span<const Complex> d);
Matrix transpose(const Matrix& m);
/// Conjugate transpose.
Matrix adjoint(const Matrix& m);
Complex trace(const Matrix& m);

/// Inverse by LU with partial pivoting at the matrix precision.
Matrix inverse(const Matrix& m);
/// Determinant by LU with partial pivoting.
Complex determinant(const Matrix& m);

/// Max absolute row sum, the operator norm induced by the vector max-norm.
Real norm_inf(const Matrix& m);
Real norm_frobenius(const Matrix& m);
/// Largest modulus strictly below the diagonal; zero for n = 1.
Real norm_lower_tri_max(const Matrix& m);
Real max_abs_entry(const Matrix& m);

std::ostream& operator<<(std::ostream& out, const Matrix& m);

}  // namespace simdiag
