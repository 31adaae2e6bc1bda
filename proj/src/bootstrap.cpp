#include "simdiag/bootstrap.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "simdiag/errors.hpp"

namespace simdiag {

namespace {

using RealMat = Eigen::MatrixXd;
using CplxMat = Eigen::MatrixXcd;
using CplxVec = Eigen::VectorXcd;

bool is_symmetric(const Matrix& M) {
  if (!M.is_real()) return false;
  for (std::size_t i = 0; i < M.n(); ++i) {
    for (std::size_t j = i + 1; j < M.n(); ++j) {
      if (!(M.re(i, j) == M.re(j, i))) return false;
    }
  }
  return true;
}

CplxMat to_eigen(const Matrix& M) {
  const auto n = static_cast<Eigen::Index>(M.n());
  CplxMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = {M.re(i, j).to_double(), M.im(i, j).to_double()};
    }
  }
  return out;
}

Matrix from_eigen(const CplxMat& a, Precision prec) {
  const auto n = static_cast<std::size_t>(a.rows());
  Matrix out(n, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      out.set(i, j, Complex(z.real(), z.imag(), prec));
    }
  }
  out.demote_if_real();
  return out;
}

// Power-of-two diagonal scaling D with D⁻¹AD having comparable row and column
// norms (the classical balancing sweep). Returns the scale factors.
Eigen::VectorXd balance(CplxMat& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(a(j, i));
        row += std::abs(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix * radix;
      }
      if ((col + row) / f < 0.95 * s) {
        converged = false;
        scale(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return scale;
}

}  // namespace

Eigendecomposition double_eigendecomposition(const Matrix& M, Precision prec) {
  const auto n = static_cast<Eigen::Index>(M.n());
  if (n == 0) throw InvalidArgument("double_eigendecomposition: empty matrix");

  if (is_symmetric(M)) {
    RealMat a = to_eigen(M).real();
    Eigen::SelfAdjointEigenSolver<RealMat> solver(a);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
    Matrix E = from_eigen(solver.eigenvectors().cast<std::complex<double>>(), prec);
    std::vector<Complex> values;
    for (Eigen::Index k = 0; k < n; ++k) values.emplace_back(solver.eigenvalues()(k), 0.0, prec);
    Matrix F = transpose(E);
    return {std::move(E), std::move(F), Spectrum(std::move(values))};
  }

  CplxMat a = to_eigen(M);
  const Eigen::VectorXd scale = balance(a);
  CplxVec values;
  CplxMat vectors;
  if (M.is_real()) {
    Eigen::EigenSolver<RealMat> solver(a.real());
    if (solver.info() != Eigen::Success) throw Error("real eigensolver failed");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<CplxMat> solver(a);
    if (solver.info() != Eigen::Success) throw Error("complex eigensolver failed");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }
  // The solver saw D⁻¹AD; eigenvectors of A are D v.
  for (Eigen::Index k = 0; k < n; ++k) {
    vectors.col(k) = scale.cast<std::complex<double>>().cwiseProduct(vectors.col(k));
    vectors.col(k).normalize();
  }
  Matrix E = from_eigen(vectors, prec);
  std::vector<Complex> slots;
  for (Eigen::Index k = 0; k < n; ++k) slots.emplace_back(values(k).real(), values(k).imag(), prec);
  Matrix F = inverse(E);
  return {std::move(E), std::move(F), Spectrum(std::move(slots))};
}

}  // namespace simdiag
