#pragma once

// Dense complex linear algebra used as the numerical oracle layer:
// Hermitian eigendecomposition (cyclic Jacobi), HPD solves, spectral norms.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace framelab {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> values);
  // Columns are the given vectors (all of equal length).
  static DenseMatrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;
  std::span<const Complex> data() const noexcept { return data_; }

  DenseMatrix adjoint() const;
  bool all_finite() const noexcept;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);
DenseMatrix operator*(Complex scale, DenseMatrix m);
Vector operator*(const DenseMatrix& m, std::span<const Complex> x);

// <x, y> = sum_i x_i conj(y_i): linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm2(std::span<const Complex> x);

double frobenius_norm(const DenseMatrix& m);
// Largest absolute deviation |m_kl - conj(m_lk)| relative to max |m_kl|.
double hermitian_deviation(const DenseMatrix& m);
// Induced l^1 norm (maximum absolute column sum).
double max_column_sum(const DenseMatrix& m);
// Induced l^inf norm (maximum absolute row sum).
double max_row_sum(const DenseMatrix& m);

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
};

struct JacobiOptions {
  int max_sweeps = 64;
  double off_diagonal_threshold = 1e-14;  // relative to ||M||_F
  double hermitian_tolerance = 1e-12;
};

// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
// `tol` is the accepted reconstruction residual ||M - V L V*||_F / ||M||_F.
EigenResult hermitian_eig(const DenseMatrix& m, double tol = 1e-10, const JacobiOptions& options = {});

// Cholesky factor of a Hermitian positive definite matrix.
class Cholesky {
 public:
  explicit Cholesky(const DenseMatrix& m);
  Vector solve(std::span<const Complex> b) const;
  std::size_t size() const noexcept { return lower_.rows(); }

 private:
  DenseMatrix lower_;
};

// LU with partial pivoting for general square systems.
class LuDecomposition {
 public:
  explicit LuDecomposition(const DenseMatrix& m);
  Vector solve(std::span<const Complex> b) const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> pivots_;
};

// Solves M x = b for HPD M; throws SingularOperator when
// lambda_min <= 1e-12 * lambda_max.
Vector solve_hpd(const DenseMatrix& m, std::span<const Complex> b);

double spectral_norm(const DenseMatrix& m);

struct SingularPair {
  double value = 0.0;
  Vector right;  // unit vector v with ||M v|| = value
};

// Largest singular value and a maximizing right singular vector.
SingularPair largest_singular(const DenseMatrix& m);

}  // namespace framelab
