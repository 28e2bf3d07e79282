#include "framelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "framelab/error.hpp"

namespace framelab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingularOperator: return "SingularOperator";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotAFrame: return "NotAFrame";
    case ErrorCode::kNotADualPair: return "NotADualPair";
    case ErrorCode::kCh2Violated: return "Ch2Violated";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kBadLattice: return "BadLattice";
    case ErrorCode::kJitterOnNonGabor: return "JitterOnNonGabor";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  }
  data_.assign(rows * cols, Complex{});
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : DenseMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kInvalidArgument, "ragged matrix literal");
    }
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
    ++r;
  }
  if (!all_finite()) throw Error(ErrorCode::kInvalidArgument, "non-finite matrix entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  DenseMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

DenseMatrix DenseMatrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) throw Error(ErrorCode::kInvalidArgument, "no columns");
  const std::size_t rows = columns.front().size();
  DenseMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorCode::kInvalidArgument, "ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector DenseMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::kShapeMismatch, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::kShapeMismatch, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
DenseMatrix operator*(Complex scale, DenseMatrix m) { return m *= scale; }

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw Error(ErrorCode::kShapeMismatch, "matrix product");
  DenseMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vector operator*(const DenseMatrix& m, std::span<const Complex> x) {
  if (m.cols() != x.size()) throw Error(ErrorCode::kShapeMismatch, "matrix-vector product");
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    Complex acc{};
    for (std::size_t c = 0; c < x.size(); ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "inner product");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

double norm2(std::span<const Complex> x) {
  double scale = 0.0;
  for (const auto& z : x) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& z : x) acc += std::norm(z / scale);
  return scale * std::sqrt(acc);
}

double frobenius_norm(const DenseMatrix& m) { return norm2(m.data()); }

double hermitian_deviation(const DenseMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    for (std::size_t l = 0; l < m.cols(); ++l) {
      dev = std::max(dev, std::abs(m(k, l) - std::conj(m(l, k))));
      scale = std::max(scale, std::abs(m(k, l)));
    }
  }
  return scale == 0.0 ? 0.0 : dev / scale;
}

double max_column_sum(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += std::abs(m(r, c));
    best = std::max(best, sum);
  }
  return best;
}

double max_row_sum(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (const auto& z : m.row(r)) sum += std::abs(z);
    best = std::max(best, sum);
  }
  return best;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double acc = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = 0; q < a.cols(); ++q)
      if (p != q) acc += std::norm(a(p, q));
  return std::sqrt(acc);
}

// Applies A <- J* A J and V <- V J for the unitary rotation in the (p, q)
// plane that annihilates a_pq.
void rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex s_phase = s * phase;
  const Complex s_conj = s * std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s_conj * akq;
    a(k, q) = s_phase * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s_phase * aqk;
    a(q, k) = s_conj * apk + c * aqk;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s_conj * vkq;
    v(k, q) = s_phase * vkp + c * vkq;
  }
}

}  // namespace

EigenResult hermitian_eig(const DenseMatrix& m, double tol, const JacobiOptions& options) {
  if (!m.is_square()) throw Error(ErrorCode::kNotHermitian, "matrix is not square");
  if (!m.all_finite()) throw Error(ErrorCode::kInvalidArgument, "non-finite entry");
  if (hermitian_deviation(m) > options.hermitian_tolerance) {
    throw Error(ErrorCode::kNotHermitian, "relative deviation exceeds tolerance");
  }
  const std::size_t n = m.rows();

  DenseMatrix a = m;
  for (std::size_t k = 0; k < n; ++k) {
    a(k, k) = a(k, k).real();
    for (std::size_t l = k + 1; l < n; ++l) {
      const Complex avg = 0.5 * (m(k, l) + std::conj(m(l, k)));
      a(k, l) = avg;
      a(l, k) = std::conj(avg);
    }
  }
  DenseMatrix v = DenseMatrix::identity(n);

  const double norm_f = frobenius_norm(a);
  const double threshold = options.off_diagonal_threshold * norm_f;
  bool converged = norm_f == 0.0 || off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Entries below the rounding level of both diagonals are dropped.
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + 1e2 * mag == app && aqq + 1e2 * mag == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) throw Error(ErrorCode::kNoConvergence, "Jacobi sweep cap reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenResult result{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, k) = v(r, order[k]);
  }

  if (norm_f > 0.0) {
    DenseMatrix scaled = result.eigenvectors;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) scaled(r, k) *= result.eigenvalues[k];
    const double residual = frobenius_norm(scaled * result.eigenvectors.adjoint() - m);
    if (residual > tol * norm_f) {
      throw Error(ErrorCode::kNoConvergence, "reconstruction residual " + std::to_string(residual / norm_f));
    }
  }
  return result;
}

Cholesky::Cholesky(const DenseMatrix& m) : lower_(m.rows(), m.cols()) {
  if (!m.is_square()) throw Error(ErrorCode::kSingularOperator, "matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(lower_(j, k));
    if (!(diag > 0.0)) throw Error(ErrorCode::kSingularOperator, "matrix is not positive definite");
    const double ljj = std::sqrt(diag);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= lower_(i, k) * std::conj(lower_(j, k));
      lower_(i, j) = acc / ljj;
    }
  }
}

Vector Cholesky::solve(std::span<const Complex> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorCode::kDimensionMismatch, "right-hand side length");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
    y[i] /= lower_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= std::conj(lower_(k, i)) * y[k];
    y[i] /= lower_(i, i).real();
  }
  return y;
}

LuDecomposition::LuDecomposition(const DenseMatrix& m) : lu_(m), pivots_(m.rows()) {
  if (!m.is_square()) throw Error(ErrorCode::kSingularOperator, "matrix is not square");
  const std::size_t n = m.rows();
  double scale = 0.0;
  for (const auto& z : m.data()) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(pivot, k))) pivot = i;
    if (std::abs(lu_(pivot, k)) <= 1e-14 * scale) throw Error(ErrorCode::kSingularOperator, "zero pivot");
    pivots_[k] = pivot;
    if (pivot != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu_(i, k) / lu_(k, k);
      lu_(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

Vector LuDecomposition::solve(std::span<const Complex> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw Error(ErrorCode::kDimensionMismatch, "right-hand side length");
  Vector x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[pivots_[k]]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= lu_(i, k) * x[k];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= lu_(i, k) * x[k];
    x[i] /= lu_(i, i);
  }
  return x;
}

Vector solve_hpd(const DenseMatrix& m, std::span<const Complex> b) {
  if (!m.is_square() || b.size() != m.rows()) throw Error(ErrorCode::kDimensionMismatch, "solve_hpd shapes");
  const EigenResult eig = hermitian_eig(m);
  const double lmax = eig.eigenvalues.back();
  const double lmin = eig.eigenvalues.front();
  if (!(lmax > 0.0) || lmin <= 1e-12 * lmax) {
    throw Error(ErrorCode::kSingularOperator, "minimum eigenvalue below 1e-12 * maximum");
  }
  const Cholesky chol(m);
  Vector x = chol.solve(b);
  // One step of iterative refinement.
  const Vector mx = m * x;
  Vector r(b.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - mx[i];
  const Vector dx = chol.solve(r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

SingularPair largest_singular(const DenseMatrix& m) {
  const DenseMatrix gram = m.adjoint() * m;
  const EigenResult eig = hermitian_eig(gram);
  SingularPair out;
  out.value = std::sqrt(std::max(0.0, eig.eigenvalues.back()));
  out.right = eig.eigenvectors.column(m.cols() - 1);
  return out;
}

double spectral_norm(const DenseMatrix& m) {
  // Work with the smaller of M*M and MM*.
  const DenseMatrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
  const EigenResult eig = hermitian_eig(gram);
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

}  // namespace framelab
