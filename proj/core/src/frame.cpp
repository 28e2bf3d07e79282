#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "framelab/error.hpp"

namespace framelab {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_dim(const FrameSystem& a, const FrameSystem& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": dimensions " + std::to_string(a.dim()) +
                                                   " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

FrameSystem::FrameSystem(std::size_t dim, std::vector<Vector> elements, std::vector<std::int64_t> positions,
                         std::string label, IndexGeometry geometry)
    : dim_(dim),
      elements_(std::move(elements)),
      positions_(std::move(positions)),
      label_(std::move(label)),
      geometry_(geometry) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "frame dimension must be >= 1");
  if (elements_.empty()) throw Error(ErrorCode::kInvalidArgument, "frame must have at least one element");
  for (const auto& v : elements_) {
    if (v.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "element length differs from dim");
    if (!std::all_of(v.begin(), v.end(), finite)) throw Error(ErrorCode::kInvalidArgument, "non-finite element");
  }
  if (positions_.empty()) {
    positions_.resize(elements_.size());
    std::iota(positions_.begin(), positions_.end(), std::int64_t{0});
  }
  if (positions_.size() != elements_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "index_positions length differs from element count");
  }
  std::unordered_set<std::int64_t> seen(positions_.begin(), positions_.end());
  if (seen.size() != positions_.size()) throw Error(ErrorCode::kInvalidArgument, "index positions must be distinct");
}

FrameSystem FrameSystem::with_label(std::string label) const {
  FrameSystem out = *this;
  out.label_ = std::move(label);
  return out;
}

FrameSystem FrameSystem::with_geometry(IndexGeometry geometry) const {
  FrameSystem out = *this;
  out.geometry_ = geometry;
  return out;
}

FrameSystem FrameSystem::with_provenance(std::optional<Provenance> provenance) const {
  FrameSystem out = *this;
  out.provenance_ = std::move(provenance);
  return out;
}

FrameSystem FrameSystem::with_elements(std::vector<Vector> elements) const {
  if (elements.size() != elements_.size()) throw Error(ErrorCode::kLengthMismatch, "element count changed");
  FrameSystem out(dim_, std::move(elements), positions_, label_, geometry_);
  out.provenance_ = provenance_;
  return out;
}

bool FrameSystem::is_real() const noexcept {
  return std::all_of(elements_.begin(), elements_.end(), [](const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& z) { return z.imag() == 0.0; });
  });
}

DenseMatrix FrameSystem::synthesis_matrix() const { return DenseMatrix::from_columns(elements_); }

DenseMatrix FrameSystem::analysis_matrix() const {
  DenseMatrix m(size(), dim_);
  for (std::size_t n = 0; n < size(); ++n)
    for (std::size_t j = 0; j < dim_; ++j) m(n, j) = std::conj(elements_[n][j]);
  return m;
}

FrameBounds::FrameBounds(double lower_bound, double upper_bound) : lower(lower_bound), upper(upper_bound) {
  if (!(lower > 0.0) || !(upper >= lower)) {
    throw Error(ErrorCode::kInvalidArgument, "frame bounds require 0 < A <= B");
  }
}

DualPair::DualPair(FrameSystem frame, FrameSystem dual) : frame_(std::move(frame)), dual_(std::move(dual)) {
  if (frame_.dim() != dual_.dim() || frame_.size() != dual_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "dual pair requires equal dim and element count");
  }
  if (!std::equal(frame_.positions().begin(), frame_.positions().end(), dual_.positions().begin())) {
    throw Error(ErrorCode::kShapeMismatch, "dual pair requires identical index positions");
  }
}

double DualPair::reconstruction_defect() const {
  DenseMatrix r = frame_.synthesis_matrix() * dual_.analysis_matrix();
  r -= DenseMatrix::identity(frame_.dim());
  return frobenius_norm(r) / std::sqrt(static_cast<double>(frame_.dim()));
}

GramianMatrix::GramianMatrix(DenseMatrix m, std::vector<std::int64_t> rows, std::vector<std::int64_t> cols)
    : entries(std::move(m)), row_positions(std::move(rows)), col_positions(std::move(cols)) {
  if (row_positions.size() != entries.rows() || col_positions.size() != entries.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "Gramian position lists do not match entries");
  }
}

GramianMatrix::GramianMatrix(DenseMatrix m) : entries(std::move(m)) {
  row_positions.resize(entries.rows());
  col_positions.resize(entries.cols());
  std::iota(row_positions.begin(), row_positions.end(), std::int64_t{0});
  std::iota(col_positions.begin(), col_positions.end(), std::int64_t{0});
}

GramianMatrix GramianMatrix::adjoint() const { return {entries.adjoint(), col_positions, row_positions}; }

Vector analysis(const FrameSystem& frame, std::span<const Complex> f) {
  if (f.size() != frame.dim()) throw Error(ErrorCode::kDimensionMismatch, "analysis: vector length");
  Vector c(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) c[n] = inner(f, frame.element(n));
  return c;
}

Vector synthesis(const FrameSystem& frame, std::span<const Complex> coefficients) {
  if (coefficients.size() != frame.size()) throw Error(ErrorCode::kLengthMismatch, "synthesis: coefficient count");
  Vector out(frame.dim());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const Vector& g = frame.element(n);
    for (std::size_t j = 0; j < frame.dim(); ++j) out[j] += coefficients[n] * g[j];
  }
  return out;
}

DenseMatrix frame_operator(const FrameSystem& frame) {
  const std::size_t d = frame.dim();
  DenseMatrix s(d, d);
  for (const Vector& g : frame.elements()) {
    for (std::size_t i = 0; i < d; ++i) {
      const Complex gi = g[i];
      for (std::size_t j = 0; j < d; ++j) s(i, j) += gi * std::conj(g[j]);
    }
  }
  return s;
}

FrameBounds frame_bounds(const FrameSystem& frame) {
  const EigenResult eig = hermitian_eig(frame_operator(frame));
  const double lmin = eig.eigenvalues.front();
  const double lmax = eig.eigenvalues.back();
  if (!(lmax > 0.0) || lmin <= 1e-12 * lmax) {
    throw Error(ErrorCode::kNotAFrame, "system does not span (lambda_min = " + std::to_string(lmin) +
                                           ", lambda_max = " + std::to_string(lmax) + ")");
  }
  return {lmin, lmax};
}

DualPair canonical_dual(const FrameSystem& frame) {
  frame_bounds(frame);
  const DenseMatrix s = frame_operator(frame);
  const Cholesky chol(s);
  std::vector<Vector> dual;
  dual.reserve(frame.size());
  for (const Vector& g : frame.elements()) {
    Vector x = chol.solve(g);
    const Vector sx = s * x;
    Vector r(g.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g[i] - sx[i];
    const Vector dx = chol.solve(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    dual.push_back(std::move(x));
  }
  FrameSystem dual_system(frame.dim(), std::move(dual), {frame.positions().begin(), frame.positions().end()},
                          frame.label().empty() ? "dual" : frame.label() + "~", frame.geometry());
  return {frame, std::move(dual_system)};
}

Reconstruction reconstruct(const DualPair& pair, std::span<const Complex> f) {
  if (f.size() != pair.frame().dim()) throw Error(ErrorCode::kDimensionMismatch, "reconstruct: vector length");
  const Vector coefficients = analysis(pair.dual(), f);
  Vector out = synthesis(pair.frame(), coefficients);
  Vector diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = out[i] - f[i];
  const double fn = norm2(f);
  const double dn = norm2(diff);
  return {std::move(out), fn > 0.0 ? dn / fn : dn};
}

GramianMatrix cross_gramian(const FrameSystem& rows, const FrameSystem& cols) {
  require_same_dim(rows, cols, "cross_gramian");
  DenseMatrix m(rows.size(), cols.size());
  for (std::size_t n = 0; n < rows.size(); ++n)
    for (std::size_t x = 0; x < cols.size(); ++x) m(n, x) = inner(rows.element(n), cols.element(x));
  return {std::move(m), {rows.positions().begin(), rows.positions().end()},
          {cols.positions().begin(), cols.positions().end()}};
}

FrameSystem difference_system(const FrameSystem& e, const FrameSystem& f) {
  if (e.dim() != f.dim() || e.size() != f.size() ||
      !std::equal(e.positions().begin(), e.positions().end(), f.positions().begin())) {
    throw Error(ErrorCode::kShapeMismatch, "difference_system requires equal dim, count and positions");
  }
  std::vector<Vector> diff(e.size(), Vector(e.dim()));
  for (std::size_t n = 0; n < e.size(); ++n)
    for (std::size_t j = 0; j < e.dim(); ++j) diff[n][j] = e.element(n)[j] - f.element(n)[j];
  return FrameSystem(e.dim(), std::move(diff), {e.positions().begin(), e.positions().end()},
                     e.label() + "-" + f.label(), e.geometry());
}

}  // namespace framelab
