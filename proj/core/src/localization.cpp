#include "framelab/localization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "framelab/error.hpp"

namespace framelab {

IndexGeometry IndexGeometry::circular(std::int64_t period) {
  if (period < 1) throw Error(ErrorCode::kInvalidArgument, "circular period must be >= 1");
  return IndexGeometry(Kind::kCircular, period);
}

std::uint64_t IndexGeometry::distance(std::int64_t k, std::int64_t l) const noexcept {
  const std::int64_t diff = k >= l ? k - l : l - k;
  if (kind_ == Kind::kLinear) return static_cast<std::uint64_t>(diff);
  const std::int64_t r = diff % period_;
  return static_cast<std::uint64_t>(std::min(r, period_ - r));
}

std::string IndexGeometry::describe() const {
  return kind_ == Kind::kLinear ? "linear" : "circular(" + std::to_string(period_) + ")";
}

SchurWeight::SchurWeight(double s) : s_(s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorCode::kInvalidArgument, "Schur weight exponent must be >= 0");
}

double SchurWeight::operator()(std::uint64_t distance) const noexcept {
  if (s_ == 0.0) return 1.0;
  return std::pow(1.0 + static_cast<double>(distance), s_);
}

double schur_norm(const GramianMatrix& a, const SchurWeight& weight, const IndexGeometry& geometry) {
  const DenseMatrix& m = a.entries;
  std::vector<double> col_sums(m.cols(), 0.0);
  double best_row = 0.0;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    double row_sum = 0.0;
    for (std::size_t l = 0; l < m.cols(); ++l) {
      const double mag = std::abs(m(k, l));
      if (mag == 0.0) continue;
      const double w = mag * weight(geometry.distance(a.row_positions[k], a.col_positions[l]));
      row_sum += w;
      col_sums[l] += w;
    }
    best_row = std::max(best_row, row_sum);
  }
  const double best_col = *std::max_element(col_sums.begin(), col_sums.end());
  return std::max(best_row, best_col);
}

double schur_norm(const DenseMatrix& a, const SchurWeight& weight) {
  return schur_norm(GramianMatrix(a), weight, IndexGeometry::linear());
}

double localization_degree(const FrameSystem& g, const FrameSystem& f, const SchurWeight& weight,
                           const IndexGeometry& geometry) {
  return schur_norm(cross_gramian(g, f), weight, geometry);
}

DualLocalizationReport check_dual_localization(const FrameSystem& g, const SchurWeight& weight,
                                               const IndexGeometry& geometry, double threshold) {
  const DualPair pair = canonical_dual(g);
  DualLocalizationReport report;
  report.s = weight.s();
  report.threshold = threshold;
  report.frame_norm = schur_norm(gramian(g), weight, geometry);
  report.dual_norm = schur_norm(gramian(pair.dual()), weight, geometry);
  report.passes = report.frame_norm <= threshold && report.dual_norm <= threshold;
  return report;
}

std::vector<DecayPoint> decay_profile(const GramianMatrix& a, const IndexGeometry& geometry) {
  std::uint64_t max_distance = 0;
  for (auto k : a.row_positions)
    for (auto l : a.col_positions) max_distance = std::max(max_distance, geometry.distance(k, l));
  std::vector<DecayPoint> profile(max_distance + 1);
  for (std::uint64_t r = 0; r <= max_distance; ++r) profile[r] = {r, 0.0};
  for (std::size_t k = 0; k < a.entries.rows(); ++k) {
    for (std::size_t l = 0; l < a.entries.cols(); ++l) {
      auto& point = profile[geometry.distance(a.row_positions[k], a.col_positions[l])];
      point.max_abs = std::max(point.max_abs, std::abs(a.entries(k, l)));
    }
  }
  return profile;
}

}  // namespace framelab
