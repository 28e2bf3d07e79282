#pragma once

#include <cstdint>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/geometry.hpp"

namespace framelab {

// Polynomial weight v_s(x) = (1 + |x|)^s.
class SchurWeight {
 public:
  explicit SchurWeight(double s = 0.0);
  double s() const noexcept { return s_; }
  double operator()(std::uint64_t distance) const noexcept;

 private:
  double s_;
};

// max( sup_k sum_l |a_kl| v_s(k-l), sup_l sum_k |a_kl| v_s(k-l) ), with the
// index distance measured by `geometry` between the stored positions.
double schur_norm(const GramianMatrix& a, const SchurWeight& weight, const IndexGeometry& geometry);
// Positions 0..n-1 with linear geometry.
double schur_norm(const DenseMatrix& a, const SchurWeight& weight = SchurWeight{});

double localization_degree(const FrameSystem& g, const FrameSystem& f, const SchurWeight& weight,
                           const IndexGeometry& geometry);

struct DualLocalizationReport {
  double s = 0.0;
  double frame_norm = 0.0;  // ||A(G, G)||
  double dual_norm = 0.0;   // ||A(G~, G~)||
  double threshold = 0.0;
  bool passes = false;
};

// Numerical witness that a self-localized frame has a self-localized
// canonical dual. Throws NotAFrame.
DualLocalizationReport check_dual_localization(const FrameSystem& g, const SchurWeight& weight,
                                               const IndexGeometry& geometry, double threshold);

struct DecayPoint {
  std::uint64_t distance;
  double max_abs;
};

// Largest |a_kl| at each distance 0..max distance present.
std::vector<DecayPoint> decay_profile(const GramianMatrix& a, const IndexGeometry& geometry);

}  // namespace framelab
