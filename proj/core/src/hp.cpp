#include "framelab/hp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "framelab/error.hpp"
#include "framelab/random.hpp"

namespace framelab {

PNorm::PNorm(double p) : p_(p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p must be >= 1");
}

PNorm PNorm::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorCode::kParseError, "bad p value '" + std::string(text) + "'");
  return PNorm(value);
}

std::string PNorm::to_string() const {
  if (is_infinity()) return "inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
  return std::string(buf, ptr);
}

double lp_norm(std::span<const Complex> x, const PNorm& p) {
  if (p.is_infinity()) {
    double m = 0.0;
    for (const auto& z : x) m = std::max(m, std::abs(z));
    return m;
  }
  if (p.value() == 1.0) {
    double s = 0.0;
    for (const auto& z : x) s += std::abs(z);
    return s;
  }
  if (p.value() == 2.0) return norm2(x);
  double scale = 0.0;
  for (const auto& z : x) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& z : x) s += std::pow(std::abs(z) / scale, p.value());
  return scale * std::pow(s, 1.0 / p.value());
}

double hp_norm(std::span<const Complex> f, const HpSpec& spec) {
  if (f.size() != spec.reference.dual().dim()) throw Error(ErrorCode::kDimensionMismatch, "hp_norm: vector length");
  return lp_norm(analysis(spec.reference.dual(), f), spec.p);
}

std::vector<double> system_hp_norms(const FrameSystem& system, const HpSpec& spec) {
  if (system.dim() != spec.reference.dual().dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "system_hp_norms: dimension");
  }
  std::vector<double> out;
  out.reserve(system.size());
  for (const Vector& v : system.elements()) out.push_back(hp_norm(v, spec));
  return out;
}

std::string_view to_string(NormMethod method) noexcept {
  switch (method) {
    case NormMethod::kExact: return "exact";
    case NormMethod::kInterpolated: return "interpolated";
    case NormMethod::kSampled: return "sampled";
  }
  return "unknown";
}

MatrixNormBound matrix_p_norm_upper(const DenseMatrix& m, const PNorm& p) {
  if (p.value() == 1.0) return {max_column_sum(m), NormMethod::kExact};
  if (p.is_infinity()) return {max_row_sum(m), NormMethod::kExact};
  if (p.value() == 2.0) return {spectral_norm(m), NormMethod::kExact};
  const double theta = p.reciprocal();
  return {std::pow(max_column_sum(m), theta) * std::pow(max_row_sum(m), 1.0 - theta), NormMethod::kInterpolated};
}

AtomicDecompositionBounds atomic_bounds(const FrameSystem& e, const FrameSystem& dual_e, const HpSpec& spec,
                                        std::size_t samples, std::uint64_t seed) {
  const FrameSystem& g = spec.reference.frame();
  const FrameSystem& g_dual = spec.reference.dual();
  if (e.dim() != g.dim()) throw Error(ErrorCode::kDimensionMismatch, "atomic_bounds: dimension");
  try {
    if (DualPair(e, dual_e).reconstruction_defect() > 1e-9) {
      throw Error(ErrorCode::kNotADualPair, "D_E C_dual differs from the identity");
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kNotADualPair) throw;
    throw Error(ErrorCode::kNotADualPair, err.what());
  }

  // Coefficients of f are C_{E~} f = (C_{E~} D_G)(C_{G~} f) and conversely
  // C_{G~} f = (C_{G~} D_E)(C_{E~} f).
  const DenseMatrix forward = dual_e.analysis_matrix() * g.synthesis_matrix();
  const DenseMatrix backward = g_dual.analysis_matrix() * e.synthesis_matrix();
  const MatrixNormBound upper = matrix_p_norm_upper(forward, spec.p);
  const MatrixNormBound inverse = matrix_p_norm_upper(backward, spec.p);

  // A_p <= B_p holds exactly (their maps compose to the projection C_{E~} D_E);
  // the min only absorbs rounding.
  AtomicDecompositionBounds out{spec.p, std::min(1.0 / inverse.value, upper.value), upper.value, upper.method,
                                std::numeric_limits<double>::infinity(), 0.0};

  SplitMix64 rng(seed);
  const std::size_t d = e.dim();
  Vector f(d);
  for (std::size_t i = 0; i < samples; ++i) {
    if (i % 2 == 0) {
      for (auto& z : f) z = Complex(rng.normal(), rng.normal());
    } else {
      // A single reference atom, optionally mixed with a neighbour.
      const Vector& atom = g.element(rng.below(g.size()));
      const Vector& other = g.element(rng.below(g.size()));
      const double mix = rng.uniform();
      for (std::size_t j = 0; j < d; ++j) f[j] = atom[j] + mix * other[j];
    }
    const double reference = lp_norm(analysis(g_dual, f), spec.p);
    if (reference == 0.0) continue;
    const double ratio = lp_norm(analysis(dual_e, f), spec.p) / reference;
    out.lower_sampled = std::min(out.lower_sampled, ratio);
    out.upper_sampled = std::max(out.upper_sampled, ratio);
  }
  if (!std::isfinite(out.lower_sampled)) out.lower_sampled = out.lower;
  return out;
}

}  // namespace framelab
