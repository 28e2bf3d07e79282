#pragma once

// H^p coefficient norms relative to a reference dual pair (G, G~):
// ||f||_{H^p} = || (<f, g~_n>)_n ||_{l^p}. In finite dimension every H^p is
// the whole space with this norm; the completions needed for p > 2 on Z
// collapse.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/linalg.hpp"

namespace framelab {

class PNorm {
 public:
  explicit PNorm(double p);
  static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
  // Accepts a decimal >= 1 or "inf".
  static PNorm parse(std::string_view text);

  double value() const noexcept { return p_; }
  bool is_infinity() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }
  // Reciprocal 1/p (0 for infinity).
  double reciprocal() const noexcept { return is_infinity() ? 0.0 : 1.0 / p_; }
  std::string to_string() const;

  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  double p_;
};

double lp_norm(std::span<const Complex> x, const PNorm& p);

struct HpSpec {
  DualPair reference;
  PNorm p;
};

double hp_norm(std::span<const Complex> f, const HpSpec& spec);
std::vector<double> system_hp_norms(const FrameSystem& system, const HpSpec& spec);

enum class NormMethod { kExact, kInterpolated, kSampled };
std::string_view to_string(NormMethod method) noexcept;

struct MatrixNormBound {
  double value;
  NormMethod method;
};

// Upper bound on ||M||_{l^p -> l^p}: exact for p in {1, 2, inf}, the
// Riesz-Thorin bound ||M||_1^{1/p} ||M||_inf^{1-1/p} otherwise.
MatrixNormBound matrix_p_norm_upper(const DenseMatrix& m, const PNorm& p);

// Two-sided norm equivalence A_p ||f||_{H^p} <= ||C_{E~} f||_p <= B_p ||f||_{H^p}.
struct AtomicDecompositionBounds {
  PNorm p;
  double lower;          // certified: 1 / ||C_{G~} D_E||_{p->p}
  double upper;          // ||C_{E~} D_G||_{p->p}
  NormMethod method;     // how lower/upper were computed
  double lower_sampled;  // min sampled ratio (an upper estimate of the infimum)
  double upper_sampled;  // max sampled ratio
};

// Throws NotADualPair when D_E C_{E~} differs from I by more than 1e-9.
AtomicDecompositionBounds atomic_bounds(const FrameSystem& e, const FrameSystem& dual_e, const HpSpec& spec,
                                        std::size_t samples, std::uint64_t seed);

}  // namespace framelab
