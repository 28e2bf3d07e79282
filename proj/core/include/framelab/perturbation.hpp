#pragma once

// Frame perturbation certificates. Each certificate evaluates a checkable
// hypothesis on the perturbed system E relative to a reference frame F (and a
// localization reference pair (G, G~)), predicts frame or atomic
// decomposition bounds for E, and compares them with the ground truth.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/hp.hpp"

namespace framelab {

enum class CertificateId { kChristensen, kMixedNorm, kCasazzaChristensen, kSchurLocalized, kAtomicStability };
std::string_view to_string(CertificateId id) noexcept;

// Relative slack for bracketing comparisons, scaled by the reference upper bound B.
inline constexpr double kBracketTolerance = 1e-9;

class PerturbationContext {
 public:
  // Throws NotAFrame when `reference` is not a frame, ShapeMismatch when the
  // systems are incompatible.
  PerturbationContext(FrameSystem reference, FrameSystem perturbed, DualPair localization, IndexGeometry geometry);
  // G = F with its canonical dual, geometry of F.
  static PerturbationContext self_referenced(FrameSystem reference, FrameSystem perturbed);

  const FrameSystem& reference() const noexcept { return reference_; }
  const FrameSystem& perturbed() const noexcept { return perturbed_; }
  const DualPair& localization() const noexcept { return localization_; }
  const IndexGeometry& geometry() const noexcept { return geometry_; }

  const FrameBounds& reference_bounds() const noexcept { return reference_bounds_; }
  const FrameSystem& reference_dual() const noexcept { return reference_dual_; }
  // {e_n - f_n}
  const FrameSystem& difference() const noexcept { return difference_; }

 private:
  FrameSystem reference_;
  FrameSystem perturbed_;
  DualPair localization_;
  IndexGeometry geometry_;
  FrameBounds reference_bounds_;
  FrameSystem reference_dual_;
  FrameSystem difference_;
};

struct NamedValue {
  std::string name;
  double value;
};

struct AtomicComparison {
  PNorm p;
  AtomicDecompositionBounds reference;
  std::optional<FrameBounds> predicted;
  std::optional<AtomicDecompositionBounds> actual;
  // max over sampled c of ||sum c_n (e_n - f_n)||_{H^p} / (eps ||c||_p)
  double intermediate_worst_ratio = 0.0;
  bool intermediate_ok = true;
  bool bracketing_ok = true;
};

struct CertificateReport {
  CertificateId id = CertificateId::kChristensen;
  std::vector<NamedValue> hypothesis_values;
  bool hypothesis_holds = false;
  FrameBounds reference_bounds{1.0, 1.0};
  std::optional<FrameBounds> predicted;  // present iff hypothesis_holds (frame certificates)
  std::optional<FrameBounds> actual;     // absent when E is not a frame
  std::vector<AtomicComparison> atomic;  // atomic_stability only
  bool bracketing_ok = true;
  // Hypothesis held but E failed the frame test.
  bool theorem_contradiction = false;
  std::string notes;

  // Throws InvalidArgument for unknown names.
  double value(std::string_view name) const;
};

CertificateReport cert_christensen(const PerturbationContext& ctx);

// eps = max(sup_n ||e_n - f_n||_{H^1}, sum_n ||e_n - f_n||_{H^inf}); the
// resulting l^2 -> H bound is kappa * eps with kappa = ||H^2 -> H|| =
// 1 / sqrt(lower bound of G~), which is 1 for an orthonormal or Parseval G.
CertificateReport cert_mixed_norm(const PerturbationContext& ctx);

struct CasazzaChristensenOptions {
  // Neither set: auto mode (lambda = 0, mu = ||D_{E-F}||).
  std::optional<double> lambda;
  std::optional<double> mu;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};
// Throws Ch2Violated when explicit constants are refuted by a sample.
CertificateReport cert_casazza_christensen(const PerturbationContext& ctx, const CasazzaChristensenOptions& options = {});

CertificateReport cert_schur_localized(const PerturbationContext& ctx);

struct AtomicStabilityOptions {
  std::vector<PNorm> p_list{PNorm(1.0), PNorm(2.0), PNorm::infinity()};
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};
CertificateReport cert_atomic_stability(const PerturbationContext& ctx, const AtomicStabilityOptions& options = {});

struct ChainReport {
  double eps = 0.0;
  double q_i = 0.0;     // sum_n ||e_n - f_n||_{H^inf}
  double q_ii = 0.0;    // sup_x sum_n |<e_n - f_n, g~_x>|
  double q_iii = 0.0;   // ||D_{E-F}|| / sqrt(gamma)
  double q_unif = 0.0;  // sup_n ||e_n - f_n||_{H^1}, the premise at p = 1
  double gamma = 0.0;   // ||A(G, G)||_{A^1}
  bool premise_holds = false;
  bool i_holds = false;
  bool ii_holds = false;
  bool iii_holds = false;
  // min over sampled c of (sqrt(gamma) eps ||c|| - ||D_{E-F} c||) / ||c||
  double iii_sampled_slack = 0.0;
  bool i_implies_ii = true;
  bool ii_implies_iii = true;
  bool chain_holds = true;
};

ChainReport implication_chain(const PerturbationContext& ctx, double eps, std::size_t samples = 100,
                              std::uint64_t seed = 0);

}  // namespace framelab
