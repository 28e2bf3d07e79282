#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

// Standard basis of C^d.
FrameSystem gen_onb(std::size_t dim);

// Standard basis followed by the unitary DFT basis; tight with A = B = 2.
FrameSystem gen_union_onb(std::size_t dim);

// First `dim` coordinates of the `count`-point DFT vectors, scaled to unit
// norm: tight with A = B = count / dim. Circular geometry of period count.
FrameSystem gen_harmonic(std::size_t dim, std::size_t count);

enum class GaborWindow { kGaussian, kDelta };
std::string_view to_string(GaborWindow window) noexcept;
GaborWindow parse_gabor_window(std::string_view name);

// Unit-norm window on Z_d.
Vector gabor_window(std::size_t dim, GaborWindow window);

// {M_{b k} T_{a l} g} on Z_d, ordered by (l, k) lexicographically; the
// position of node (l, k) is l * (d / b) + k on a circle of period
// (d / a)(d / b). The full lattice a = b = 1 is tight with A = d ||g||^2.
FrameSystem gen_gabor(std::size_t dim, std::size_t time_step, std::size_t freq_step,
                      GaborWindow window = GaborWindow::kGaussian);

// Time-frequency shift M_omega T_tau g for real tau, omega; a fractional
// translation is the unitary DFT phase ramp with symmetric frequencies.
Vector gabor_atom(std::span<const Complex> window, double tau, double omega);

// Element n has coordinate j equal to decay^{dist(n, p_j)}, p_j = floor(j N / d)
// on the circle of period N; elements other than the anchors p_j carry a
// seeded factor in [0.75, 1.25]. All elements are normalized to unit norm.
// Gramian entries decay like decay^{distance}.
FrameSystem gen_exp_localized(std::size_t dim, std::size_t count, double decay, std::uint64_t seed);

enum class PerturbationKind { kAdditiveNoise, kLatticeJitter, kQuantize, kDualTruncate };
std::string_view to_string(PerturbationKind kind) noexcept;
PerturbationKind parse_perturbation_kind(std::string_view name);

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::kAdditiveNoise;
  // One entry per element, or a single constant entry.
  std::vector<double> magnitudes{0.0};
  std::uint64_t seed = 0;

  double magnitude(std::size_t n) const;
};

// additive_noise: e_n = f_n + eps_n * u_n with u_n a seeded unit vector
//   (real when F is real), so ||e_n - f_n|| = eps_n.
// lattice_jitter: Gabor nodes moved by seeded fractional offsets small
//   enough that ||e_n - f_n|| <= eps_n. Needs Gabor provenance.
// quantize: coordinates rounded to the grid of step eps_n.
// dual_truncate: coordinates with modulus below eps_n set to zero.
FrameSystem perturb(const FrameSystem& frame, const PerturbationSpec& spec);

}  // namespace framelab
