#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/geometry.hpp"
#include "framelab/linalg.hpp"

namespace framelab {

// Where a generated system came from; lattice jitter needs the Gabor args.
struct Provenance {
  std::string generator;
  nlohmann::json args = nlohmann::json::object();
  std::uint64_t seed = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Finite indexed family {g_n} in C^d. Each element carries an integer
// index position used as the localization coordinate.
class FrameSystem {
 public:
  FrameSystem(std::size_t dim, std::vector<Vector> elements, std::vector<std::int64_t> positions = {},
              std::string label = {}, IndexGeometry geometry = IndexGeometry::linear());

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Vector& element(std::size_t n) const { return elements_.at(n); }
  std::span<const Vector> elements() const noexcept { return elements_; }
  std::span<const std::int64_t> positions() const noexcept { return positions_; }
  const std::string& label() const noexcept { return label_; }
  const IndexGeometry& geometry() const noexcept { return geometry_; }
  const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

  FrameSystem with_label(std::string label) const;
  FrameSystem with_geometry(IndexGeometry geometry) const;
  FrameSystem with_provenance(std::optional<Provenance> provenance) const;
  // Same positions/geometry, new vectors (count must match).
  FrameSystem with_elements(std::vector<Vector> elements) const;

  bool is_real() const noexcept;

  // d x N matrix whose columns are the elements (synthesis operator D).
  DenseMatrix synthesis_matrix() const;
  // N x d matrix whose rows are the conjugated elements (analysis operator C).
  DenseMatrix analysis_matrix() const;

  friend bool operator==(const FrameSystem&, const FrameSystem&) = default;

 private:
  std::size_t dim_;
  std::vector<Vector> elements_;
  std::vector<std::int64_t> positions_;
  std::string label_;
  IndexGeometry geometry_;
  std::optional<Provenance> provenance_;
};

struct FrameBounds {
  double lower;
  double upper;

  FrameBounds(double lower, double upper);
  double condition() const noexcept { return upper / lower; }
};

// Frame G together with a dual G~ satisfying f = sum <f, g~_n> g_n.
class DualPair {
 public:
  DualPair(FrameSystem frame, FrameSystem dual);

  const FrameSystem& frame() const noexcept { return frame_; }
  const FrameSystem& dual() const noexcept { return dual_; }
  // || D_frame C_dual - I ||_F / sqrt(d)
  double reconstruction_defect() const;

 private:
  FrameSystem frame_;
  FrameSystem dual_;
};

// Matrix of inner products <g_n, f_x> together with both index lists.
struct GramianMatrix {
  DenseMatrix entries;
  std::vector<std::int64_t> row_positions;
  std::vector<std::int64_t> col_positions;

  GramianMatrix(DenseMatrix entries, std::vector<std::int64_t> row_positions,
                std::vector<std::int64_t> col_positions);
  // Positions default to 0..n-1 on both axes.
  explicit GramianMatrix(DenseMatrix entries);

  GramianMatrix adjoint() const;
};

// c_n = <f, g_n>
Vector analysis(const FrameSystem& frame, std::span<const Complex> f);
// sum_n c_n g_n
Vector synthesis(const FrameSystem& frame, std::span<const Complex> coefficients);
// S = sum_n g_n g_n^*
DenseMatrix frame_operator(const FrameSystem& frame);
// Optimal constants: extremal eigenvalues of S. Throws NotAFrame when
// lambda_min <= 1e-12 * lambda_max.
FrameBounds frame_bounds(const FrameSystem& frame);
// Dual elements S^{-1} g_n.
DualPair canonical_dual(const FrameSystem& frame);

struct Reconstruction {
  Vector f;
  double residual;  // ||f_rec - f|| / ||f|| (absolute when f = 0)
};
Reconstruction reconstruct(const DualPair& pair, std::span<const Complex> f);

GramianMatrix cross_gramian(const FrameSystem& rows, const FrameSystem& cols);
inline GramianMatrix gramian(const FrameSystem& frame) { return cross_gramian(frame, frame); }

// {e_n - f_n}; positions and geometry taken from `e`.
FrameSystem difference_system(const FrameSystem& e, const FrameSystem& f);

}  // namespace framelab
