#pragma once

// Test-only reference computations. Nothing here calls the Jacobi solver or
// the library's norm routines, so the checks stay independent.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/linalg.hpp"
#include "framelab/random.hpp"

namespace framelab::testing {

inline Vector random_vector(SplitMix64& rng, std::size_t n, bool real = false) {
  Vector v(n);
  for (auto& z : v) z = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
  return v;
}

inline DenseMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(rng.normal(), rng.normal());
  return m;
}

inline DenseMatrix random_hermitian(SplitMix64& rng, std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = rng.normal();
    for (std::size_t c = r + 1; c < n; ++c) {
      m(r, c) = Complex(rng.normal(), rng.normal());
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

inline FrameSystem random_frame(SplitMix64& rng, std::size_t dim, std::size_t count) {
  std::vector<Vector> elements;
  for (std::size_t n = 0; n < count; ++n) elements.push_back(random_vector(rng, dim));
  return FrameSystem(dim, std::move(elements));
}

// Closed-form eigenvalues of [[a, b], [conj(b), d]] (a, d real), ascending.
inline std::pair<double, double> eig2x2(double a, Complex b, double d) {
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid - rad, mid + rad};
}

// Largest singular value by power iteration on M*M; slow but independent.
inline double power_spectral_norm(const DenseMatrix& m, int iterations = 3000) {
  SplitMix64 rng(12345);
  Vector v = random_vector(rng, m.cols());
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) w[r] += m(r, c) * v[c];
    Vector u(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t r = 0; r < m.rows(); ++r) u[c] += std::conj(m(r, c)) * w[r];
    double un = 0.0;
    for (const auto& z : u) un += std::norm(z);
    un = std::sqrt(un);
    if (un == 0.0) return 0.0;
    for (auto& z : u) z /= un;
    v = std::move(u);
    sigma = std::sqrt(un);
  }
  return sigma;
}

// Brute-force weighted Schur norm with the weight written out explicitly.
inline double brute_schur(const DenseMatrix& a, const std::vector<std::int64_t>& rows,
                          const std::vector<std::int64_t>& cols, double s, std::int64_t period /* 0 = linear */) {
  auto dist = [&](std::int64_t k, std::int64_t l) {
    std::int64_t d = std::llabs(k - l);
    if (period > 0) d = std::min(d % period, period - d % period);
    return static_cast<double>(d);
  };
  double best = 0.0;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    double sum = 0.0;
    for (std::size_t l = 0; l < a.cols(); ++l) sum += std::abs(a(k, l)) * std::pow(1.0 + dist(rows[k], cols[l]), s);
    best = std::max(best, sum);
  }
  for (std::size_t l = 0; l < a.cols(); ++l) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.rows(); ++k) sum += std::abs(a(k, l)) * std::pow(1.0 + dist(rows[k], cols[l]), s);
    best = std::max(best, sum);
  }
  return best;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double lp(std::span<const Complex> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : x) m = std::max(m, std::abs(z));
    return m;
  }
  double s = 0.0;
  for (const auto& z : x) s += std::pow(std::abs(z), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace framelab::testing
