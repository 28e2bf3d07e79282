#include "framelab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "framelab/error.hpp"
#include "framelab/random.hpp"

namespace framelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

}  // namespace

FrameSystem gen_onb(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kBadShape, "dim must be >= 1");
  std::vector<Vector> elements(dim, Vector(dim));
  for (std::size_t n = 0; n < dim; ++n) elements[n][n] = 1.0;
  return FrameSystem(dim, std::move(elements), {}, "onb")
      .with_provenance(Provenance{"onb", {{"dim", dim}}, 0});
}

FrameSystem gen_union_onb(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kBadShape, "dim must be >= 1");
  std::vector<Vector> elements(2 * dim, Vector(dim));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t n = 0; n < dim; ++n) {
    elements[n][n] = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      elements[dim + n][j] = scale * unit_phase(static_cast<double>((n * j) % dim) / static_cast<double>(dim));
    }
  }
  return FrameSystem(dim, std::move(elements), {}, "union_onb")
      .with_provenance(Provenance{"union_onb", {{"dim", dim}}, 0});
}

FrameSystem gen_harmonic(std::size_t dim, std::size_t count) {
  if (dim == 0 || count < dim) throw Error(ErrorCode::kBadShape, "harmonic frame needs 1 <= dim <= count");
  std::vector<Vector> elements(count, Vector(dim));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t n = 0; n < count; ++n)
    for (std::size_t j = 0; j < dim; ++j)
      elements[n][j] = scale * unit_phase(static_cast<double>((n * j) % count) / static_cast<double>(count));
  return FrameSystem(dim, std::move(elements), {}, "harmonic", IndexGeometry::circular(as_int(count)))
      .with_provenance(Provenance{"harmonic", {{"dim", dim}, {"n", count}}, 0});
}

std::string_view to_string(GaborWindow window) noexcept {
  return window == GaborWindow::kGaussian ? "gaussian" : "delta";
}

GaborWindow parse_gabor_window(std::string_view name) {
  if (name == "gaussian") return GaborWindow::kGaussian;
  if (name == "delta") return GaborWindow::kDelta;
  throw Error(ErrorCode::kInvalidArgument, "unknown Gabor window '" + std::string(name) + "'");
}

Vector gabor_window(std::size_t dim, GaborWindow window) {
  Vector g(dim);
  if (window == GaborWindow::kDelta) {
    g[0] = 1.0;
    return g;
  }
  const IndexGeometry circle = IndexGeometry::circular(as_int(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    const double x = static_cast<double>(circle.distance(as_int(j), 0));
    g[j] = std::exp(-std::numbers::pi * x * x / static_cast<double>(dim));
  }
  const double norm = norm2(g);
  for (auto& z : g) z /= norm;
  return g;
}

Vector gabor_atom(std::span<const Complex> window, double tau, double omega) {
  const std::size_t d = window.size();
  const double dd = static_cast<double>(d);
  Vector shifted(d);
  const double whole = std::floor(tau);
  if (tau == whole) {
    const auto shift = static_cast<std::size_t>(static_cast<std::int64_t>(whole) % as_int(d) + as_int(d)) % d;
    for (std::size_t j = 0; j < d; ++j) shifted[j] = window[(j + d - shift) % d];
  } else {
    Vector spectrum(d);
    for (std::size_t m = 0; m < d; ++m) {
      Complex acc{};
      for (std::size_t j = 0; j < d; ++j) acc += window[j] * unit_phase(-static_cast<double>((m * j) % d) / dd);
      spectrum[m] = acc;
    }
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc{};
      for (std::size_t m = 0; m < d; ++m) {
        // Symmetric frequency representative in (-d/2, d/2].
        const double freq = 2 * m > d ? static_cast<double>(m) - dd : static_cast<double>(m);
        acc += spectrum[m] * unit_phase(freq * (static_cast<double>(j) - tau) / dd);
      }
      shifted[j] = acc / dd;
    }
  }
  for (std::size_t j = 0; j < d; ++j) shifted[j] *= unit_phase(omega * static_cast<double>(j) / dd);
  return shifted;
}

FrameSystem gen_gabor(std::size_t dim, std::size_t time_step, std::size_t freq_step, GaborWindow window) {
  if (dim == 0 || time_step == 0 || freq_step == 0 || dim % time_step != 0 || dim % freq_step != 0) {
    throw Error(ErrorCode::kBadLattice, "time and frequency steps must divide dim");
  }
  const std::size_t times = dim / time_step;
  const std::size_t freqs = dim / freq_step;
  const Vector g = gabor_window(dim, window);
  std::vector<Vector> elements;
  elements.reserve(times * freqs);
  for (std::size_t l = 0; l < times; ++l) {
    for (std::size_t k = 0; k < freqs; ++k) {
      // Integer lattice nodes: exact cyclic shift and exact phase table.
      Vector atom(dim);
      const std::size_t tau = l * time_step;
      const std::size_t omega = k * freq_step;
      for (std::size_t j = 0; j < dim; ++j) {
        atom[j] = g[(j + dim - tau) % dim] * unit_phase(static_cast<double>((omega * j) % dim) / static_cast<double>(dim));
      }
      elements.push_back(std::move(atom));
    }
  }
  const std::size_t count = times * freqs;
  return FrameSystem(dim, std::move(elements), {}, "gabor", IndexGeometry::circular(as_int(count)))
      .with_provenance(Provenance{
          "gabor", {{"dim", dim}, {"a", time_step}, {"b", freq_step}, {"window", to_string(window)}}, 0});
}

FrameSystem gen_exp_localized(std::size_t dim, std::size_t count, double decay, std::uint64_t seed) {
  if (dim == 0 || count < dim) throw Error(ErrorCode::kBadShape, "exp_localized needs 1 <= dim <= count");
  if (!(decay > 0.0 && decay < 1.0)) throw Error(ErrorCode::kBadShape, "decay must lie in (0, 1)");
  const IndexGeometry circle = IndexGeometry::circular(as_int(count));
  std::vector<std::int64_t> anchors(dim);
  for (std::size_t j = 0; j < dim; ++j) anchors[j] = as_int((j * count) / dim);

  SplitMix64 rng(seed);
  std::vector<Vector> elements(count, Vector(dim));
  for (std::size_t n = 0; n < count; ++n) {
    const bool anchor = std::find(anchors.begin(), anchors.end(), as_int(n)) != anchors.end();
    for (std::size_t j = 0; j < dim; ++j) {
      const double base = std::pow(decay, static_cast<double>(circle.distance(as_int(n), anchors[j])));
      elements[n][j] = anchor ? base : base * rng.uniform(0.75, 1.25);
    }
    const double norm = norm2(elements[n]);
    for (auto& z : elements[n]) z /= norm;
  }
  return FrameSystem(dim, std::move(elements), {}, "exp_localized", circle)
      .with_provenance(Provenance{"exp_localized", {{"dim", dim}, {"n", count}, {"decay", decay}}, seed});
}

std::string_view to_string(PerturbationKind kind) noexcept {
  switch (kind) {
    case PerturbationKind::kAdditiveNoise: return "additive_noise";
    case PerturbationKind::kLatticeJitter: return "lattice_jitter";
    case PerturbationKind::kQuantize: return "quantize";
    case PerturbationKind::kDualTruncate: return "dual_truncate";
  }
  return "unknown";
}

PerturbationKind parse_perturbation_kind(std::string_view name) {
  for (auto kind : {PerturbationKind::kAdditiveNoise, PerturbationKind::kLatticeJitter, PerturbationKind::kQuantize,
                    PerturbationKind::kDualTruncate}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown perturbation kind '" + std::string(name) + "'");
}

double PerturbationSpec::magnitude(std::size_t n) const {
  if (magnitudes.empty()) return 0.0;
  return magnitudes.size() == 1 ? magnitudes.front() : magnitudes.at(n);
}

namespace {

void validate(const FrameSystem& frame, const PerturbationSpec& spec) {
  if (spec.magnitudes.size() != 1 && spec.magnitudes.size() != frame.size()) {
    throw Error(ErrorCode::kLengthMismatch, "magnitude profile must be constant or per-element");
  }
  for (double m : spec.magnitudes) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw Error(ErrorCode::kInvalidArgument, "magnitudes must be finite and >= 0");
  }
}

std::vector<Vector> jitter(const FrameSystem& frame, const PerturbationSpec& spec) {
  const auto& prov = frame.provenance();
  if (!prov || prov->generator != "gabor") {
    throw Error(ErrorCode::kJitterOnNonGabor, "lattice_jitter requires a Gabor-generated frame");
  }
  const auto dim = prov->args.at("dim").get<std::size_t>();
  const auto a = prov->args.at("a").get<std::size_t>();
  const auto b = prov->args.at("b").get<std::size_t>();
  const GaborWindow window = parse_gabor_window(prov->args.at("window").get<std::string>());
  if (dim != frame.dim() || frame.size() != (dim / a) * (dim / b)) {
    throw Error(ErrorCode::kJitterOnNonGabor, "Gabor provenance does not match the frame shape");
  }
  const Vector g = gabor_window(dim, window);
  const double gnorm = norm2(g);
  const std::size_t freqs = dim / b;

  SplitMix64 rng(spec.seed);
  std::vector<Vector> out(frame.elements().begin(), frame.elements().end());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double dt = rng.uniform(-1.0, 1.0);
    const double df = rng.uniform(-1.0, 1.0);
    const double m = spec.magnitude(n);
    if (m == 0.0) continue;
    // ||T_{tau+dt} g - T_tau g|| <= pi |dt| ||g||, ||M_df h - h|| <= 2 pi |df| ||h||.
    const double time_offset = dt * m / (2.0 * std::numbers::pi * gnorm);
    const double freq_offset = df * m / (4.0 * std::numbers::pi * gnorm);
    const double tau = static_cast<double>((n / freqs) * a);
    const double omega = static_cast<double>((n % freqs) * b);
    const Vector moved = gabor_atom(g, tau + time_offset, omega + freq_offset);
    const Vector home = gabor_atom(g, tau, omega);
    for (std::size_t j = 0; j < dim; ++j) out[n][j] += moved[j] - home[j];
  }
  return out;
}

}  // namespace

FrameSystem perturb(const FrameSystem& frame, const PerturbationSpec& spec) {
  validate(frame, spec);
  if (spec.kind == PerturbationKind::kLatticeJitter) {
    return frame.with_elements(jitter(frame, spec)).with_label(frame.label() + "+lattice_jitter");
  }

  SplitMix64 rng(spec.seed);
  const bool real = frame.is_real();
  std::vector<Vector> out(frame.elements().begin(), frame.elements().end());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double m = spec.magnitude(n);
    Vector& e = out[n];
    switch (spec.kind) {
      case PerturbationKind::kAdditiveNoise: {
        Vector z(frame.dim());
        double zn = 0.0;
        while (zn == 0.0) {
          for (auto& c : z) c = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
          zn = norm2(z);
        }
        if (m == 0.0) break;
        for (std::size_t j = 0; j < e.size(); ++j) e[j] += (m / zn) * z[j];
        break;
      }
      case PerturbationKind::kQuantize:
        if (m == 0.0) break;
        for (auto& c : e) c = Complex(m * std::round(c.real() / m), m * std::round(c.imag() / m));
        break;
      case PerturbationKind::kDualTruncate:
        for (auto& c : e)
          if (std::abs(c) < m) c = 0.0;
        break;
      case PerturbationKind::kLatticeJitter:
        break;
    }
  }
  return frame.with_elements(std::move(out)).with_label(frame.label() + "+" + std::string(to_string(spec.kind)));
}

}  // namespace framelab
