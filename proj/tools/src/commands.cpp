#include "framelab_tools/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "framelab/error.hpp"
#include "framelab/frame.hpp"
#include "framelab/generators.hpp"
#include "framelab/io.hpp"
#include "framelab/localization.hpp"
#include "framelab/perturbation.hpp"

namespace framelab::cli {

using nlohmann::json;

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("FRAMELAB_SEED");
  if (env == nullptr) return fallback;
  const std::string_view text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size() ? value : fallback;
}

namespace {

void emit(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  file << payload;
}

json input_record(const std::string& role, const std::string& path) {
  return {{"role", role}, {"path", path}, {"fnv1a64", file_digest(path)}};
}

int exit_for(const Error& err) {
  return err.code() == ErrorCode::kNotAFrame ? kExitNotAFrame : kExitBadInput;
}

FrameSystem generate(const GenOptions& o) {
  if (o.family == "onb") return gen_onb(o.dim);
  if (o.family == "union_onb") return gen_union_onb(o.dim);
  if (o.family == "harmonic") return gen_harmonic(o.dim, o.count);
  if (o.family == "gabor") return gen_gabor(o.dim, o.time_step, o.freq_step, parse_gabor_window(o.window));
  if (o.family == "exp_localized") return gen_exp_localized(o.dim, o.count, o.decay, o.seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown family '" + o.family + "'");
}

}  // namespace

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const FrameSystem frame = generate(options);
    emit(options.out, serialize_frame(frame), out);
    err << "generated " << options.family << ": dim " << frame.dim() << ", " << frame.size() << " vectors\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "gen: " << e.what() << "\n";
    return kExitBadInput;
  }
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const FrameSystem frame = read_frame_file(options.frame_path);
    const FrameBounds bounds = frame_bounds(frame);
    const DualPair pair = canonical_dual(frame);
    const IndexGeometry& geometry = frame.geometry();

    json self = json::array();
    json dual_loc = json::array();
    for (double s : {0.0, 1.0, 2.0}) {
      const SchurWeight w(s);
      self.push_back({{"s", s}, {"gamma", schur_norm(gramian(frame), w, geometry)}});
      dual_loc.push_back(to_json(check_dual_localization(frame, w, geometry, options.threshold)));
    }
    json report{{"tool_version", kToolVersion},
                {"command", "analyze"},
                {"inputs", json::array({input_record("frame", options.frame_path)})},
                {"dim", frame.dim()},
                {"count", frame.size()},
                {"geometry", geometry_to_json(geometry)},
                {"bounds", to_json(bounds)},
                {"condition", bounds.condition()},
                {"reconstruction_defect", pair.reconstruction_defect()},
                {"self_localization", std::move(self)},
                {"dual_localization", std::move(dual_loc)},
                {"dual", frame_to_json(pair.dual())}};
    emit(options.out, report.dump(2) + "\n", out);
    err << "A = " << format_double(bounds.lower) << ", B = " << format_double(bounds.upper)
        << ", B/A = " << format_double(bounds.condition()) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "analyze: " << e.what() << "\n";
    return exit_for(e);
  }
}

int cmd_certify(const CertifyOptions& options, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kCerts{"christensen", "mixed", "cc", "schur", "atomic", "all"};
  if (std::find(kCerts.begin(), kCerts.end(), options.cert) == kCerts.end()) {
    err << "certify: unknown certificate '" << options.cert << "'\n";
    return kExitBadInput;
  }
  try {
    const std::string ref_path = options.reference_path.empty() ? options.frame_path : options.reference_path;
    const FrameSystem f = read_frame_file(options.frame_path);
    const FrameSystem e = read_frame_file(options.perturbed_path);
    const FrameSystem g = read_frame_file(ref_path);
    const PerturbationContext ctx(f, e, canonical_dual(g), g.geometry());

    const bool all = options.cert == "all";
    std::vector<CertificateReport> reports;
    if (all || options.cert == "christensen") reports.push_back(cert_christensen(ctx));
    if (all || options.cert == "mixed") reports.push_back(cert_mixed_norm(ctx));
    if (all || options.cert == "cc") {
      reports.push_back(cert_casazza_christensen(ctx, {options.lambda, options.mu, options.samples, options.seed}));
    }
    if (all || options.cert == "schur") reports.push_back(cert_schur_localized(ctx));
    if (all || options.cert == "atomic") {
      reports.push_back(cert_atomic_stability(ctx, {options.p_list, options.samples, options.seed}));
    }

    bool violated = false;
    json certs = json::array();
    for (const auto& r : reports) {
      violated = violated || !r.bracketing_ok || r.theorem_contradiction;
      certs.push_back(to_json(r));
      err << to_string(r.id) << ": hypothesis " << (r.hypothesis_holds ? "holds" : "fails") << ", bracketing "
          << (r.bracketing_ok ? "ok" : "VIOLATED") << "\n";
    }
    json report{{"tool_version", kToolVersion},
                {"command", "certify"},
                {"inputs", json::array({input_record("F", options.frame_path), input_record("E", options.perturbed_path),
                                        input_record("G", ref_path)})},
                {"seed", options.seed},
                {"certificates", std::move(certs)}};
    if (options.eps) {
      const ChainReport chain = implication_chain(ctx, *options.eps, options.samples, options.seed);
      violated = violated || !chain.chain_holds;
      report["implication_chain"] = to_json(chain);
      err << "implication chain: " << (chain.chain_holds ? "holds" : "VIOLATED") << "\n";
    }
    emit(options.out, report.dump(2) + "\n", out);
    return violated ? kExitBracketingViolation : kExitOk;
  } catch (const Error& e) {
    err << "certify: " << e.what() << "\n";
    return exit_for(e);
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.magnitudes.empty()) throw Error(ErrorCode::kInvalidArgument, "--magnitudes is required");
    const PerturbationKind kind = parse_perturbation_kind(options.kind);
    const FrameSystem f = read_frame_file(options.base_path);
    const FrameSystem g = options.reference_path.empty() ? f : read_frame_file(options.reference_path);
    const DualPair g_pair = canonical_dual(g);

    std::ostringstream csv;
    csv << "magnitude,seed,cert,hypothesis_holds,predicted_A,actual_A,predicted_B,actual_B,bracketing_ok\n";
    bool violated = false;
    const auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
    const auto row = [&](double magnitude, std::uint64_t seed, const std::string& cert, bool holds,
                         std::optional<double> pa, std::optional<double> aa, std::optional<double> pb,
                         std::optional<double> ab, bool ok) {
      csv << format_double(magnitude) << ',' << seed << ',' << cert << ',' << (holds ? "true" : "false") << ','
          << cell(pa) << ',' << cell(aa) << ',' << cell(pb) << ',' << cell(ab) << ',' << (ok ? "true" : "false")
          << '\n';
    };

    for (double magnitude : options.magnitudes) {
      for (std::size_t i = 0; i < options.seeds; ++i) {
        const std::uint64_t seed = options.seed + i;
        const FrameSystem e = perturb(f, PerturbationSpec{kind, {magnitude}, seed});
        const PerturbationContext ctx(f, e, g_pair, g.geometry());
        const std::vector<CertificateReport> frame_certs{cert_christensen(ctx), cert_mixed_norm(ctx),
                                                         cert_casazza_christensen(ctx), cert_schur_localized(ctx)};
        for (const auto& r : frame_certs) {
          const bool ok = r.bracketing_ok && !r.theorem_contradiction;
          violated = violated || !ok;
          std::optional<double> pa, pb, aa, ab;
          if (r.predicted) pa = r.predicted->lower, pb = r.predicted->upper;
          if (r.actual) aa = r.actual->lower, ab = r.actual->upper;
          row(magnitude, seed, std::string(to_string(r.id)), r.hypothesis_holds, pa, aa, pb, ab, ok);
        }
        const CertificateReport atomic = cert_atomic_stability(ctx, {options.p_list, options.samples, seed});
        for (const auto& cmp : atomic.atomic) {
          const bool ok = cmp.bracketing_ok && !atomic.theorem_contradiction;
          violated = violated || !ok;
          std::optional<double> pa, pb, aa, ab;
          if (cmp.predicted) pa = cmp.predicted->lower, pb = cmp.predicted->upper;
          if (cmp.actual) {
            aa = cmp.actual->lower_sampled;
            ab = cmp.actual->method == NormMethod::kExact ? cmp.actual->upper : cmp.actual->upper_sampled;
          }
          row(magnitude, seed, "atomic_stability[p=" + cmp.p.to_string() + "]", atomic.hypothesis_holds, pa, aa, pb,
              ab, ok);
        }
      }
    }
    emit(options.out, csv.str(), out);
    err << "sweep: " << options.magnitudes.size() * options.seeds << " trials"
        << (violated ? ", bracketing VIOLATED" : ", all bracketing ok") << "\n";
    return violated ? kExitBracketingViolation : kExitOk;
  } catch (const Error& e) {
    err << "sweep: " << e.what() << "\n";
    return exit_for(e);
  }
}

namespace {

std::vector<PNorm> parse_p_list(const std::string& text) {
  std::vector<PNorm> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(PNorm::parse(item));
  if (out.empty()) throw Error(ErrorCode::kParseError, "empty p list");
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::kParseError, "bad number '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

struct NullBuffer : std::streambuf {
  int overflow(int c) override { return c; }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"framelab: finite frame analysis and perturbation certificates"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress diagnostics on stderr");

  const std::uint64_t seed = default_seed();

  GenOptions gen;
  gen.seed = seed;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a frame file");
  gen_cmd->add_option("family", gen.family, "onb | union_onb | harmonic | gabor | exp_localized")->required();
  gen_cmd->add_option("--dim", gen.dim, "Ambient dimension d")->required();
  gen_cmd->add_option("--n", gen.count, "Number of vectors (harmonic, exp_localized)");
  gen_cmd->add_option("--a", gen.time_step, "Gabor time step");
  gen_cmd->add_option("--b", gen.freq_step, "Gabor frequency step");
  gen_cmd->add_option("--window", gen.window, "Gabor window: gaussian | delta");
  gen_cmd->add_option("--decay", gen.decay, "exp_localized decay r in (0, 1)");
  gen_cmd->add_option("--seed", gen.seed, "Seed (default: FRAMELAB_SEED or 0)");
  gen_cmd->add_option("--out,-o", gen.out, "Output path (default stdout)");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Frame bounds and localization report");
  analyze_cmd->add_option("frame", analyze.frame_path, "Frame file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--threshold", analyze.threshold, "Dual localization threshold");
  analyze_cmd->add_option("--out,-o", analyze.out, "Output path (default stdout)");

  CertifyOptions certify;
  certify.seed = seed;
  std::string certify_p = "1,2,inf";
  auto* certify_cmd = app.add_subcommand("certify", "Run perturbation certificates on F, E, G");
  certify_cmd->add_option("frame", certify.frame_path, "Reference frame F")->required()->check(CLI::ExistingFile);
  certify_cmd->add_option("perturbed", certify.perturbed_path, "Perturbed system E")->required()->check(CLI::ExistingFile);
  certify_cmd->add_option("reference", certify.reference_path, "Localization reference G (default F)")
      ->check(CLI::ExistingFile);
  certify_cmd->add_option("--cert", certify.cert, "christensen | mixed | cc | schur | atomic | all");
  certify_cmd->add_option("--p", certify_p, "Comma-separated exponents, e.g. 1,2,inf");
  certify_cmd->add_option("--eps", certify.eps, "Run the implication chain at this eps");
  certify_cmd->add_option("--lambda", certify.lambda, "Explicit lambda for the Casazza-Christensen test");
  certify_cmd->add_option("--mu", certify.mu, "Explicit mu for the Casazza-Christensen test");
  certify_cmd->add_option("--samples", certify.samples, "Random samples per sampled check");
  certify_cmd->add_option("--seed", certify.seed, "Seed (default: FRAMELAB_SEED or 0)");
  certify_cmd->add_option("--out,-o", certify.out, "Output path (default stdout)");

  SweepOptions sweep;
  sweep.seed = seed;
  std::string sweep_magnitudes;
  std::string sweep_p = "1,2,inf";
  auto* sweep_cmd = app.add_subcommand("sweep", "Perturbation grid over magnitudes and seeds, as CSV");
  sweep_cmd->add_option("base", sweep.base_path, "Reference frame F")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("reference", sweep.reference_path, "Localization reference G (default F)")
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--kind", sweep.kind, "additive_noise | lattice_jitter | quantize | dual_truncate");
  sweep_cmd->add_option("--magnitudes", sweep_magnitudes, "Comma-separated magnitudes")->required();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds per magnitude");
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed (default: FRAMELAB_SEED or 0)");
  sweep_cmd->add_option("--p", sweep_p, "Exponents for the atomic certificate");
  sweep_cmd->add_option("--samples", sweep.samples, "Random samples per sampled check");
  sweep_cmd->add_option("--out,-o", sweep.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  NullBuffer null_buffer;
  std::ostream null_stream(&null_buffer);
  std::ostream& diag = quiet ? null_stream : err;

  try {
    if (*gen_cmd) return cmd_gen(gen, out, diag);
    if (*analyze_cmd) return cmd_analyze(analyze, out, diag);
    if (*certify_cmd) {
      certify.p_list = parse_p_list(certify_p);
      return cmd_certify(certify, out, diag);
    }
    if (*sweep_cmd) {
      sweep.magnitudes = parse_number_list(sweep_magnitudes);
      sweep.p_list = parse_p_list(sweep_p);
      return cmd_sweep(sweep, out, diag);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace framelab::cli
