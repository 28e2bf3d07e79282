#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "framelab/hp.hpp"

namespace framelab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadInput = 2,
  kExitNotAFrame = 3,
  kExitBracketingViolation = 4,
};

// FRAMELAB_SEED when set and parseable, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 0);

struct GenOptions {
  std::string family;  // onb | union_onb | harmonic | gabor | exp_localized
  std::size_t dim = 0;
  std::size_t count = 0;  // --n
  std::size_t time_step = 1;
  std::size_t freq_step = 1;
  std::string window = "gaussian";
  double decay = 0.5;
  std::uint64_t seed = 0;
  std::string out;  // empty: stdout
};

struct AnalyzeOptions {
  std::string frame_path;
  double threshold = 10.0;
  std::string out;
};

struct CertifyOptions {
  std::string frame_path;      // F
  std::string perturbed_path;  // E
  std::string reference_path;  // G (defaults to F)
  std::string cert = "all";    // christensen | mixed | cc | schur | atomic | all
  std::vector<PNorm> p_list{PNorm(1.0), PNorm(2.0), PNorm::infinity()};
  std::optional<double> eps;  // runs the implication chain when set
  std::optional<double> lambda;
  std::optional<double> mu;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string out;
};

struct SweepOptions {
  std::string base_path;
  std::string reference_path;  // defaults to base
  std::string kind = "additive_noise";
  std::vector<double> magnitudes;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::vector<PNorm> p_list{PNorm(1.0), PNorm(2.0), PNorm::infinity()};
  std::size_t samples = 100;
  std::string out;
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

// Full command-line entry point: parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace framelab::cli
