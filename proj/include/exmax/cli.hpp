// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exmax/eval_control.hpp"
#include "exmax/path_engine.hpp"

namespace exmax::cli {

inline constexpr const char* kToolName = "excursion-max";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitNumeric = 3,
  kExitVerification = 4,
};

enum class Format { json, text };

/// Malformed score input. `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ScoreSequence {
  std::vector<double> values;
  std::string source;
};

/// Newline-delimited decimal reals ('\n' or "\r\n"). Blank lines are
/// ignored; a non-numeric first line is taken as a CSV header.
ScoreSequence parse_scores(std::istream& in, const std::string& source);

struct CommandResult {
  nlohmann::json document;
  int exit_code = kExitOk;
};

/// Rounds to 12 significant digits so JSON reports diff cleanly.
double round12(double value);

CommandResult cmd_score(const ScoreSequence& input);

struct SimulateOptions {
  paths::WalkConfig walk;
  /// Extra walk lengths; each is estimated with the same paths and seed.
  std::vector<std::int64_t> sweep;
};
CommandResult cmd_simulate(const SimulateOptions& opts);

struct AnalyticOptions {
  EvalControl ctl;
  paths::WalkConfig walk;  // routes r4 (discrete) and r5 (continuous)
  bool skip_mc = false;
};
CommandResult cmd_analytic(const AnalyticOptions& opts);

struct VerifyOptions {
  EvalControl ctl;
  std::uint64_t seed = 0;
  std::int64_t mc_paths = 1'000'000;
  /// Added to A_digamma inside the kernel-pair identity (negative control).
  double a_kernel_perturbation = 0.0;
};

struct IdentityCheck {
  std::string name;
  double tolerance = 0.0;
  double deviation = 0.0;
  bool passed = false;
};

std::vector<IdentityCheck> run_identities(const VerifyOptions& opts);
CommandResult cmd_verify(const VerifyOptions& opts);

/// Human-oriented rendering of any command's document.
std::string render_text(const nlohmann::json& document);

/// Serialised JSON report, two-space indented, trailing newline.
std::string render_json(const nlohmann::json& document);

/// EvalControl for a --tol flag: rel_tol = tol, abs_tol = tol / 100.
EvalControl control_from_tol(double tol);

/// Positive integer from EXCURSION_MAX_THREADS, if set. Throws
/// InputError when set to anything else.
std::optional<int> workers_from_env();

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exmax::cli
