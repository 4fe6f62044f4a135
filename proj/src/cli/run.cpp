// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "exmax/cli.hpp"
#include "exmax/errors.hpp"
#include "exmax/pc_routes.hpp"

namespace exmax::cli {
namespace {

const std::map<std::string, Format> kFormats{{"json", Format::json}, {"text", Format::text}};

struct WalkFlags {
  std::int64_t n = 10'000;
  std::int64_t paths = 200'000;
  std::uint64_t seed = 0;
  std::string law = "rademacher";
  std::optional<int> workers;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Walk length")->capture_default_str();
    cmd->add_option("--paths", paths, "Monte Carlo replications")->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    cmd->add_option("--step-law", law, "Step distribution")
        ->check(CLI::IsMember({"rademacher", "gaussian"}))
        ->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads (default: $EXCURSION_MAX_THREADS or 1)");
  }

  [[nodiscard]] paths::WalkConfig config() const {
    paths::WalkConfig w;
    w.n = n;
    w.paths = paths;
    w.seed = seed;
    w.step_law = paths::parse_step_law(law);
    w.workers = workers ? *workers : workers_from_env().value_or(1);
    return w;
  }
};

void emit(const CommandResult& result, Format format, std::ostream& out) {
  out << (format == Format::json ? render_json(result.document) : render_text(result.document));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability that the maximum of a local-score walk or reflected Brownian "
               "motion is reached on a complete excursion",
               kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Format format = Format::text;
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  };

  CLI::App* score = app.add_subcommand("score", "Local-score statistics of a score sequence");
  std::string input = "-";
  score->add_option("--input", input, "Score file, or - for standard input")->capture_default_str();
  add_format(score);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of p_c^(n)");
  WalkFlags sim_flags;
  sim_flags.attach(simulate);
  std::vector<std::int64_t> sweep;
  simulate->add_option("--sweep", sweep, "Additional walk lengths")->delimiter(',');
  add_format(simulate);

  CLI::App* analytic = app.add_subcommand("analytic", "All routes to p_c and the alpha check");
  WalkFlags an_flags;
  an_flags.attach(analytic);
  std::optional<double> an_tol;
  bool skip_mc = false;
  analytic->add_option("--tol", an_tol, "Relative tolerance (abs = tol/100)");
  analytic->add_flag("--skip-mc", skip_mc, "Skip the two Monte Carlo routes");
  add_format(analytic);

  CLI::App* verify = app.add_subcommand("verify", "Run the identity suite");
  std::optional<double> ver_tol;
  std::int64_t ver_paths = 1'000'000;
  std::uint64_t ver_seed = 0;
  bool inject_fault = false;
  verify->add_option("--tol", ver_tol, "Relative tolerance (abs = tol/100)");
  verify->add_option("--paths", ver_paths, "Samples for the Monte Carlo identity")
      ->capture_default_str();
  verify->add_option("--seed", ver_seed, "RNG seed")->capture_default_str();
  verify->add_flag("--inject-a-fault", inject_fault, "")->group("");
  add_format(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    CommandResult result;
    if (score->parsed()) {
      if (input == "-") {
        result = cmd_score(parse_scores(std::cin, "<stdin>"));
      } else {
        std::ifstream file(input, std::ios::binary);
        if (!file) {
          throw InputError(0, "cannot open '" + input + "'");
        }
        result = cmd_score(parse_scores(file, input));
      }
    } else if (simulate->parsed()) {
      SimulateOptions opts;
      opts.walk = sim_flags.config();
      opts.sweep = sweep;
      result = cmd_simulate(opts);
    } else if (analytic->parsed()) {
      AnalyticOptions opts;
      opts.ctl = an_tol ? control_from_tol(*an_tol) : pc::default_control();
      opts.walk = an_flags.config();
      opts.skip_mc = skip_mc;
      result = cmd_analytic(opts);
    } else {
      VerifyOptions opts;
      opts.ctl = ver_tol ? control_from_tol(*ver_tol) : EvalControl{};
      opts.seed = ver_seed;
      if (ver_paths < 1) {
        throw InputError(0, "--paths must be >= 1");
      }
      opts.mc_paths = ver_paths;
      opts.a_kernel_perturbation = inject_fault ? 1e-6 : 0.0;
      result = cmd_verify(opts);
    }
    emit(result, format, out);
    return result.exit_code;
  } catch (const InputError& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    err << kToolName << ": numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace exmax::cli
