// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "exmax/cli.hpp"
#include "exmax/errors.hpp"
#include "exmax/pc_routes.hpp"

namespace exmax::cli {
namespace {

using nlohmann::json;

json envelope(const char* command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = kToolName;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  return doc;
}

json quad_json(const quadrature::QuadratureResult& r) {
  return {{"value", round12(r.value)},
          {"err_estimate", round12(r.err_estimate)},
          {"evals", r.evals},
          {"converged", r.converged}};
}

json mc_json(const paths::McEstimate& e) {
  return {{"p_hat", round12(e.p_hat)},
          {"std_err", round12(e.std_err)},
          {"paths", e.paths},
          {"successes", e.successes},
          {"n", e.n}};
}

json walk_json(const paths::WalkConfig& w) {
  return {{"n", w.n},
          {"paths", w.paths},
          {"seed", w.seed},
          {"step_law", std::string(paths::to_string(w.step_law))},
          {"workers", w.workers}};
}

json control_json(const EvalControl& c) {
  return {{"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"max_terms", c.max_terms},
          {"max_evals", c.max_evals}};
}

}  // namespace

double round12(double value) {
  if (!std::isfinite(value)) {
    return value;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

EvalControl control_from_tol(double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) {
    throw InputError(0, "--tol must lie in (0, 1)");
  }
  EvalControl ctl;
  ctl.rel_tol = tol;
  ctl.abs_tol = tol * 1e-2;
  return ctl;
}

std::optional<int> workers_from_env() {
  const char* raw = std::getenv("EXCURSION_MAX_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return std::nullopt;
  }
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096) {
    throw InputError(0, std::string("EXCURSION_MAX_THREADS must be a positive integer, got '") +
                            raw + "'");
  }
  return int(value);
}

CommandResult cmd_score(const ScoreSequence& input) {
  const paths::LocalScoreSummary s = paths::local_score_stats(input.values);
  json doc = envelope("score");
  doc["inputs"] = {{"source", input.source}, {"length", input.values.size()}};
  doc["results"] = {{"u_bar", s.u_bar},          {"u_star", s.u_star},
                    {"u_dstar", s.u_dstar},      {"g_n", s.g_n},
                    {"theta_star", s.theta_star}, {"complete", s.complete}};
  doc["status"] = "ok";
  return {doc, kExitOk};
}

CommandResult cmd_simulate(const SimulateOptions& opts) {
  try {
    opts.walk.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(0, e.what());
  }
  for (const std::int64_t n : opts.sweep) {
    if (n < 1) {
      throw InputError(0, "--sweep lengths must be >= 1");
    }
  }
  json doc = envelope("simulate");
  json inputs = walk_json(opts.walk);
  inputs["sweep"] = opts.sweep;
  doc["inputs"] = inputs;
  doc["seed"] = opts.walk.seed;

  json estimates = json::array();
  estimates.push_back(mc_json(paths::estimate_pc_n(opts.walk)));
  for (const std::int64_t n : opts.sweep) {
    paths::WalkConfig walk = opts.walk;
    walk.n = n;
    estimates.push_back(mc_json(paths::estimate_pc_n(walk)));
  }
  doc["results"] = {{"estimates", estimates}};
  doc["status"] = "ok";
  return {doc, kExitOk};
}

CommandResult cmd_analytic(const AnalyticOptions& opts) {
  try {
    opts.walk.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(0, e.what());
  }
  pc::ReportOptions ropts;
  ropts.run_discrete_mc = !opts.skip_mc;
  ropts.run_continuous_mc = !opts.skip_mc;
  const pc::PcReport r = pc::build_report(opts.walk, opts.walk.paths, opts.ctl, ropts);

  json doc = envelope("analytic");
  json inputs = walk_json(opts.walk);
  inputs["control"] = control_json(opts.ctl);
  inputs["skip_mc"] = opts.skip_mc;
  doc["inputs"] = inputs;
  doc["seed"] = opts.walk.seed;

  json results;
  results["r1_closed_form"] = round12(r.r1_closed_form);
  results["r2_lemma_integral"] = quad_json(r.r2_lemma_integral);
  results["r3_expectation"] = quad_json(r.r3_expectation);
  results["alpha_check"] = quad_json(r.alpha_check);
  results["alpha_exact"] = round12((std::numbers::pi / 2.0 - 1.0) / (2.0 * std::numbers::pi));
  results["alpha_reconstruction"] = round12(r.alpha_reconstruction);
  results["max_analytic_discrepancy"] = round12(r.max_analytic_discrepancy);
  if (!opts.skip_mc) {
    results["r4_monte_carlo"] = mc_json(r.r4_monte_carlo);
    results["r5_continuous_mc"] = mc_json(r.r5_continuous_mc);
  }
  results["partial"] = r.partial;
  if (r.partial) {
    results["failed_route"] = r.failed_route;
    results["failure"] = r.failure;
  }
  doc["results"] = results;
  doc["status"] = r.partial ? "failed" : "ok";
  return {doc, r.partial ? kExitNumeric : kExitOk};
}

CommandResult cmd_verify(const VerifyOptions& opts) {
  const std::vector<IdentityCheck> checks = run_identities(opts);
  json doc = envelope("verify");
  doc["inputs"] = {{"control", control_json(opts.ctl)},
                   {"mc_paths", opts.mc_paths},
                   {"seed", opts.seed}};
  doc["seed"] = opts.seed;
  json list = json::array();
  bool all = true;
  for (const IdentityCheck& c : checks) {
    list.push_back({{"name", c.name},
                    {"tolerance", round12(c.tolerance)},
                    {"deviation", round12(c.deviation)},
                    {"passed", c.passed}});
    all = all && c.passed;
  }
  doc["results"] = {{"identities", list}, {"all_passed", all}};
  doc["status"] = all ? "ok" : "failed";
  return {doc, all ? kExitOk : kExitVerification};
}

}  // namespace exmax::cli
