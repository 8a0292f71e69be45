#include "sectlab/report.hpp"

#include <cmath>
#include <limits>

namespace sectlab {

std::string to_string(Relation r) { return r == Relation::kEqual ? "=" : "<="; }

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kError:
      return "error";
    case Status::kHypothesisFails:
      return "hypothesis_fails";
  }
  return "unknown";
}

void judge_equal(CheckReport& r, EqualOptions opts) {
  const Estimate l = to_log(r.lhs);
  const Estimate rr = to_log(r.rhs);
  r.lhs = l;
  r.rhs = rr;
  r.relation = Relation::kEqual;
  // Everything scaled by R so that huge powers stay finite.
  const double ratio = std::exp(l.value - rr.value);
  const double gap = std::abs(ratio - 1.0);
  const double combined = std::hypot(ratio * l.std_error, rr.std_error);
  const bool within_se = gap <= kSigmas * combined + kExactFloor * std::max(1.0, ratio);
  const bool within_gap = !opts.require_gap || gap <= opts.gap + kExactFloor;
  r.margin = gap;
  r.margin_units = "relative gap";
  r.pass = within_se && within_gap;
  r.status = r.pass ? Status::kPass : Status::kFail;
  r.tolerance_rule = "|L-R| <= 3*combined SE + 1e-9 relative";
  if (opts.require_gap) r.tolerance_rule += " and |L-R|/R <= " + std::to_string(opts.gap);
  r.extra["combined_relative_se"] = combined;
}

void judge_less_equal(CheckReport& r) {
  const Estimate l = to_log(r.lhs);
  const Estimate rr = to_log(r.rhs);
  r.lhs = l;
  r.rhs = rr;
  r.relation = Relation::kLessEqual;
  const double rel_se = std::hypot(l.std_error, rr.std_error);
  const double ratio = std::exp(l.value - rr.value);
  r.pass = l.value <= rr.value + std::log1p(kSigmas * rel_se) + std::log1p(kExactFloor);
  r.status = r.pass ? Status::kPass : Status::kFail;
  if (rel_se > 0.0) {
    r.margin = (1.0 - ratio) / rel_se;
    r.margin_units = "combined standard errors";
  } else {
    r.margin = 1.0 - ratio;
    r.margin_units = "relative slack (exact sides)";
  }
  r.tolerance_rule = "L <= R*(1 + 3*combined relative SE)*(1 + 1e-9)";
  r.extra["combined_relative_se"] = rel_se;
}

CheckReport error_report(std::string check_name, int n, int k, std::string message) {
  CheckReport r;
  r.check_name = std::move(check_name);
  r.n = n;
  r.k = k;
  r.pass = false;
  r.status = Status::kError;
  r.error = std::move(message);
  return r;
}

nlohmann::json estimate_json(const Estimate& e) {
  const Estimate l = e.log_domain ? e : to_log(e);
  const double value = std::exp(l.value);
  nlohmann::json j;
  j["value"] = std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
  j["log"] = l.value;
  j["se"] = std::isfinite(value) ? nlohmann::json(value * l.std_error) : nlohmann::json(nullptr);
  j["log_se"] = l.std_error;
  j["n_samples"] = l.n_samples;
  j["rule"] = l.rule;
  return j;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["n"] = r.n;
  j["k"] = r.k;
  j["status"] = to_string(r.status);
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["inputs"] = r.inputs;
  if (r.status == Status::kError) {
    j["error"] = r.error;
    return j;
  }
  j["lhs"] = estimate_json(r.lhs);
  j["rhs"] = estimate_json(r.rhs);
  j["relation"] = to_string(r.relation);
  j["margin"] = std::isfinite(r.margin) ? nlohmann::json(r.margin) : nlohmann::json(nullptr);
  j["margin_units"] = r.margin_units;
  j["tolerance_rule"] = r.tolerance_rule;
  j["notes"] = r.notes;
  j["extra"] = r.extra;
  return j;
}

const char* build_id() { return SECTLAB_BUILD_ID; }

}  // namespace sectlab
