#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectlab/stats.hpp"

namespace sectlab {

enum class Relation { kEqual, kLessEqual };
enum class Status { kPass, kFail, kError, kHypothesisFails };

std::string to_string(Relation r);
std::string to_string(Status s);

/// Outcome of one check. lhs and rhs are log-domain estimates.
struct CheckReport {
  std::string check_name;
  int n = 0;
  int k = 0;
  Estimate lhs;
  Estimate rhs;
  Relation relation = Relation::kLessEqual;
  /// For "=": relative gap |L - R| / R. For "<=": (R - L) in combined
  /// standard errors, or the relative slack (R - L) / R when both sides are exact.
  double margin = 0.0;
  std::string margin_units;
  bool pass = false;
  Status status = Status::kFail;
  std::string tolerance_rule;
  nlohmann::json inputs = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();
  std::string error;
};

/// Relative floor added to every tolerance so that exact-vs-exact
/// comparisons survive floating rounding.
inline constexpr double kExactFloor = 1e-9;
inline constexpr double kEqualGap = 0.02;
inline constexpr double kSigmas = 3.0;

struct EqualOptions {
  bool require_gap = true;
  double gap = kEqualGap;
};

/// Fills relation, margin, pass, status and tolerance_rule.
///   "=":  |L - R| <= 3 sqrt(se_L^2 + se_R^2) + floor, and |L - R| / R <= 2%
///   "<=": L <= R (1 + 3 sqrt(rse_L^2 + rse_R^2)) (1 + floor)
void judge_equal(CheckReport& r, EqualOptions opts = {});
void judge_less_equal(CheckReport& r);

/// Report for a check that threw; status error.
CheckReport error_report(std::string check_name, int n, int k, std::string message);

/// Version and git description baked in at configure time.
const char* build_id();

nlohmann::json estimate_json(const Estimate& log_estimate);
nlohmann::json to_json(const CheckReport& r);

}  // namespace sectlab
