// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectlab/constants.hpp"
#include "sectlab/functionals.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/verifier.hpp"

namespace {

using nlohmann::json;
using namespace sectlab;
using std::numbers::pi;

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

json body(const std::string& kind, int dim, json extra = json::object()) {
  json b = {{"kind", kind}, {"dim", dim}};
  for (auto it = extra.begin(); it != extra.end(); ++it) b[it.key()] = it.value();
  return b;
}
json ball(int n) { return body("euclidean_ball", n); }
json cube(int n) { return body("cube", n); }
json l1(int n) { return body("lp_ball", n, {{"p", 1.0}}); }
json poly(int n) { return body("random_h_polytope", n, {{"seed", 7}}); }

const json kLebesgue = {{"kind", "lebesgue"}};
const json kGaussian = {{"kind", "gaussian"}, {"sigma", 1.0}};

CheckBudget budget(json overrides = json::object()) {
  CheckBudget b;
  b.frames = overrides.value("frames", b.frames);
  b.sphere_samples = overrides.value("sphere_samples", b.sphere_samples);
  b.trials = overrides.value("trials", b.trials);
  b.points_per_frame = overrides.value("points_per_frame", b.points_per_frame);
  b.transforms = overrides.value("transforms", b.transforms);
  return b;
}

std::string label(const CheckReport& r) {
  std::string s = r.check_name + "(n=" + std::to_string(r.n) + ",k=" + std::to_string(r.k);
  if (r.inputs.contains("body")) s += "," + r.inputs.at("body").value("kind", std::string{});
  if (r.inputs.contains("measure")) s += "," + r.inputs.at("measure").value("kind", std::string{});
  return s + ")";
}

std::string describe(const CheckReport& r) {
  if (r.status == Status::kError) return label(r) + " error: " + r.error;
  return label(r) + " lhs " + fmt(std::exp(r.lhs.value)) + " rhs " + fmt(std::exp(r.rhs.value)) + " margin " +
         fmt(r.margin, 3) + " " + r.margin_units;
}

// Runs one entry and requires every report to pass.
std::vector<CheckReport> expect_pass(Outcome& o, json entry, const CheckBudget& b, int* count = nullptr) {
  auto reports = run_check(entry, b, kSeed);
  for (const auto& r : reports) {
    o.require(r.status == Status::kPass, describe(r));
    if (count) ++*count;
  }
  return reports;
}

// ---- criteria ------------------------------------------------------------------

Outcome exact_constants() {
  Outcome o;
  const auto rel = [&](double got, double want, const std::string& what) {
    o.require(std::abs(got / want - 1.0) <= 1e-10, what + " = " + fmt(got, 15) + ", want " + fmt(want, 15));
  };
  rel(constants::gamma_nk(2, 1).linear(), std::sqrt(pi) / 2, "gamma(2,1)");
  rel(constants::gamma_nk(4, 2).linear(), 1 / std::sqrt(2.0), "gamma(4,2)");
  rel(constants::log_bp_constant(2, 1).linear(), pi, "p(2,1)");
  rel(constants::log_bp_constant(3, 2).linear(), 4 * pi, "p(3,2)");
  rel(constants::log_bp_constant(4, 2).linear(), 8 * pi * pi, "p(4,2)");
  int cells = 0;
  for (int n = 2; n <= 200; ++n) {
    for (int k = 1; k < n; ++k, ++cells) {
      if (!constants::gamma_bounds_hold(n, k)) o.require(false, "gamma bounds at " + std::to_string(n) + "," + std::to_string(k));
    }
  }
  o.summary = "5 constants to 1e-10, gamma bounds on " + std::to_string(cells) + " cells";
  return o;
}

Outcome growth_ratio() {
  Outcome o;
  std::ofstream csv("lemma34_scan.csv");
  csv << "schema,n,k,gamma_nk,lemma34_ratio\n";
  csv.precision(17);
  double lo = 1e300, hi = 0;
  for (int n = 2; n <= 60; ++n) {
    for (int k = 1; k < n; ++k) {
      const double r = constants::lemma34_ratio(n, k);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      o.require(r >= 0.3 && r <= 5.0, "ratio(" + std::to_string(n) + "," + std::to_string(k) + ") = " + fmt(r));
      csv << "sectlab.scan.v1," << n << "," << k << "," << constants::gamma_nk(n, k).linear() << "," << r << "\n";
    }
  }
  o.require(static_cast<bool>(csv), "writing lemma34_scan.csv");
  o.summary = "ratio range [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "] for 2 <= n <= 60, CSV lemma34_scan.csv";
  return o;
}

Outcome bp_identity() {
  Outcome o;
  const auto first = expect_pass(o, {{"check", "bp_identity"}, {"body", ball(3)}, {"k", 1}},
                                 budget({{"frames", 500}, {"sphere_samples", 2000}, {"points_per_frame", 2000}}));
  const CheckReport& r = first.at(0);
  o.require(std::abs(std::exp(r.lhs.value) - 16 * pi * pi / 9) < 1e-9, "ball LHS is 16 pi^2 / 9");
  // cube and cross-polytope terms have a per-frame CV near 0.45, so frames carry the budget
  const CheckBudget heavy = budget({{"frames", 8000}, {"sphere_samples", 1000}, {"points_per_frame", 250}});
  int count = 1;
  for (int n : {3, 4}) {
    for (int k : {1, 2}) {
      for (const json& b : {cube(n), l1(n)}) expect_pass(o, {{"check", "bp_identity"}, {"body", b}, {"k", k}}, heavy, &count);
    }
  }
  o.summary = "ball R^3: " + fmt(std::exp(r.rhs.value)) + " vs " + fmt(std::exp(r.lhs.value)) + "; " +
              std::to_string(count) + " cells";
  return o;
}

Outcome sylvester_oracles() {
  Outcome o;
  const PointSource disc = PointSource::uniform(euclidean_ball(2));
  std::string s;
  for (const auto& [p, want] : {std::pair{1.0, 4 / (9 * pi * pi)}, std::pair{2.0, 1 / (std::sqrt(32.0) * pi)}}) {
    const Estimate e = sylvester(disc, 2, p, 20000, StreamHandle{kSeed, 0}.child(static_cast<std::uint64_t>(p)));
    const double z = (e.value - want) / e.std_error;
    o.require(std::abs(z) <= 3.0, "S_" + fmt(p, 1) + "(disc) = " + fmt(e.value) + " +- " + fmt(e.std_error, 2));
    s += "S_" + fmt(p, 1) + " " + fmt(e.value) + " (z " + fmt(z, 2) + "), ";
  }
  int count = 0;
  for (const json& b : {ball(2), cube(2), cube(3)}) {
    expect_pass(o, {{"check", "sylvester_monotone"}, {"body", b}}, budget(), &count);
  }
  o.summary = s + std::to_string(count) + " monotonicity reports";
  return o;
}

Outcome blaschke() {
  Outcome o;
  std::string s;
  for (const auto& [spec, want] : {std::pair{body("cube", 2, {{"half_width", 0.5}}), 1.0 / 144},
                                   std::pair{ball(2), 1.0 / 16}, std::pair{body("cube", 1), 1.0 / 3}}) {
    const auto r = expect_pass(o, {{"check", "blaschke"}, {"body", spec}}, budget()).at(0);
    const double lhs = std::exp(r.lhs.value);
    o.require(std::abs(r.lhs.value - std::log(want)) <= 3 * r.lhs.std_error,
              spec.dump() + " m! S_2^2 = " + fmt(lhs) + " against the exact " + fmt(want));
    s += fmt(lhs, 4) + " vs " + fmt(want, 4) + ", ";
  }
  o.summary = "m! S_2^2: " + s.substr(0, s.size() - 2);
  return o;
}

Outcome grinberg() {
  Outcome o;
  const Estimate phi = dual_affine_quermass(euclidean_ball(3), 1, 500, 2000, StreamHandle{kSeed, 0});
  o.require(std::abs(phi.value / 1.2090 - 1) <= 0.02, "Phi(ball) = " + fmt(phi.value));
  const auto inv = expect_pass(o, {{"check", "grinberg"}, {"body", cube(3)}, {"k", 1}}, budget({{"transforms", 5}}));
  o.require(inv.size() == 6, "expected 5 invariance reports and one maximality report");
  int count = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= std::min(2, n - 1); ++k) {
      for (const json& b : {cube(n), l1(n), poly(n)}) {
        expect_pass(o, {{"check", "grinberg"}, {"body", b}, {"k", k}}, budget({{"transforms", 0}}), &count);
      }
    }
  }
  o.summary = "Phi(ball R^3) = " + fmt(phi.value, 6) + ", 5 SL(3) maps of the cube, " + std::to_string(count) +
              " maximality cells";
  return o;
}

Outcome polar_product() {
  Outcome o;
  std::string s;
  for (const auto& [b, k, want] : {std::tuple{ball(3), 1, 0.5}, std::tuple{cube(3), 1, 0.5},
                                   std::tuple{ball(4), 2, 1 / std::sqrt(pi)}, std::tuple{cube(4), 2, 1 / std::sqrt(pi)}}) {
    const auto r = expect_pass(o, {{"check", "polar_product"}, {"body", b}, {"k", k}}, budget()).at(0);
    o.require(std::abs(std::exp(r.rhs.value) / want - 1) < 1e-9, "constant for " + b.dump());
    s += fmt(std::exp(r.lhs.value), 5) + " ";
  }
  o.summary = "W*I = " + s + "vs 1/2, 1/2, 1/sqrt(pi), 1/sqrt(pi)";
  return o;
}

// (lebesgue, gaussian) x (ball, cube, l1) x n <= 5 x k <= 2
template <class Fn>
void measure_grid(Fn&& fn) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= std::min(2, n - 1); ++k) {
      for (const json& g : {kLebesgue, kGaussian}) {
        for (const json& b : {ball(n), cube(n), l1(n)}) fn(json{{"body", b}, {"measure", g}, {"k", k}});
      }
    }
  }
}

Outcome dpp() {
  Outcome o;
  int count = 0;
  double worst_equality = 0;
  measure_grid([&](json e) {
    e["check"] = "dpp";
    const auto r = expect_pass(o, e, budget(), &count).at(0);
    if (e["measure"] == kLebesgue && e["body"]["kind"] == "euclidean_ball") {
      const double gap = std::abs(r.lhs.value - r.rhs.value);
      worst_equality = std::max(worst_equality, gap);
      o.require(gap < 1e-6, "ball/uniform not at equality: " + describe(r));
    }
  });
  o.summary = std::to_string(count) + " cells; ball/uniform log gap <= " + fmt(worst_equality, 2);
  return o;
}

Outcome chains() {
  Outcome o;
  int count = 0;
  measure_grid([&](json e) {
    for (const char* name : {"slicing_chain", "stability"}) {
      e["check"] = name;
      expect_pass(o, e, budget(), &count);
    }
  });
  const CheckBudget b = budget();
  const Estimate mu = measure_of_body(gaussian(1.0), euclidean_ball(3), b.sphere_samples, StreamHandle{kSeed, 1});
  const Estimate sec = measure_of_section(gaussian(1.0), euclidean_ball(3), Frame::axis_aligned(3, {0, 1}),
                                          b.sphere_samples, StreamHandle{kSeed, 2});
  o.require(std::abs(mu.value / 3.1302 - 1) < 0.01, "Gaussian measure of the ball " + fmt(mu.value));
  o.require(std::abs(sec.value / 2.4723 - 1) < 0.01, "Gaussian measure of the central disc " + fmt(sec.value));
  o.summary = std::to_string(count) + " chain reports; mu(B) = " + fmt(mu.value, 6) + ", mu(B cap F) = " +
              fmt(sec.value, 6);
  return o;
}

Outcome logconcave_identity() {
  Outcome o;
  std::string s;
  for (const json& b : {ball(3), cube(3)}) {
    const auto r = expect_pass(o, {{"check", "logconcave_identity"}, {"body", b}, {"measure", kGaussian}, {"k", 1}},
                               budget()).at(0);
    s += b.value("kind", std::string{}) + " gap " + fmt(r.margin, 3) + ", ";
  }
  o.summary = s.substr(0, s.size() - 2);
  return o;
}

Outcome busemann_petty() {
  Outcome o;
  int count = 0;
  expect_pass(o,
              {{"check", "busemann_petty"},
               {"body", cube(3)},
               {"body2", body("euclidean_ball", 3, {{"radius", std::sqrt(3.0)}})},
               {"k", 1}},
              budget(), &count);
  expect_pass(o,
              {{"check", "busemann_petty"},
               {"body", ball(3)},
               {"body2", body("euclidean_ball", 3, {{"radius", 2.0}})},
               {"k", 1}},
              budget(), &count);
  o.summary = std::to_string(count) + " pairs in R^3, k = 1";
  return o;
}

Outcome determinism() {
  Outcome o;
  const json config = default_suite_config(kSeed);
  const int before = worker_count();
  set_worker_count(1);
  const SuiteResult serial = run_suite(config);
  const std::string a = suite_json(serial).dump();
  set_worker_count(4);
  const std::string b = suite_json(run_suite(config)).dump();
  set_worker_count(before);
  o.require(a == b, "suite JSON differs between 1 and 4 workers");
  int failed = 0;
  for (const auto& r : serial.reports) failed += r.status == Status::kFail || r.status == Status::kError;
  o.summary = std::to_string(serial.reports.size()) + " reports, " + std::to_string(a.size()) +
              " bytes identical across 1 and 4 workers (suite status " + to_string(serial.status) + ", " +
              std::to_string(failed) + " failing)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact constants and gamma bounds", exact_constants},
      {"growth ratio band", growth_ratio},
      {"section identity", bp_identity},
      {"Sylvester oracles and monotonicity", sylvester_oracles},
      {"moment-covariance relation", blaschke},
      {"affine quermassintegral invariance and maximality", grinberg},
      {"polar product constant", polar_product},
      {"measure comparison grid", dpp},
      {"slicing and stability chains", chains},
      {"log-concave section identity", logconcave_identity},
      {"section dominance comparison", busemann_petty},
      {"suite determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.summary.c_str(), secs);
    for (const auto& f : o.failures) std::printf("       - %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
