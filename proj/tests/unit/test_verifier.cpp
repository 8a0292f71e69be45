#include <gtest/gtest.h>

#include "sectlab/parallel.hpp"
#include "sectlab/verifier.hpp"

using namespace sectlab;
using nlohmann::json;

namespace {

const json kBall3 = {{"kind", "euclidean_ball"}, {"dim", 3}};
const json kCube3 = {{"kind", "cube"}, {"dim", 3}};

CheckBudget small_budget() {
  CheckBudget b;
  b.frames = 200;
  b.sphere_samples = 400;
  b.points_per_frame = 400;
  return b;
}

}  // namespace

TEST(Verifier, IdentityOnBall) {
  const auto reports = run_check({{"check", "bp_identity"}, {"body", kBall3}, {"k", 1}}, CheckBudget{}, 7);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].status, Status::kPass) << to_json(reports[0]).dump();
  EXPECT_EQ(reports[0].relation, Relation::kEqual);
}

TEST(Verifier, DppEqualityForUniformBall) {
  const auto r = run_check({{"check", "dpp"}, {"body", kBall3}, {"k", 1}}, small_budget(), 7).at(0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs.value, r.rhs.value, 1e-9);
}

TEST(Verifier, ReverseIsANegativeControl) {
  const json entry = {{"check", "slicing_chain"},
                      {"body", kCube3},
                      {"measure", {{"kind", "gaussian"}, {"sigma", 1.0}}},
                      {"k", 1},
                      {"reverse", true}};
  const auto r = run_check(entry, small_budget(), 7).at(0);
  EXPECT_EQ(r.status, Status::kFail);
}

TEST(Verifier, HypothesisFailureIsReported) {
  const json entry = {{"check", "busemann_petty"},
                      {"body", {{"kind", "euclidean_ball"}, {"dim", 3}, {"radius", 2.0}}},
                      {"body2", kBall3},
                      {"k", 1}};
  EXPECT_EQ(run_check(entry, small_budget(), 7).at(0).status, Status::kHypothesisFails);
}

TEST(Verifier, ErrorsBecomeReports) {
  const auto r = run_check({{"check", "bp_identity"}, {"body", {{"kind", "nope"}, {"dim", 3}}}}, small_budget(), 7);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].status, Status::kError);
  EXPECT_FALSE(r[0].error.empty());
  const auto k_bad = run_check({{"check", "dpp"}, {"body", kBall3}, {"k", 3}}, small_budget(), 7);
  EXPECT_EQ(k_bad.at(0).status, Status::kError);
}

TEST(Verifier, GrinbergReportsPerTransform) {
  CheckBudget b = small_budget();
  b.transforms = 2;
  const auto reports = run_check({{"check", "grinberg"}, {"body", kCube3}, {"k", 1}}, b, 7);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports.back().relation, Relation::kLessEqual);
  EXPECT_TRUE(reports.back().pass);
}

TEST(Verifier, GridExpansionSkipsInvalidCells) {
  const json config = {{"grids",
                        {{{"checks", {"dpp", "logconcave_identity"}},
                          {"n", {2, 3}},
                          {"k", {1, 2}},
                          {"bodies", {{{"kind", "cube"}}}},
                          {"measures", {{{"kind", "gaussian"}}, {{"kind", "radial_exp"}}}}}}}};
  // (2,1) (3,1) (3,2) x 2 measures for each check
  const auto entries = expand_suite(config);
  EXPECT_EQ(entries.size(), 12u);
  for (const auto& e : entries) EXPECT_LT(e.at("k").get<int>(), e.at("body").at("dim").get<int>());
}

TEST(Verifier, SuiteIsIndependentOfWorkers) {
  json config = {{"seed", 3},
                 {"budget", {{"frames", 60}, {"sphere_samples", 100}, {"points_per_frame", 100}, {"trials", 500}}},
                 {"grids",
                  {{{"checks", {"dpp", "stability", "holder_chain"}},
                    {"n", {3}},
                    {"k", {1, 2}},
                    {"bodies", {{{"kind", "cube"}}, {{"kind", "lp_ball"}, {"p", 1.0}}}},
                    {"measures", {{{"kind", "gaussian"}}}}}}}};
  const int before = worker_count();
  set_worker_count(1);
  const std::string one = suite_json(run_suite(config)).dump();
  set_worker_count(4);
  const std::string four = suite_json(run_suite(config)).dump();
  set_worker_count(before);
  EXPECT_EQ(one, four);
}

TEST(Verifier, CheckNamesDispatch) {
  EXPECT_EQ(check_names().size(), 12u);
  const auto r = run_check({{"check", "unknown"}, {"body", kBall3}}, small_budget(), 7);
  EXPECT_EQ(r.at(0).status, Status::kError);
}
