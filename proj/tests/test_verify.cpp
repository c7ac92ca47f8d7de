#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bandlimit/extremal.hpp"
#include "bandlimit/verify.hpp"
#include "doctest.h"

using namespace bandlimit;

namespace {

const std::vector<std::string> kExpectedIds = {
    "sign_condition_truncated", "ba_error_closed_form",   "sandwich_truncated",
    "minorant_error",           "majorant_error",         "odd_sign_condition",
    "odd_sandwich",             "interpolation_best",     "interpolation_onesided",
    "theta_transformations",    "theta1_theta2_link",     "lemma_theta2_signs",
    "theta_ratio_bound",        "laplace_theta_negative", "sum_inequalities",
    "dawson_bounds",            "dawson_moments",         "integral_representations",
    "truncated_theta_inequalities", "growth_estimates",   "ft_truncated",
    "fourier_sum_identity",     "poisson_value",          "h_asymptotics",
    "measure_point_mass",       "measure_linearity",      "arctan_example"};

}  // namespace

TEST_CASE("registry covers every expected id") {
  for (const auto& id : kExpectedIds) {
    INFO(id);
    CHECK(verify::is_registered(id));
  }
  std::set<std::string> seen;
  for (const auto& info : verify::registry()) {
    CHECK(seen.insert(info.id).second);
    CHECK_FALSE(info.anchor.empty());
    CHECK(info.tolerance != 0.0);
  }
  CHECK_FALSE(verify::is_registered("nonexistent"));
  CHECK_THROWS_AS(verify::run_check("nonexistent"), std::out_of_range);
}

TEST_CASE("fast profile lists each check once and passes") {
  const auto reports = verify::run_all(verify::Profile::Fast, 4);
  REQUIRE(reports.size() == verify::registry().size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    INFO(reports[i].id << " " << reports[i].witness);
    CHECK(reports[i].id == verify::registry()[i].id);
    CHECK(reports[i].passed);
    CHECK(reports[i].passed == (reports[i].max_violation <= reports[i].tolerance));
  }
}

TEST_CASE("individual checks") {
  verify::CheckConfig cfg;
  cfg.lambdas = {1.0};
  const auto sign = verify::run_check("sign_condition_truncated", cfg);
  CHECK(sign.passed);
  CHECK(sign.max_violation < 1e-10);
  CHECK_FALSE(sign.witness.empty());
  CHECK(verify::run_check("sandwich_truncated", cfg).passed);
  const auto dawson = verify::run_check("dawson_bounds");
  CHECK(dawson.passed);
  CHECK(dawson.id == "dawson_bounds");
}

TEST_CASE("tolerance override tightens a check") {
  verify::CheckConfig cfg;
  cfg.profile = verify::Profile::Fast;
  cfg.tolerance = -1.0;
  CHECK_FALSE(verify::run_check("poisson_value", cfg).passed);
}

TEST_CASE("negative control: perturbed best approximation") {
  verify::CheckConfig cfg;
  cfg.profile = verify::Profile::Fast;
  cfg.best_truncated_override = [](double lam, double x) {
    return eval_best_truncated(lam, x) + 1e-3;
  };
  const auto interp = verify::run_check("interpolation_best", cfg);
  CHECK_FALSE(interp.passed);
  CHECK(interp.max_violation > 1e-4);
  CHECK_FALSE(verify::run_check("sign_condition_truncated", cfg).passed);
  // Unperturbed control.
  cfg.best_truncated_override = nullptr;
  CHECK(verify::run_check("interpolation_best", cfg).passed);
}

TEST_CASE("reports are deterministic across thread counts") {
  verify::CheckConfig cfg;
  cfg.profile = verify::Profile::Fast;
  const std::vector<std::string> ids = {"interpolation_best", "dawson_bounds", "theta_ratio_bound",
                                        "poisson_value", "ft_truncated", "measure_linearity"};
  const auto a = verify::to_json(verify::run_selected(ids, cfg, 1));
  const auto b = verify::to_json(verify::run_selected(ids, cfg, 4));
  CHECK(a == b);
}

TEST_CASE("JSON report fields") {
  verify::CheckConfig cfg;
  cfg.profile = verify::Profile::Fast;
  const auto doc = nlohmann::json::parse(
      verify::to_json(verify::run_selected({"dawson_bounds", "poisson_value"}, cfg)));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  for (const auto& r : doc) {
    for (const char* key : {"id", "anchor", "max_violation", "tolerance", "grid", "passed"}) {
      CHECK(r.contains(key));
    }
    CHECK(r["passed"].get<bool>());
  }
  CHECK(doc[0]["id"] == "dawson_bounds");
  CHECK_THROWS_AS(verify::run_selected({"dawson_bounds", "bogus"}, cfg), std::out_of_range);
}
