#include <cmath>

#include "doctest.h"
#include "lvar/json_io.hpp"

using namespace lvar;
using nlohmann::json;

TEST_CASE("distribution specs round-trip") {
  for (const char* text :
       {R"({"family":"pareto","alpha":2.0})", R"({"family":"exponential","rate":0.7})",
        R"({"family":"uniform","upper":3.0})", R"({"family":"lognormal","mu":0.1,"sigma":0.5})",
        R"({"family":"empirical","sample":[1.0,0.5,2.0]})"}) {
    const auto d = distribution_from_json(json::parse(text));
    const auto back = distribution_from_json(distribution_to_json(d));
    CHECK(distribution_to_json(back) == distribution_to_json(d));
  }
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"family":"cauchy"})")), ConfigError);
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"family":"pareto"})")), ConfigError);
}

TEST_CASE("lambda specs round-trip and are validated on parse") {
  for (const char* text :
       {R"({"kind":"constant","level":0.9})",
        R"({"kind":"two_level","high":0.9,"low":0.8,"threshold":1.0})",
        R"({"kind":"exp_affine","scale":0.09,"decay":1.0,"base":0.9})",
        R"({"kind":"piecewise_constant","breakpoints":[0.5,2.0],"levels":[0.99,0.7,0.4]})"}) {
    const auto L = lambda_from_json(json::parse(text));
    CHECK(lambda_to_json(lambda_from_json(lambda_to_json(L))) == lambda_to_json(L));
  }
  CHECK_THROWS_AS(
      lambda_from_json(json::parse(R"({"kind":"two_level","high":0.7,"low":0.8,"threshold":1})")),
      ConfigError);
}

TEST_CASE("premium and contract specs round-trip") {
  const auto rule = premium_from_json(
      json::parse(R"({"kind":"mixed","theta":0.25,"prime":{"kind":"constant","level":0.8}})"));
  CHECK(premium_to_json(premium_from_json(premium_to_json(rule))) == premium_to_json(rule));

  for (const char* text :
       {R"({"kind":"none"})", R"({"kind":"full"})", R"({"kind":"stop_loss","deductible":1.5})",
        R"({"kind":"stop_loss","deductible":"inf"})",
        R"({"kind":"truncated_stop_loss","deductible":0.2,"cap":1.9})",
        R"({"kind":"dual_stop_loss","ceiling":2.3})", R"({"kind":"quota_share","proportion":0.4})",
        R"({"kind":"piecewise_linear","knots":[0.0,1.0],"slopes":[0.0,1.0]})"}) {
    const auto f = contract_from_json(json::parse(text));
    CHECK(contract_to_json(contract_from_json(contract_to_json(f))) == contract_to_json(f));
  }
}

TEST_CASE("infinite values survive the round trip as tagged strings") {
  const auto f = contract_from_json(json::parse(R"({"kind":"stop_loss","deductible":"inf"})"));
  const auto j = contract_to_json(f);
  CHECK(j.at("deductible") == "inf");
  CHECK(decode_number(j.at("deductible"), "deductible") == kPlusInfinity);
}

TEST_CASE("solver reports round-trip") {
  SolveReport rep;
  rep.contract = IndemnityContract::truncated_stop_loss(0.25, 1.9);
  rep.optimal_value = 0.975;
  rep.effective_level = 0.9;
  rep.branch = "truncated_stop_loss";
  rep.diagnostics = {{0.0, 1.2}, {1.0, kPlusInfinity}};
  const auto j = report_to_json(rep);
  const auto back = report_from_json(j);
  CHECK(report_to_json(back) == j);
  CHECK(back.diagnostics[1].second == kPlusInfinity);
}

TEST_CASE("run configs are validated") {
  const auto ok = run_config_from_json(json::parse(
      R"({"problem":"expected_general",
          "distribution":{"family":"pareto","alpha":2.0},
          "lambda":{"kind":"two_level","high":0.9,"low":0.8,"threshold":1.0},
          "premium":{"kind":"expected_value","theta":0.5}})"));
  CHECK(ok.problem == "expected_general");
  REQUIRE(ok.distribution);
  REQUIRE(ok.premium);
  CHECK(ok.premium->theta == 0.5);

  CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"problem":"nonsense"})")), ConfigError);
  // missing premium for a premium-based problem
  CHECK_THROWS_AS(run_config_from_json(json::parse(
                      R"({"problem":"expected_general",
                          "distribution":{"family":"pareto","alpha":2.0},
                          "lambda":{"kind":"constant","level":0.9}})")),
                  ConfigError);
  // robust_mv needs moments, not a distribution
  CHECK_THROWS_AS(run_config_from_json(json::parse(
                      R"({"problem":"robust_mv","mu":1.0,
                          "lambda":{"kind":"constant","level":0.9},
                          "premium":{"kind":"expected_value","theta":0.5}})")),
                  ConfigError);
  // malformed sweep bounds
  CHECK_THROWS_AS(run_config_from_json(json::parse(
                      R"({"problem":"expected_general",
                          "distribution":{"family":"pareto","alpha":2.0},
                          "lambda":{"kind":"constant","level":0.9},
                          "premium":{"kind":"expected_value","theta":0.5},
                          "sweep":{"parameter":"theta","from":1.0,"to":0.5,"steps":5}})")),
                  ConfigError);
}

TEST_CASE("csv rows carry the contract parameters") {
  SolveReport rep;
  rep.contract = IndemnityContract::truncated_stop_loss(0.25, 1.9);
  rep.optimal_value = 0.975;
  rep.effective_level = 0.9;
  rep.branch = "truncated_stop_loss";
  const auto row = report_csv_row(0.5, rep);
  CHECK(row.find("0.5,") == 0);
  CHECK(row.find("truncated_stop_loss") != std::string::npos);
  CHECK(row.find("0.25") != std::string::npos);
  CHECK(row.find("1.9") != std::string::npos);
}
