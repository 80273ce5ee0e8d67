#include <algorithm>
#include <cmath>
#include <variant>

#include "doctest.h"
#include "lvar/oracle.hpp"
#include "lvar/risk.hpp"
#include "lvar/solve.hpp"

using namespace lvar;

TEST_CASE("discretization places atoms at midpoint quantiles") {
  const auto d = LossDistribution::exponential(1.0);
  const auto inst = discretize(d, 4);
  REQUIRE(inst.atoms.size() == 4);
  CHECK(inst.atoms[0] == doctest::Approx(d.quantile(0.125)).epsilon(1e-14));
  CHECK(inst.atoms[3] == doctest::Approx(d.quantile(0.875)).epsilon(1e-14));
  CHECK(std::is_sorted(inst.atoms.begin(), inst.atoms.end()));
  CHECK_THROWS(discretize(d, 1));
}

TEST_CASE("discretized mean converges to the true mean") {
  const auto d = LossDistribution::exponential(1.0);
  CHECK(discretize(d, 20000).atom_mean() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("atom premium rules mirror the continuous ones") {
  const auto inst = discretize(LossDistribution::exponential(1.0), 5000);
  const auto full = IndemnityContract::full();
  CHECK(inst.premium(full, PremiumRule::expected_value(0.5)) ==
        doctest::Approx(1.5).epsilon(1e-2));
  const auto Lp = LambdaFunction::constant(0.8);
  CHECK(inst.premium(full, PremiumRule::pure_lambda_var(Lp)) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-2));
  const double e = inst.expected_indemnity(full);
  CHECK(inst.premium(full, PremiumRule::mixed(0.25, Lp)) ==
        doctest::Approx(e + 0.25 * (inst.premium(full, PremiumRule::pure_lambda_var(Lp)) - e))
            .epsilon(1e-12));
}

TEST_CASE("position risk value approximates the continuous solver input") {
  const auto d = LossDistribution::pareto(2.0);
  const auto L = LambdaFunction::two_level(0.9, 0.8, 1.0);
  const auto inst = discretize(d, 20000);
  const double own = inst.position_lambda_var(IndemnityContract::none(), 0.0, L);
  CHECK(own == doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-3));
}

TEST_CASE("grid search recovers the worked-example optimum") {
  const auto d = LossDistribution::pareto(2.0);
  const auto L = LambdaFunction::two_level(0.9, 0.8, 1.0);
  const auto inst = discretize(d, 500);
  const auto res = grid_search_truncated_stoploss(inst, L, 0.5, 60);
  const auto rep = solve_expected_general(d, L, 0.5);
  CHECK(res.best_value <= lambda_var(d, L).value + 1e-9);  // never worse than no cover
  CHECK(res.best_value == doctest::Approx(rep.optimal_value).epsilon(0.05));
  const auto* tsl = std::get_if<TruncatedStopLoss>(&res.best.variant());
  REQUIRE(tsl);
  CHECK(tsl->deductible == doctest::Approx(0.2247).epsilon(0.5));
}

TEST_CASE("degenerate one-point grid returns the uninsured value") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::constant(0.8);
  const auto inst = discretize(d, 500);
  const auto res = grid_search_truncated_stoploss(inst, L, 0.5, 1);
  CHECK(res.best_value ==
        doctest::Approx(inst.position_lambda_var(IndemnityContract::none(), 0.0, L))
            .epsilon(1e-12));
}

TEST_CASE("random challengers are seed-deterministic") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::constant(0.9);
  const auto inst = discretize(d, 200);
  const auto rep = solve_expected_general(d, L, 0.5);
  const auto a = random_indemnity_dominance(inst, L, PremiumRule::expected_value(0.5),
                                            rep.contract, 500, 7);
  const auto b = random_indemnity_dominance(inst, L, PremiumRule::expected_value(0.5),
                                            rep.contract, 500, 7);
  const auto c = random_indemnity_dominance(inst, L, PremiumRule::expected_value(0.5),
                                            rep.contract, 500, 8);
  CHECK(a.max_violation == b.max_violation);
  CHECK((a.max_violation != c.max_violation || a.max_violation <= 0.0));
}

TEST_CASE("two-point worst case approaches the moment bound from below") {
  // feasible when mu - sigma sqrt((1-alpha)/alpha) >= 0
  const double direct = mv_two_point_worstcase(1.0, 0.5, 0.8, 400);
  CHECK(direct == doctest::Approx(worst_case_var_mv(1.0, 0.5, 0.8)).epsilon(1e-4));
  CHECK(direct <= worst_case_var_mv(1.0, 0.5, 0.8) + 1e-12);
  CHECK_THROWS(mv_two_point_worstcase(-1.0, 0.5, 0.8, 400));
}
