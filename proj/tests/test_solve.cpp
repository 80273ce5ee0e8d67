#include <cmath>
#include <random>
#include <variant>

#include "doctest.h"
#include "lvar/risk.hpp"
#include "lvar/solve.hpp"

using namespace lvar;

namespace {

std::mt19937_64 g_rng(555);

LossDistribution random_distribution() {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (pick(g_rng)) {
    case 0: return LossDistribution::pareto(1.2 + 2.0 * unif(g_rng));
    case 1: return LossDistribution::exponential(0.4 + 2.0 * unif(g_rng));
    case 2: return LossDistribution::uniform(0.5 + 3.0 * unif(g_rng));
    default: return LossDistribution::log_normal(unif(g_rng) - 0.5, 0.3 + 0.8 * unif(g_rng));
  }
}

LambdaFunction random_lambda() {
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (pick(g_rng)) {
    case 0: return LambdaFunction::constant(0.55 + 0.44 * unif(g_rng));
    case 1: {
      const double low = 0.4 + 0.3 * unif(g_rng);
      const double high = low + (0.99 - low) * (0.2 + 0.7 * unif(g_rng));
      return LambdaFunction::two_level(high, low, 0.2 + 2.0 * unif(g_rng));
    }
    default: {
      const double base = 0.5 + 0.4 * unif(g_rng);
      const double scale = (1.0 - base) * 0.9 * unif(g_rng) + 1e-3;
      return LambdaFunction::exp_affine(scale, 0.5 + 2.0 * unif(g_rng), base);
    }
  }
}

}  // namespace

TEST_CASE("general solver reproduces the heavy-tailed worked example") {
  const auto rep = solve_expected_general(LossDistribution::pareto(2.0),
                                          LambdaFunction::two_level(0.9, 0.8, 1.0), 0.5);
  const auto* tsl = std::get_if<TruncatedStopLoss>(&rep.contract.variant());
  REQUIRE(tsl);
  CHECK(tsl->deductible == doctest::Approx((std::sqrt(6.0) - 2.0) / 2.0).epsilon(1e-12));
  CHECK(tsl->cap == doctest::Approx(1.9375327888).epsilon(1e-8));
  CHECK(rep.optimal_value == doctest::Approx(0.9751480938).epsilon(1e-8));
  CHECK(rep.effective_level == doctest::Approx(0.9));
}

TEST_CASE("general solver reproduces the light-tailed worked example") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::two_level(0.9, 0.8, 1.0);
  const auto rep = solve_expected_general(d, L, 0.5);
  const auto* tsl = std::get_if<TruncatedStopLoss>(&rep.contract.variant());
  REQUIRE(tsl);
  CHECK(tsl->deductible == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(tsl->cap == doctest::Approx(std::log(10.0 / 3.0)).epsilon(1e-6));
  CHECK(rep.optimal_value == doctest::Approx(1.1054651081).epsilon(1e-8));
  // one-sided values of the comparison map around the level breakpoint
  CHECK(g_eval(d, L, 0.5, 1.0 - 1e-9) == doctest::Approx(1.2554651081).epsilon(1e-8));
  CHECK(g_eval(d, L, 0.5, 1.0) == doctest::Approx(1.1054651081).epsilon(1e-8));
}

TEST_CASE("constant level collapses the comparison map to a constant") {
  for (int i = 0; i < 50; ++i) {
    const auto d = random_distribution();
    const double level = 0.6 + 0.007 * i;
    const auto L = LambdaFunction::constant(level);
    const double theta = 0.1 + 0.02 * i;
    const auto rep = solve_expected_general(d, L, theta);
    const double g0 = g_eval(d, L, theta, 0.0);
    CHECK(rep.optimal_value == doctest::Approx(std::min(g0, lambda_var(d, L).value))
                                   .epsilon(1e-8));
  }
}

TEST_CASE("stop-loss family value is the smaller of premium-and-deductible and the bare risk") {
  for (int i = 0; i < 100; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    const double theta = 0.05 + 0.9 * (i / 100.0);
    const auto rep = solve_expected_stoploss(d, L, theta);
    const double dstar = d.quantile(theta / (1.0 + theta));
    const double m = dstar + (1.0 + theta) * d.layer_expectation(dstar, kPlusInfinity);
    const double own = lambda_var(d, L).value;
    CHECK(rep.optimal_value == doctest::Approx(std::min(m, own)).epsilon(1e-9));
    if (m <= own) {
      const auto* sl = std::get_if<StopLoss>(&rep.contract.variant());
      REQUIRE(sl);
      CHECK(sl->deductible == doctest::Approx(dstar).epsilon(1e-12));
    }
  }
}

TEST_CASE("divergent-tail losses keep the no-insurance branch") {
  const auto d = LossDistribution::pareto(1.0);  // infinite mean
  const auto L = LambdaFunction::two_level(0.9, 0.8, 1.0);
  const auto rep = solve_expected_stoploss(d, L, 0.5);
  CHECK(rep.optimal_value == doctest::Approx(lambda_var(d, L).value).epsilon(1e-9));
  CHECK(std::holds_alternative<NoInsurance>(rep.contract.variant()));
}

TEST_CASE("existence of a positive finite deductible matches the solver branch") {
  int finite_seen = 0, infinite_seen = 0;
  for (int i = 0; i < 200; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    std::uniform_real_distribution<double> unif(0.05, 1.2);
    const double theta = unif(g_rng);
    const auto ex = existence_positive_finite_deductible(d, L, theta);
    const auto rep = solve_expected_stoploss(d, L, theta);
    const auto* sl = std::get_if<StopLoss>(&rep.contract.variant());
    const bool solver_finite = sl && is_finite(sl->deductible) && sl->deductible > 0.0;
    CHECK(ex.exists == solver_finite);
    (solver_finite ? finite_seen : infinite_seen)++;
  }
  CHECK(finite_seen > 0);
  CHECK(infinite_seen > 0);
}

TEST_CASE("pure level-based premium makes insurance bang-bang") {
  for (int i = 0; i < 100; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    const auto Lp = random_lambda();
    const auto rep = solve_lambdavar_premium(d, L, Lp);
    const double own = lambda_var(d, L).value;
    const double prem = lambda_var(d, Lp).value;
    CHECK(rep.optimal_value == doctest::Approx(std::min(own, prem)).epsilon(1e-9));
    if (prem < own)
      CHECK(std::holds_alternative<FullInsurance>(rep.contract.variant()));
    else
      CHECK(std::holds_alternative<NoInsurance>(rep.contract.variant()));
  }
}

TEST_CASE("identical premium level resolves the tie to no insurance") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::constant(0.8);
  const auto rep = solve_lambdavar_premium(d, L, L);
  CHECK(std::holds_alternative<NoInsurance>(rep.contract.variant()));
  CHECK(rep.optimal_value == doctest::Approx(std::log(5.0)).epsilon(1e-9));
}

TEST_CASE("mixed premium yields a dual stop-loss with the frozen fixed point") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::constant(0.9);
  const auto Lp = LambdaFunction::constant(0.8);
  const auto rep = solve_mixed_premium(d, L, Lp, 0.5);
  const auto* dsl = std::get_if<DualStopLoss>(&rep.contract.variant());
  REQUIRE(dsl);
  // 0.5 * E[X ^ VaR_0.9] + 0.5 * VaR_0.8 = 0.45 + 0.5 ln 5
  CHECK(rep.optimal_value == doctest::Approx(0.45 + 0.5 * std::log(5.0)).epsilon(1e-8));
  CHECK(dsl->ceiling == doctest::Approx(std::log(10.0)).epsilon(1e-6));
}

TEST_CASE("mixed premium never exceeds the uninsured risk value") {
  for (int i = 0; i < 100; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    const auto Lp = random_lambda();
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    const auto rep = solve_mixed_premium(d, L, Lp, unif(g_rng));
    CHECK(rep.optimal_value <= lambda_var(d, L).value + 1e-9);
  }
}

TEST_CASE("proportional cover is bang-bang at the endpoints") {
  const auto d = LossDistribution::exponential(1.0);
  const auto L = LambdaFunction::constant(0.95);
  // cheap cover: (1+theta) E[X] = 1.1 < VaR_0.95 = ln 20
  const auto cheap = solve_quota_share(d, L, 0.1);
  const auto* qfull = std::get_if<QuotaShare>(&cheap.contract.variant());
  REQUIRE(qfull);
  CHECK(qfull->proportion == 1.0);
  CHECK(cheap.optimal_value == doctest::Approx(1.1).epsilon(1e-9));
  // expensive cover: loading pushes the premium beyond the bare risk
  const auto L2 = LambdaFunction::constant(0.6);
  const auto dear = solve_quota_share(d, L2, 1.0);
  const auto* qnone = std::get_if<QuotaShare>(&dear.contract.variant());
  REQUIRE(qnone);
  CHECK(qnone->proportion == 0.0);
  CHECK(dear.optimal_value == doctest::Approx(lambda_var(d, L2).value).epsilon(1e-9));
}

TEST_CASE("density-bound robustness at beta = 1 equals the plain solver bit for bit") {
  for (int i = 0; i < 20; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    const double theta = 0.2 + 0.03 * i;
    const auto plain = solve_expected_general(d, L, theta);
    const auto robust = solve_robust_lr(d, L, theta, 1.0);
    CHECK(robust.optimal_value == plain.optimal_value);
    CHECK(robust.effective_level == plain.effective_level);
    const auto* a = std::get_if<TruncatedStopLoss>(&plain.contract.variant());
    const auto* b = std::get_if<TruncatedStopLoss>(&robust.contract.variant());
    if (a && b) {
      CHECK(a->deductible == b->deductible);
      CHECK(a->cap == b->cap);
    } else {
      CHECK(plain.contract.kind_name() == robust.contract.kind_name());
    }
  }
}

TEST_CASE("density-bound robustness is monotone in the bound") {
  for (int i = 0; i < 50; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    double prev = kPlusInfinity;
    for (double beta : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      const double v = solve_robust_lr(d, L, 0.25, beta).optimal_value;
      CHECK(v <= prev + 1e-9);  // larger beta shrinks the uncertainty set
      prev = v;
    }
  }
}

TEST_CASE("moment-robust closed forms on the high-loading branch") {
  // mu=1, sigma=0.5, theta=0.5 > sigma^2/mu^2
  const auto L = LambdaFunction::constant(0.9);
  const auto rep = solve_robust_mv(1.0, 0.5, L, 0.5);
  const double plateau = 1.0 + 0.5 * std::sqrt(0.5);
  // level 0.9 >= theta* = 1/3, so the plateau is the fixed point exactly
  CHECK(rep.optimal_value == plateau);
  const auto* sl = std::get_if<StopLoss>(&rep.contract.variant());
  REQUIRE(sl);
  CHECK(sl->deductible == doctest::Approx(1.0 - 0.5 * 0.5 / (2.0 * std::sqrt(0.5)))
                              .epsilon(1e-12));
}

TEST_CASE("moment-robust closed forms on the low-loading branch") {
  // theta = 0.2 <= sigma^2/mu^2 = 0.25: plateau (1+theta) mu with full cover at l* = 0
  const auto L = LambdaFunction::constant(0.9);
  const auto rep = solve_robust_mv(1.0, 0.5, L, 0.2);
  CHECK(rep.optimal_value == 1.2);
  const auto* sl = std::get_if<StopLoss>(&rep.contract.variant());
  REQUIRE(sl);
  CHECK(sl->deductible == 0.0);
}

TEST_CASE("moment-robust solver rejects a zero loading") {
  CHECK_THROWS(solve_robust_mv(1.0, 0.5, LambdaFunction::constant(0.9), 0.0));
}

TEST_CASE("no feasible contract beats doing nothing") {
  for (int i = 0; i < 500; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    const double theta = unif(g_rng);
    const double own = lambda_var(d, L).value;
    CHECK(solve_expected_general(d, L, theta).optimal_value <= own + 1e-9);
    CHECK(solve_expected_stoploss(d, L, theta).optimal_value <= own + 1e-9);
    CHECK(solve_quota_share(d, L, theta).optimal_value <= own + 1e-9);
  }
}

TEST_CASE("the general class is at least as good as the stop-loss family") {
  for (int i = 0; i < 500; ++i) {
    const auto d = random_distribution();
    const auto L = random_lambda();
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    const double theta = unif(g_rng);
    const double general = solve_expected_general(d, L, theta).optimal_value;
    const double stoploss = solve_expected_stoploss(d, L, theta).optimal_value;
    CHECK(general <= stoploss + 1e-8);
  }
}
