#include "lvar/solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvar/bisect.hpp"
#include "lvar/risk.hpp"

namespace lvar {

namespace {

constexpr std::size_t kMaxProbes = 128;

void require_valid(const LambdaFunction& L) {
  auto v = L.validate();
  if (!v.ok) throw std::invalid_argument("invalid Lambda function: " + v.message);
}

double stoploss_constant_m(const LossDistribution& d, double theta) {
  const double d_star = d.quantile(theta / (1.0 + theta));
  const double tail = d.layer_expectation(d_star, kPlusInfinity);
  return is_finite(tail) ? d_star + (1.0 + theta) * tail : kPlusInfinity;
}

}  // namespace

double g_eval(const LossDistribution& d, const LambdaFunction& L, double theta, double x) {
  if (x < 0.0 || theta < 0.0) throw std::domain_error("g_eval: x and theta must be >= 0");
  const double d_star = d.quantile(theta / (1.0 + theta));
  const double v = d.quantile(L(x));
  if (v <= d_star) return v;
  const double layer = d.layer_expectation(d_star, v);
  if (!is_finite(layer)) return kPlusInfinity;
  return d_star + (1.0 + theta) * layer;
}

SolveReport solve_expected_general(const LossDistribution& d, const LambdaFunction& L,
                                   double theta) {
  require_valid(L);
  if (theta < 0.0) throw std::domain_error("solve_expected_general: theta must be >= 0");
  SolveReport rep;
  auto probe = [&](double x, double g) {
    if (rep.diagnostics.size() < kMaxProbes) rep.diagnostics.emplace_back(x, g);
  };
  const double x_star = inf_crossing([&](double x) {
    const double g = g_eval(d, L, theta, x);
    probe(x, g);
    return g <= x;
  });
  const double d_star = d.quantile(theta / (1.0 + theta));
  if (!is_finite(x_star)) {
    // acceptance set never reached: no-insurance value is the LambdaVaR itself
    rep.contract = IndemnityContract::none();
    rep.optimal_value = lambda_var(d, L).value;
    rep.effective_level = L.inf_level();
    rep.branch = "no_insurance_unbounded";
    return rep;
  }
  if (L.is_step()) {
    // record both one-sided G limits when x* sits at a Lambda jump
    const double delta = 1e-6;
    if (x_star > delta) probe(x_star - delta, g_eval(d, L, theta, x_star - delta));
    probe(x_star, g_eval(d, L, theta, x_star));
  }
  const double level = L(x_star);
  const double ceiling = d.quantile(level);
  rep.optimal_value = x_star;
  rep.effective_level = level;
  if (d_star <= ceiling && is_finite(ceiling)) {
    rep.contract = IndemnityContract::truncated_stop_loss(d_star, ceiling - d_star);
    rep.branch = "truncated_stop_loss";
  } else {
    rep.contract = IndemnityContract::none();
    rep.branch = "no_insurance";
  }
  return rep;
}

SolveReport solve_expected_stoploss(const LossDistribution& d, const LambdaFunction& L,
                                    double theta) {
  require_valid(L);
  if (theta < 0.0) throw std::domain_error("solve_expected_stoploss: theta must be >= 0");
  const double d_star = d.quantile(theta / (1.0 + theta));
  const double m = stoploss_constant_m(d, theta);
  const double lv = lambda_var(d, L).value;
  SolveReport rep;
  rep.diagnostics.emplace_back(d_star, m);
  if (m <= lv) {
    rep.contract = IndemnityContract::stop_loss(d_star);
    rep.optimal_value = m;
    rep.branch = "finite_deductible";
  } else {
    rep.contract = IndemnityContract::none();
    rep.optimal_value = lv;
    rep.branch = "infinite_deductible";
  }
  rep.effective_level = is_finite(rep.optimal_value) ? L(rep.optimal_value) : L.inf_level();
  return rep;
}

ExistenceResult existence_positive_finite_deductible(const LossDistribution& d,
                                                     const LambdaFunction& L, double theta) {
  require_valid(L);
  const double m = stoploss_constant_m(d, theta);
  if (!is_finite(m)) return {false, "stop-loss constant M is infinite", kPlusInfinity};
  const double theta_star = theta / (1.0 + theta);
  const double f0 = d.cdf(0.0);
  if (!(theta_star > f0))
    return {false, "theta* does not exceed the mass at zero", 0.0};
  // Lambda - F is weakly decreasing, so Lambda > F holds on all of [0, M)
  // exactly when the crossing point LambdaVaR(X) is at or beyond M.
  const double lv = lambda_var(d, L).value;
  if (lv >= m) return {true, "positive finite deductible", 0.0};
  return {false, "Lambda meets F below M", lv};
}

SolveReport solve_lambdavar_premium(const LossDistribution& d, const LambdaFunction& L,
                                    const LambdaFunction& Lp) {
  require_valid(L);
  require_valid(Lp);
  const double own = lambda_var(d, L).value;
  const double prem = lambda_var(d, Lp).value;
  SolveReport rep;
  rep.diagnostics.emplace_back(own, prem);
  if (prem < own) {
    rep.contract = IndemnityContract::full();
    rep.optimal_value = prem;
    rep.branch = "full_insurance";
    rep.effective_level = is_finite(prem) ? L(prem) : L.inf_level();
  } else {
    rep.contract = IndemnityContract::none();
    rep.optimal_value = own;
    rep.branch = "no_insurance";
    rep.effective_level = is_finite(own) ? L(own) : L.inf_level();
  }
  return rep;
}

SolveReport solve_mixed_premium(const LossDistribution& d, const LambdaFunction& L,
                                const LambdaFunction& Lp, double theta) {
  require_valid(L);
  require_valid(Lp);
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::domain_error("solve_mixed_premium: theta must lie in (0,1]");
  const double prem_var = lambda_var(d, Lp).value;
  SolveReport rep;
  auto comparison = [&](double x) {
    const double ceiling = d.quantile(L(x));
    const double capped_mean = d.layer_expectation(0.0, ceiling);
    if (!is_finite(capped_mean)) return kPlusInfinity;
    return (1.0 - theta) * capped_mean + theta * std::min(prem_var, ceiling);
  };
  const double x_star = inf_crossing([&](double x) {
    const double c = comparison(x);
    if (rep.diagnostics.size() < kMaxProbes) rep.diagnostics.emplace_back(x, c);
    return c <= x;
  });
  if (!is_finite(x_star)) {
    rep.contract = IndemnityContract::none();
    rep.optimal_value = lambda_var(d, L).value;
    rep.effective_level = L.inf_level();
    rep.branch = "no_insurance_unbounded";
    return rep;
  }
  const double level = L(x_star);
  rep.contract = IndemnityContract::dual_stop_loss(d.quantile(level));
  rep.optimal_value = comparison(x_star);
  rep.effective_level = level;
  rep.branch = "dual_stop_loss";
  return rep;
}

SolveReport solve_quota_share(const LossDistribution& d, const LambdaFunction& L, double theta) {
  require_valid(L);
  if (theta < 0.0) throw std::domain_error("solve_quota_share: theta must be >= 0");
  const double no_cover = lambda_var(d, L).value;
  const double mean = d.mean();
  SolveReport rep;
  const double full_cover = is_finite(mean) ? (1.0 + theta) * mean : kPlusInfinity;
  // grid corroboration of the bang-bang claim
  if (is_finite(mean)) {
    const auto base = d.sample(40001, 0x5eedULL);
    std::vector<double> shifted(base.size());
    for (int k = 0; k <= 100; ++k) {
      const double p = static_cast<double>(k) / 100.0;
      const double shift = p * full_cover;
      for (std::size_t i = 0; i < base.size(); ++i) shifted[i] = (1.0 - p) * base[i] + shift;
      rep.diagnostics.emplace_back(p, empirical_lambda_var(shifted, L));
    }
  }
  if (full_cover <= no_cover) {
    rep.contract = IndemnityContract::quota_share(1.0);
    rep.optimal_value = full_cover;
    rep.branch = "full_cover";
  } else {
    rep.contract = IndemnityContract::quota_share(0.0);
    rep.optimal_value = no_cover;
    rep.branch = "no_cover";
  }
  rep.effective_level =
      is_finite(rep.optimal_value) ? L(rep.optimal_value) : L.inf_level();
  return rep;
}

SolveReport solve_robust_lr(const LossDistribution& d, const LambdaFunction& L, double theta,
                            double beta) {
  SolveReport rep = solve_expected_general(d, L.lr_distort(beta), theta);
  rep.branch = "robust_lr/" + rep.branch;
  return rep;
}

SolveReport solve_robust_mv(double mu, double sigma, const LambdaFunction& L, double theta) {
  require_valid(L);
  if (!(mu > 0.0) || sigma < 0.0)
    throw std::domain_error("solve_robust_mv: requires mu > 0 and sigma >= 0");
  if (!(theta > 0.0)) throw std::domain_error("solve_robust_mv: theta must be positive");
  const double theta_star = theta / (1.0 + theta);
  const bool low_loading = theta <= (sigma * sigma) / (mu * mu);
  const double plateau = low_loading ? (1.0 + theta) * mu : mu + sigma * std::sqrt(theta);
  auto worst_value = [&](double level) {
    if (level >= theta_star) return plateau;
    return low_loading ? mu / (1.0 - level) : worst_case_var_mv(mu, sigma, level);
  };
  SolveReport rep;
  double x_star;
  if (L(plateau) >= theta_star) {
    // the comparison map equals the plateau on [0, plateau], so the fixed
    // point is the plateau itself, exactly
    x_star = plateau;
  } else if (const auto* c = std::get_if<ConstantLevel>(&L.variant())) {
    x_star = worst_value(c->level);
  } else {
    x_star = inf_crossing([&](double x) {
      const double w = worst_value(L(x));
      if (rep.diagnostics.size() < kMaxProbes) rep.diagnostics.emplace_back(x, w);
      return w <= x;
    });
  }
  rep.optimal_value = x_star;
  rep.effective_level = L(x_star);
  const bool at_plateau = x_star == plateau && L(plateau) >= theta_star;
  if (at_plateau) {
    const double deductible =
        low_loading ? 0.0 : mu - sigma * (1.0 - theta) / (2.0 * std::sqrt(theta));
    rep.contract = IndemnityContract::stop_loss(deductible);
    rep.branch = low_loading ? "low_loading_full_cover" : "high_loading_finite_deductible";
  } else {
    rep.contract = IndemnityContract::none();
    rep.branch = low_loading ? "low_loading_no_insurance" : "high_loading_no_insurance";
  }
  return rep;
}

}  // namespace lvar
