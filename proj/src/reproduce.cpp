#include "lvar/reproduce.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "lvar/parallel.hpp"
#include "lvar/risk.hpp"
#include "lvar/solve.hpp"

namespace lvar {
namespace {

constexpr double kTrendSlack = 1e-9;

struct SweepPlan {
  std::string header;        // CSV header line
  std::string claim;         // qualitative statement being checked
  bool increasing = false;   // expected direction of the column
  std::vector<double> grid;
  std::function<double(double)> column;
};

std::vector<double> linspace(double from, double to, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

LambdaFunction section_lambda() { return LambdaFunction::exp_affine(0.09, 1.0, 0.9); }

ReproduceResult run_sweep(const std::string& target, const SweepPlan& plan) {
  ReproduceResult res;
  res.target = target;
  res.rows.resize(plan.grid.size());
  parallel_for(plan.grid.size(), [&](std::size_t i) {
    res.rows[i] = {plan.grid[i], plan.column(plan.grid[i])};
  });

  bool monotone = true;
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    const double step = res.rows[i].column - res.rows[i - 1].column;
    if (plan.increasing ? step < -kTrendSlack : step > kTrendSlack) monotone = false;
  }
  res.trends_ok = monotone;

  std::ostringstream csv;
  csv.precision(12);
  csv << plan.header << '\n';
  for (const auto& row : res.rows) csv << row.parameter << ',' << row.column << '\n';
  res.csv = csv.str();

  std::ostringstream sum;
  sum << target << ": " << plan.claim << " -> " << (monotone ? "holds" : "VIOLATED") << " over "
      << res.rows.size() << " points";
  res.summary = sum.str();
  return res;
}

ReproduceResult worked_examples() {
  ReproduceResult res;
  res.target = "example1";

  const auto L = LambdaFunction::two_level(0.9, 0.8, 1.0);
  const double theta = 0.5;

  const auto pareto = LossDistribution::pareto(2.0);
  const auto rep_i = solve_expected_general(pareto, L, theta);
  const auto* tsl_i = std::get_if<TruncatedStopLoss>(&rep_i.contract.variant());
  if (!tsl_i) throw std::runtime_error("pareto case: unexpected contract shape");
  const double lvar_i = lambda_var(pareto, L).value;

  const auto expo = LossDistribution::exponential(1.0);
  const auto rep_ii = solve_expected_general(expo, L, theta);
  const auto* tsl_ii = std::get_if<TruncatedStopLoss>(&rep_ii.contract.variant());
  if (!tsl_ii) throw std::runtime_error("exponential case: unexpected contract shape");
  const double lvar_ii = lambda_var(expo, L).value;
  // one-sided limits of the comparison map at the level breakpoint
  const double g_left = g_eval(expo, L, theta, 1.0 - 1e-9);
  const double g_right = g_eval(expo, L, theta, 1.0);

  std::ostringstream csv;
  csv.precision(12);
  csv << "case,quantity,paper_stated,recomputed\n";
  csv << "pareto2,deductible," << (std::sqrt(6.0) - 2.0) / 2.0 << ',' << tsl_i->deductible << '\n';
  csv << "pareto2,lambda_var,1.58," << lvar_i << '\n';
  csv << "pareto2,x_star,0.98," << rep_i.optimal_value << '\n';
  csv << "pareto2,var_at_0.9,2.16," << pareto.quantile(0.9) << '\n';
  csv << "pareto2,cap,1.94," << tsl_i->cap << '\n';
  csv << "exp1,deductible," << std::log(1.5) << ',' << tsl_ii->deductible << '\n';
  csv << "exp1,lambda_var," << std::log(5.0) << ',' << lvar_ii << '\n';
  csv << "exp1,g_below_breakpoint,1.12," << g_left << '\n';
  csv << "exp1,g_above_breakpoint,1.18," << g_right << '\n';
  csv << "exp1,x_star,1.18," << rep_ii.optimal_value << '\n';
  csv << "exp1,cap,1.20," << tsl_ii->cap << '\n';
  res.csv = csv.str();

  const bool ded_ok = std::abs(tsl_i->deductible - (std::sqrt(6.0) - 2.0) / 2.0) < 1e-9 &&
                      std::abs(tsl_ii->deductible - std::log(1.5)) < 1e-9;
  const bool caps_ok = std::abs(tsl_i->cap - (pareto.quantile(0.9) - tsl_i->deductible)) < 1e-9 &&
                       std::abs(tsl_ii->cap - (std::log(10.0 / 3.0))) < 1e-6;
  res.trends_ok = ded_ok && caps_ok;

  std::ostringstream sum;
  sum.precision(10);
  sum << "example1: deductibles match the closed forms (sqrt(6)-2)/2 and ln(3/2): "
      << (ded_ok ? "yes" : "NO") << "; caps match VaR-minus-deductible: "
      << (caps_ok ? "yes" : "NO")
      << ". Known stated-vs-recomputed gaps kept side by side: pareto2 risk value 1.58 vs "
      << lvar_i << "; exp1 fixed point 1.18 vs " << rep_ii.optimal_value
      << " (comparison-map limits " << g_left << " / " << g_right << ").";
  res.summary = sum.str();
  return res;
}

}  // namespace

std::vector<std::string> reproduce_targets() {
  return {"example1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

ReproduceResult reproduce(const std::string& target) {
  const auto L = section_lambda();
  if (target == "example1") return worked_examples();
  if (target == "fig2") {
    SweepPlan plan{"alpha,lambda_at_xstar",
                   "coverage level at the solution weakly increasing in the tail exponent", true,
                   linspace(1.12, 2.48, 35), [&](double a) {
                     return solve_expected_general(LossDistribution::pareto(a), L, 0.25)
                         .effective_level;
                   }};
    return run_sweep(target, plan);
  }
  if (target == "fig3") {
    SweepPlan plan{"theta,lambda_at_xstar",
                   "coverage level at the solution weakly decreasing in the loading", false,
                   linspace(0.05, 0.95, 19), [&](double th) {
                     return solve_expected_general(LossDistribution::pareto(1.5), L, th)
                         .effective_level;
                   }};
    return run_sweep(target, plan);
  }
  if (target == "fig4") {
    SweepPlan plan{"theta,lambda_gap",
                   "gap between coverage level and normalized loading weakly decreasing", false,
                   linspace(0.05, 0.95, 19), [&](double th) {
                     return solve_expected_general(LossDistribution::pareto(1.5), L, th)
                                .effective_level -
                            th / (1.0 + th);
                   }};
    return run_sweep(target, plan);
  }
  if (target == "fig5") {
    SweepPlan plan{"beta,distorted_lambda_at_xstar",
                   "distorted coverage level weakly decreasing in the density bound", false,
                   linspace(0.5, 1.0, 11), [&](double b) {
                     return solve_robust_lr(LossDistribution::pareto(1.5), L, 0.25, b)
                         .effective_level;
                   }};
    return run_sweep(target, plan);
  }
  if (target == "fig6") {
    SweepPlan plan{"alpha,lambda_at_xstar",
                   "coverage level at the solution weakly increasing in the tail exponent", true,
                   linspace(1.12, 2.48, 35), [&](double a) {
                     return solve_mixed_premium(LossDistribution::pareto(a), L, L, 0.25)
                         .effective_level;
                   }};
    return run_sweep(target, plan);
  }
  if (target == "fig7") {
    SweepPlan plan{"theta,lambda_at_xstar",
                   "coverage level at the solution weakly decreasing in the loading", false,
                   linspace(0.05, 0.95, 19), [&](double th) {
                     return solve_mixed_premium(LossDistribution::pareto(1.5), L, L, th)
                         .effective_level;
                   }};
    return run_sweep(target, plan);
  }
  throw std::invalid_argument("unknown reproduce target '" + target + "'");
}

}  // namespace lvar
