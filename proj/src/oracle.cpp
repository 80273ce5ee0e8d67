#include "lvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lvar/risk.hpp"

namespace lvar {

double DiscreteInstance::atom_mean() const {
  double acc = 0.0;
  for (double x : atoms) acc += x;
  return acc / static_cast<double>(atoms.size());
}

double DiscreteInstance::position_lambda_var(const IndemnityContract& f, double pi,
                                             const LambdaFunction& L) const {
  std::vector<double> position(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    position[i] = atoms[i] - f.apply(atoms[i]) + pi;
  // admissible contracts have an increasing retained part, so order is kept
  return empirical_lambda_var(position, L);
}

double DiscreteInstance::expected_indemnity(const IndemnityContract& f) const {
  double acc = 0.0;
  for (double x : atoms) acc += f.apply(x);
  return acc / static_cast<double>(atoms.size());
}

double DiscreteInstance::premium(const IndemnityContract& f, const PremiumRule& rule) const {
  switch (rule.kind) {
    case PremiumRule::Kind::ExpectedValue:
      return (1.0 + rule.theta) * expected_indemnity(f);
    case PremiumRule::Kind::PureLambdaVar:
    case PremiumRule::Kind::Mixed: {
      std::vector<double> ceded(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i) ceded[i] = f.apply(atoms[i]);
      const double prem_var = empirical_lambda_var(ceded, *rule.prime);
      if (rule.kind == PremiumRule::Kind::PureLambdaVar) return prem_var;
      const double e = expected_indemnity(f);
      return e + rule.theta * (prem_var - e);
    }
  }
  return 0.0;
}

DiscreteInstance discretize(const LossDistribution& d, std::size_t n) {
  if (n < 2) throw std::domain_error("discretize: need at least 2 atoms");
  DiscreteInstance inst;
  inst.atoms.reserve(n);
  for (std::size_t k = 1; k <= n; ++k)
    inst.atoms.push_back(d.quantile((static_cast<double>(k) - 0.5) / static_cast<double>(n)));
  inst.provenance = d.family_name() + "/n=" + std::to_string(n) + "/midpoint";
  return inst;
}

GridSearchResult grid_search_truncated_stoploss(const DiscreteInstance& inst,
                                                const LambdaFunction& L, double theta,
                                                std::size_t grid) {
  if (grid < 1) throw std::domain_error("grid_search: grid must be positive");
  const double top = inst.atoms.back();
  const PremiumRule rule = PremiumRule::expected_value(theta);
  GridSearchResult best;
  best.best = IndemnityContract::none();
  best.best_value = inst.position_lambda_var(best.best, 0.0, L);
  for (std::size_t i = 0; i < grid; ++i) {
    const double ded = grid == 1 ? 0.0 : top * static_cast<double>(i) / static_cast<double>(grid - 1);
    for (std::size_t j = 0; j < grid; ++j) {
      const double cap =
          grid == 1 ? 0.0 : top * static_cast<double>(j) / static_cast<double>(grid - 1);
      const auto f = IndemnityContract::truncated_stop_loss(ded, cap);
      const double value = inst.position_lambda_var(f, inst.premium(f, rule), L);
      if (value < best.best_value) {
        best.best_value = value;
        best.best = f;
      }
    }
  }
  return best;
}

DominanceResult random_indemnity_dominance(const DiscreteInstance& inst, const LambdaFunction& L,
                                           const PremiumRule& rule,
                                           const IndemnityContract& analytic, std::size_t trials,
                                           std::uint64_t seed) {
  auto chk = analytic.check_admissible();
  if (!chk.ok) throw std::invalid_argument("analytic contract inadmissible: " + chk.message);
  const double analytic_value =
      inst.position_lambda_var(analytic, inst.premium(analytic, rule), L);
  DominanceResult res;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> knot_count(1, 6);
  const double top = inst.atoms.back();
  for (std::size_t t = 0; t < trials; ++t) {
    const int pieces = knot_count(rng);
    std::vector<double> knots{0.0};
    for (int i = 1; i < pieces; ++i) knots.push_back(unif(rng) * top);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> slopes(knots.size());
    for (double& s : slopes) s = unif(rng);
    const auto challenger = IndemnityContract::piecewise_linear(std::move(knots), std::move(slopes));
    const double value =
        inst.position_lambda_var(challenger, inst.premium(challenger, rule), L);
    const double violation = analytic_value - value;
    if (violation > res.max_violation) {
      res.max_violation = violation;
      res.worst_challenger = challenger;
    }
  }
  return res;
}

double mv_two_point_worstcase(double mu, double sigma, double alpha, std::size_t grid) {
  if (!(mu > 0.0)) throw std::domain_error("mv_two_point_worstcase: mu must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mv_two_point_worstcase: alpha in (0,1)");
  if (grid < 3) throw std::domain_error("mv_two_point_worstcase: grid too coarse");
  if (sigma == 0.0) return mu;
  auto var_of = [&](double p) -> double {
    const double low = mu - sigma * std::sqrt((1.0 - p) / p);
    if (low < 0.0) return -kPlusInfinity;  // infeasible on the non-negative line
    const double high = mu + sigma * std::sqrt(p / (1.0 - p));
    return p >= alpha ? low : high;
  };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  double best = -kPlusInfinity;
  for (int round = 0; round < 4; ++round) {
    double best_p = lo;
    for (std::size_t k = 0; k <= grid; ++k) {
      const double p = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
      const double v = var_of(p);
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    const double span = (hi - lo) / static_cast<double>(grid);
    lo = std::max(1e-9, best_p - span);
    hi = std::min(1.0 - 1e-9, best_p + span);
  }
  return best;
}

}  // namespace lvar
