#include "lvar/contract.hpp"

#include <cmath>
#include <stdexcept>

#include "lvar/bisect.hpp"
#include "lvar/risk.hpp"

namespace lvar {

namespace {

double piecewise_eval(const PiecewiseLinearIndemnity& pl, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pl.knots.size(); ++i) {
    const double start = pl.knots[i];
    if (x <= start) break;
    const double end = i + 1 < pl.knots.size() ? std::min(pl.knots[i + 1], x) : x;
    acc += pl.slopes[i] * (end - start);
  }
  return acc;
}

// sup{t : f(t) <= y} = inf{t : f(t) > y} for the continuous increasing f.
double piecewise_inverse_sup(const PiecewiseLinearIndemnity& pl, double y) {
  if (y < 0.0) return -1.0;  // empty set; any negative sentinel maps to CDF 0
  double value = 0.0;
  for (std::size_t i = 0; i < pl.knots.size(); ++i) {
    const double start = pl.knots[i];
    const double slope = pl.slopes[i];
    const bool last = i + 1 == pl.knots.size();
    const double end = last ? kPlusInfinity : pl.knots[i + 1];
    const double end_value = slope > 0.0 && !last ? value + slope * (end - start)
                             : slope > 0.0        ? kPlusInfinity
                                                  : value;
    if (slope > 0.0 && end_value > y) return start + (y - value) / slope;
    value = end_value;
  }
  return kPlusInfinity;  // f stays <= y on a terminal flat piece
}

double piecewise_limit(const PiecewiseLinearIndemnity& pl) {
  if (pl.slopes.back() > 0.0) return kPlusInfinity;
  return piecewise_eval(pl, pl.knots.back());
}

}  // namespace

IndemnityContract IndemnityContract::stop_loss(double deductible) {
  if (deductible < 0.0) throw std::domain_error("stop_loss: deductible must be >= 0");
  return IndemnityContract(StopLoss{deductible});
}

IndemnityContract IndemnityContract::truncated_stop_loss(double deductible, double cap) {
  if (deductible < 0.0 || cap < 0.0)
    throw std::domain_error("truncated_stop_loss: deductible and cap must be >= 0");
  return IndemnityContract(TruncatedStopLoss{deductible, cap});
}

IndemnityContract IndemnityContract::dual_stop_loss(double ceiling) {
  if (ceiling < 0.0) throw std::domain_error("dual_stop_loss: ceiling must be >= 0");
  return IndemnityContract(DualStopLoss{ceiling});
}

IndemnityContract IndemnityContract::quota_share(double proportion) {
  if (proportion < 0.0 || proportion > 1.0)
    throw std::domain_error("quota_share: proportion must lie in [0,1]");
  return IndemnityContract(QuotaShare{proportion});
}

IndemnityContract IndemnityContract::piecewise_linear(std::vector<double> knots,
                                                      std::vector<double> slopes) {
  return IndemnityContract(PiecewiseLinearIndemnity{std::move(knots), std::move(slopes)});
}

double IndemnityContract::apply(double x) const {
  if (x < 0.0) throw std::domain_error("IndemnityContract::apply: x must be >= 0");
  return std::visit(
      [this, x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoInsurance>) return 0.0;
        else if constexpr (std::is_same_v<T, FullInsurance>) return x;
        else if constexpr (std::is_same_v<T, StopLoss>)
          return is_finite(v.deductible) ? std::max(x - v.deductible, 0.0) : 0.0;
        else if constexpr (std::is_same_v<T, TruncatedStopLoss>)
          return std::min(std::max(x - v.deductible, 0.0), v.cap);
        else if constexpr (std::is_same_v<T, DualStopLoss>)
          return std::min(x, v.ceiling);
        else if constexpr (std::is_same_v<T, QuotaShare>)
          return v.proportion * x;
        else
          return piecewise_eval(v, x);
      },
      var_);
}

AdmissibilityCheck IndemnityContract::check_admissible() const {
  if (const auto* pl = std::get_if<PiecewiseLinearIndemnity>(&var_)) {
    if (pl->knots.empty() || pl->slopes.size() != pl->knots.size())
      return {false, "piecewise contract needs one slope per knot"};
    if (pl->knots.front() != 0.0) return {false, "f(0) must anchor at the origin"};
    for (std::size_t i = 0; i + 1 < pl->knots.size(); ++i)
      if (!(pl->knots[i] < pl->knots[i + 1])) return {false, "knots must be strictly increasing"};
    for (double s : pl->slopes)
      if (s < 0.0 || s > 1.0) return {false, "slope outside [0,1] breaks the Lipschitz bound"};
    return {};
  }
  return {};  // named variants are admissible by construction
}

PiecewiseLinearIndemnity IndemnityContract::to_piecewise() const {
  return std::visit(
      [](const auto& v) -> PiecewiseLinearIndemnity {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoInsurance>) {
          return {{0.0}, {0.0}};
        } else if constexpr (std::is_same_v<T, FullInsurance>) {
          return {{0.0}, {1.0}};
        } else if constexpr (std::is_same_v<T, StopLoss>) {
          if (!is_finite(v.deductible)) return {{0.0}, {0.0}};
          if (v.deductible == 0.0) return {{0.0}, {1.0}};
          return {{0.0, v.deductible}, {0.0, 1.0}};
        } else if constexpr (std::is_same_v<T, TruncatedStopLoss>) {
          if (v.cap == 0.0) return {{0.0}, {0.0}};
          if (v.deductible == 0.0) return {{0.0, v.cap}, {1.0, 0.0}};
          return {{0.0, v.deductible, v.deductible + v.cap}, {0.0, 1.0, 0.0}};
        } else if constexpr (std::is_same_v<T, DualStopLoss>) {
          if (v.ceiling == 0.0) return {{0.0}, {0.0}};
          return {{0.0, v.ceiling}, {1.0, 0.0}};
        } else if constexpr (std::is_same_v<T, QuotaShare>) {
          return {{0.0}, {v.proportion}};
        } else {
          return v;
        }
      },
      var_);
}

PiecewiseLinearIndemnity IndemnityContract::retained_piecewise() const {
  PiecewiseLinearIndemnity pl = to_piecewise();
  for (double& s : pl.slopes) s = 1.0 - s;
  return pl;
}

std::string IndemnityContract::kind_name() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoInsurance>) return "none";
        else if constexpr (std::is_same_v<T, FullInsurance>) return "full";
        else if constexpr (std::is_same_v<T, StopLoss>) return "stop_loss";
        else if constexpr (std::is_same_v<T, TruncatedStopLoss>) return "truncated_stop_loss";
        else if constexpr (std::is_same_v<T, DualStopLoss>) return "dual_stop_loss";
        else if constexpr (std::is_same_v<T, QuotaShare>) return "quota_share";
        else return "piecewise_linear";
      },
      var_);
}

PremiumRule PremiumRule::expected_value(double theta) {
  if (theta < 0.0) throw std::domain_error("expected-value premium: theta must be >= 0");
  return {Kind::ExpectedValue, theta, std::nullopt};
}

PremiumRule PremiumRule::pure_lambda_var(LambdaFunction prime) {
  auto v = prime.validate();
  if (!v.ok) throw std::invalid_argument("premium Lambda': " + v.message);
  return {Kind::PureLambdaVar, 0.0, std::move(prime)};
}

PremiumRule PremiumRule::mixed(double theta, LambdaFunction prime) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::domain_error("mixed premium: theta must lie in (0,1]");
  auto v = prime.validate();
  if (!v.ok) throw std::invalid_argument("premium Lambda': " + v.message);
  return {Kind::Mixed, theta, std::move(prime)};
}

double ceded_quantile(const LossDistribution& d, const IndemnityContract& f, double u) {
  auto chk = f.check_admissible();
  if (!chk.ok) throw std::invalid_argument("inadmissible contract: " + chk.message);
  const double q = d.quantile(u);
  return is_finite(q) ? f.apply(q) : piecewise_limit(f.to_piecewise());
}

double ceded_cdf(const LossDistribution& d, const IndemnityContract& f, double y) {
  if (y < 0.0) return 0.0;
  const double t = piecewise_inverse_sup(f.to_piecewise(), y);
  if (!is_finite(t)) return 1.0;
  return d.cdf(t);
}

double expected_indemnity(const LossDistribution& d, const IndemnityContract& f) {
  const PiecewiseLinearIndemnity pl = f.to_piecewise();
  double acc = 0.0;
  for (std::size_t i = 0; i < pl.knots.size(); ++i) {
    if (pl.slopes[i] == 0.0) continue;
    const double end = i + 1 < pl.knots.size() ? pl.knots[i + 1] : kPlusInfinity;
    const double layer = d.layer_expectation(pl.knots[i], end);
    if (!is_finite(layer)) return kPlusInfinity;
    acc += pl.slopes[i] * layer;
  }
  return acc;
}

double ceded_lambda_var(const LossDistribution& d, const IndemnityContract& f,
                        const LambdaFunction& Lp) {
  auto v = Lp.validate();
  if (!v.ok) throw std::invalid_argument("invalid Lambda': " + v.message);
  const double r = inf_crossing([&](double y) { return ceded_cdf(d, f, y) >= Lp(y); });
  if (is_finite(r)) return r;
  const double lim = piecewise_limit(f.to_piecewise());
  return is_finite(lim) ? lim : d.ess_sup();
}

double premium(const LossDistribution& d, const IndemnityContract& f, const PremiumRule& rule) {
  auto chk = f.check_admissible();
  if (!chk.ok) throw std::invalid_argument("inadmissible contract: " + chk.message);
  switch (rule.kind) {
    case PremiumRule::Kind::ExpectedValue:
      return (1.0 + rule.theta) * expected_indemnity(d, f);
    case PremiumRule::Kind::PureLambdaVar:
      return ceded_lambda_var(d, f, *rule.prime);
    case PremiumRule::Kind::Mixed: {
      const double e = expected_indemnity(d, f);
      if (!is_finite(e)) return kPlusInfinity;
      return e + rule.theta * (ceded_lambda_var(d, f, *rule.prime) - e);
    }
  }
  return 0.0;
}

double retained_position_value(const LossDistribution& d, const IndemnityContract& f,
                               const PremiumRule& rule, const LambdaFunction& L) {
  auto v = L.validate();
  if (!v.ok) throw std::invalid_argument("invalid Lambda: " + v.message);
  const double pi = premium(d, f, rule);
  if (!is_finite(pi)) throw std::domain_error("retained_position_value: infinite premium");
  const PiecewiseLinearIndemnity retained = f.retained_piecewise();
  auto position_cdf = [&](double x) {
    const double t = piecewise_inverse_sup(retained, x - pi);
    if (t < 0.0) return 0.0;
    if (!is_finite(t)) return 1.0;
    return d.cdf(t);
  };
  const double r = inf_crossing([&](double x) { return position_cdf(x) >= L(x); });
  if (is_finite(r)) return r;
  const double lim = piecewise_limit(retained);
  return (is_finite(lim) ? lim : d.ess_sup()) + pi;
}

}  // namespace lvar
