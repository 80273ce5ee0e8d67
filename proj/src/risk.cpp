#include "lvar/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvar/bisect.hpp"

namespace lvar {

double inf_crossing(const std::function<bool(double)>& pred, double lo,
                    const CrossingOptions& opt) {
  auto eval = [&](double x) {
    if (opt.probe && *opt.probe) (*opt.probe)(x);
    return pred(x);
  };
  if (eval(lo)) return lo;
  double hi = std::max(lo, 1.0);
  while (!eval(hi)) {
    if (hi > opt.bracket_cap) return kPlusInfinity;
    hi = hi * 2.0 + 1.0;
  }
  double lo2 = lo;
  for (int i = 0; i < opt.max_iter && hi - lo2 > opt.abs_tol; ++i) {
    const double mid = 0.5 * (lo2 + hi);
    if (eval(mid))
      hi = mid;
    else
      lo2 = mid;
  }
  return hi;  // first point known to satisfy the predicate
}

namespace {

void require_valid(const LambdaFunction& L) {
  auto v = L.validate();
  if (!v.ok) throw std::invalid_argument("invalid Lambda function: " + v.message);
}

// Exact per-piece solution for a piecewise-constant Lambda given as
// (piece start, level) pairs in increasing x order.
double step_lambda_var(const LossDistribution& d,
                       const std::vector<std::pair<double, double>>& pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double start = pieces[i].first;
    const double end = i + 1 < pieces.size() ? pieces[i + 1].first : kPlusInfinity;
    const double candidate = std::max(start, d.quantile(pieces[i].second));
    if (candidate < end) return candidate;
  }
  return d.ess_sup();
}

}  // namespace

LambdaVarResult lambda_var(const LossDistribution& d, const LambdaFunction& L) {
  require_valid(L);
  double value;
  if (const auto* c = std::get_if<ConstantLevel>(&L.variant())) {
    value = d.quantile(c->level);
  } else if (const auto* t = std::get_if<TwoLevel>(&L.variant())) {
    value = step_lambda_var(d, {{0.0, t->high}, {t->threshold, t->low}});
  } else if (const auto* p = std::get_if<PiecewiseConstant>(&L.variant())) {
    std::vector<std::pair<double, double>> pieces;
    pieces.emplace_back(0.0, p->levels.front());
    for (std::size_t i = 0; i < p->breakpoints.size(); ++i)
      pieces.emplace_back(p->breakpoints[i], p->levels[i + 1]);
    value = step_lambda_var(d, pieces);
  } else {
    value = inf_crossing([&](double x) { return d.cdf(x) >= L(x); });
    if (!is_finite(value)) value = d.ess_sup();
  }
  LambdaVarResult r;
  r.value = value;
  r.crossing_level = is_finite(value) ? L(value) : L.inf_level();
  r.method = LambdaVarMethod::direct_root;
  return r;
}

double lambda_var_rep(const LossDistribution& d, const LambdaFunction& L) {
  require_valid(L);
  const double v = inf_crossing([&](double x) { return d.quantile(L(x)) <= x; });
  return is_finite(v) ? v : d.ess_sup();
}

double empirical_lambda_var(std::span<const double> sorted_sample, const LambdaFunction& L) {
  if (sorted_sample.empty())
    throw std::domain_error("empirical_lambda_var: sample must be non-empty");
  require_valid(L);
  const std::size_t n = sorted_sample.size();
  auto accepts = [&](std::size_t i) {
    const double x = sorted_sample[i];
    auto it = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), x);
    const double fn = static_cast<double>(it - sorted_sample.begin()) / static_cast<double>(n);
    return fn >= L(x);
  };
  // F_n - Lambda is weakly increasing along the order statistics
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (accepts(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo < n ? sorted_sample[lo] : sorted_sample.back();
}

double worst_case_var_mv(double mu, double sigma, double alpha) {
  if (mu < 0.0 || sigma < 0.0) throw std::domain_error("worst_case_var_mv: mu, sigma >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("worst_case_var_mv: alpha in (0,1)");
  return mu + sigma * std::sqrt(alpha / (1.0 - alpha));
}

}  // namespace lvar
