#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lvar/distribution.hpp"
#include "lvar/lambda_function.hpp"

namespace lvar {

struct NoInsurance {};
struct FullInsurance {};
struct StopLoss {
  double deductible;  // may be +infinity, which is the no-insurance contract
};
struct TruncatedStopLoss {
  double deductible;
  double cap;  // payout ceiling, >= 0
};
struct DualStopLoss {
  double ceiling;  // full coverage up to this loss level
};
struct QuotaShare {
  double proportion;  // in [0,1]
};
struct PiecewiseLinearIndemnity {
  std::vector<double> knots;   // increasing, knots[0] == 0
  std::vector<double> slopes;  // slopes[i] on [knots[i], knots[i+1]); same size as knots
};

struct AdmissibilityCheck {
  bool ok = true;
  std::string message;
};

/// Ceded-loss function from the admissible class: f(0) = 0, increasing,
/// 1-Lipschitz. All variants reduce to a common piecewise-linear form.
class IndemnityContract {
 public:
  using Variant = std::variant<NoInsurance, FullInsurance, StopLoss, TruncatedStopLoss,
                               DualStopLoss, QuotaShare, PiecewiseLinearIndemnity>;

  IndemnityContract() : var_(NoInsurance{}) {}
  explicit IndemnityContract(Variant v) : var_(std::move(v)) {}

  static IndemnityContract none() { return IndemnityContract(NoInsurance{}); }
  static IndemnityContract full() { return IndemnityContract(FullInsurance{}); }
  static IndemnityContract stop_loss(double deductible);
  static IndemnityContract truncated_stop_loss(double deductible, double cap);
  static IndemnityContract dual_stop_loss(double ceiling);
  static IndemnityContract quota_share(double proportion);
  static IndemnityContract piecewise_linear(std::vector<double> knots,
                                            std::vector<double> slopes);

  double apply(double x) const;  // f(x); throws on x < 0
  double retained(double x) const { return x - apply(x); }

  AdmissibilityCheck check_admissible() const;

  PiecewiseLinearIndemnity to_piecewise() const;
  // retained-loss function R(x) = x - f(x) in the same representation
  PiecewiseLinearIndemnity retained_piecewise() const;

  const Variant& variant() const { return var_; }
  std::string kind_name() const;

 private:
  Variant var_;
};

struct PremiumRule {
  enum class Kind { ExpectedValue, PureLambdaVar, Mixed };
  Kind kind = Kind::ExpectedValue;
  double theta = 0.0;                   // loading; ignored for PureLambdaVar
  std::optional<LambdaFunction> prime;  // Lambda' for the LambdaVar-based rules

  static PremiumRule expected_value(double theta);
  static PremiumRule pure_lambda_var(LambdaFunction prime);
  static PremiumRule mixed(double theta, LambdaFunction prime);

  double theta_star() const { return theta / (1.0 + theta); }
};

// Left-quantile of f(X), equal to f(quantile(X, u)) since f is increasing and
// continuous.
double ceded_quantile(const LossDistribution& d, const IndemnityContract& f, double u);

// Pushforward CDF of f(X): P(f(X) <= y) = F(sup{t : f(t) <= y}).
double ceded_cdf(const LossDistribution& d, const IndemnityContract& f, double y);

// E[f(X)] by layer decomposition; +infinity when the ceded tail diverges.
double expected_indemnity(const LossDistribution& d, const IndemnityContract& f);

// LambdaVaR of the ceded loss f(X) under Lp, via the pushforward CDF.
double ceded_lambda_var(const LossDistribution& d, const IndemnityContract& f,
                        const LambdaFunction& Lp);

// Premium of the contract under the given rule; +infinity signals an
// uninsurable layer.
double premium(const LossDistribution& d, const IndemnityContract& f, const PremiumRule& rule);

// LambdaVaR of the retained position T_f(X) = X - f(X) + premium.
double retained_position_value(const LossDistribution& d, const IndemnityContract& f,
                               const PremiumRule& rule, const LambdaFunction& L);

}  // namespace lvar
