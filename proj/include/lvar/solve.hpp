#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lvar/contract.hpp"
#include "lvar/distribution.hpp"
#include "lvar/lambda_function.hpp"

namespace lvar {

struct SolveReport {
  IndemnityContract contract;
  double optimal_value = 0.0;   // minimized LambdaVaR of the retained position
  double effective_level = 0.0; // Lambda(x*) (or the distorted level for robust runs)
  std::string branch;
  std::vector<std::pair<double, double>> diagnostics;  // (x, comparison value) probes
};

// G(x) = d* ^ VaR_{Lambda(x)}(X) + (1+theta) E[min{(X-d*)_+, (VaR_{Lambda(x)}(X)-d*)_+}]
// with d* = VaR_{theta/(1+theta)}(X); weakly decreasing in x.
double g_eval(const LossDistribution& d, const LambdaFunction& L, double theta, double x);

// Optimal contract over the full admissible class under the expected-value
// premium: truncated stop-loss at the fixed point of G.
SolveReport solve_expected_general(const LossDistribution& d, const LambdaFunction& L,
                                   double theta);

// Optimal deductible within the stop-loss family: VaR_{theta*}(X) when
// M = d* + (1+theta) E[(X-d*)_+] does not exceed LambdaVaR(X), else no cover.
SolveReport solve_expected_stoploss(const LossDistribution& d, const LambdaFunction& L,
                                    double theta);

struct ExistenceResult {
  bool exists = false;
  std::string reason;
  double witness = 0.0;  // failing location when exists == false
};

// Positive finite optimal deductible exists iff theta* > F(0) and
// Lambda(M - eps) > F(M - eps) for every eps in (0, M].
ExistenceResult existence_positive_finite_deductible(const LossDistribution& d,
                                                     const LambdaFunction& L, double theta);

// Pure Lambda'VaR premium: full or no insurance by comparing the two risk
// levels; ties resolve to no insurance.
SolveReport solve_lambdavar_premium(const LossDistribution& d, const LambdaFunction& L,
                                    const LambdaFunction& Lp);

// Mixed premium E + theta(Lambda'VaR - E): dual stop-loss at the fixed point
// of the capped-mean comparison map.
SolveReport solve_mixed_premium(const LossDistribution& d, const LambdaFunction& L,
                                const LambdaFunction& Lp, double theta);

// Quota share is bang-bang: compare the no-cover and full-cover endpoints. A
// grid diagnostic over the proportion corroborates the claim.
SolveReport solve_quota_share(const LossDistribution& d, const LambdaFunction& L, double theta);

// Likelihood-ratio robust variant: the expected-value problem with Lambda
// replaced by beta*Lambda + 1 - beta.
SolveReport solve_robust_lr(const LossDistribution& d, const LambdaFunction& L, double theta,
                            double beta);

// Moment-uncertainty robust variant over stop-loss contracts; closed forms on
// both loading branches.
SolveReport solve_robust_mv(double mu, double sigma, const LambdaFunction& L, double theta);

}  // namespace lvar
