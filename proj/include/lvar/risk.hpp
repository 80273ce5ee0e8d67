#pragma once

#include <span>

#include "lvar/distribution.hpp"
#include "lvar/lambda_function.hpp"

namespace lvar {

enum class LambdaVarMethod { direct_root, representation, empirical };

struct LambdaVarResult {
  double value = 0.0;
  double crossing_level = 0.0;  // Lambda(value)
  LambdaVarMethod method = LambdaVarMethod::direct_root;
};

// inf{x >= 0 : F(x) >= Lambda(x)}. Step variants are solved piece by piece in
// closed form; smooth variants by bracketing and monotone bisection. An empty
// acceptance set resolves to the essential supremum.
LambdaVarResult lambda_var(const LossDistribution& d, const LambdaFunction& L);

// Independent route through the representation inf_x { VaR_{Lambda(x)}(X) v x }.
// Verification only; never called by the solvers.
double lambda_var_rep(const LossDistribution& d, const LambdaFunction& L);

// Smallest order statistic x_(k) with k/n >= Lambda(x_(k)); max sample value
// when no crossing exists.
double empirical_lambda_var(std::span<const double> sorted_sample, const LambdaFunction& L);

// Worst-case VaR_alpha over all non-negative laws with mean mu and standard
// deviation sigma: the Cantelli bound mu + sigma * sqrt(alpha / (1 - alpha)).
double worst_case_var_mv(double mu, double sigma, double alpha);

}  // namespace lvar
