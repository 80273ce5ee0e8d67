#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvar/contract.hpp"
#include "lvar/distribution.hpp"
#include "lvar/lambda_function.hpp"

namespace lvar {

/// Equiprobable discretization of a loss model, used as the ground truth for
/// brute-force verification of the analytic solvers.
struct DiscreteInstance {
  std::vector<double> atoms;  // sorted, one atom per probability cell
  std::string provenance;

  double atom_mean() const;
  // empirical LambdaVaR of the retained position x - f(x) + pi over the atoms
  double position_lambda_var(const IndemnityContract& f, double pi,
                             const LambdaFunction& L) const;
  double expected_indemnity(const IndemnityContract& f) const;
  double premium(const IndemnityContract& f, const PremiumRule& rule) const;
};

// Midpoint-quantile atoms: quantile((k - 0.5)/n), k = 1..n.
DiscreteInstance discretize(const LossDistribution& d, std::size_t n);

struct GridSearchResult {
  IndemnityContract best;
  double best_value = 0.0;
};

// Exhaustive scan of truncated stop-loss contracts over a (deductible, cap)
// lattice spanning [0, max atom].
GridSearchResult grid_search_truncated_stoploss(const DiscreteInstance& inst,
                                                const LambdaFunction& L, double theta,
                                                std::size_t grid);

struct DominanceResult {
  double max_violation = -std::numeric_limits<double>::infinity();
  IndemnityContract worst_challenger;
};

// Random admissible piecewise-linear challengers against an analytic optimum;
// a correct theorem keeps the max violation within discretization noise.
DominanceResult random_indemnity_dominance(const DiscreteInstance& inst, const LambdaFunction& L,
                                           const PremiumRule& rule,
                                           const IndemnityContract& analytic, std::size_t trials,
                                           std::uint64_t seed);

// Max VaR_alpha over two-point non-negative laws with the given mean and
// standard deviation; approaches the Cantelli bound when the attaining law is
// feasible on the non-negative half-line.
double mv_two_point_worstcase(double mu, double sigma, double alpha, std::size_t grid);

}  // namespace lvar
