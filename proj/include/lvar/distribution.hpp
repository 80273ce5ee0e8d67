#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace lvar {

using Money = double;

// Infinity stands in for the distinguished "plus infinity" value: it absorbs
// addition and dominates comparison, which is exactly what the solvers need
// when a tail expectation diverges or an optimal deductible is infinite.
inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

struct Pareto {
  double tail_alpha;  // S(x) = (1+x)^{-alpha}
};
struct Exponential {
  double rate;
};
struct Uniform {
  double upper;  // support (0, upper)
};
struct LogNormal {
  double mu_log;
  double sigma_log;
};
struct Empirical {
  std::vector<double> sample;  // sorted, non-negative
};

/// Non-negative loss model with exact quantiles, layer expectations and
/// moments. Values are immutable after construction; all methods are pure.
class LossDistribution {
 public:
  using Family = std::variant<Pareto, Exponential, Uniform, LogNormal, Empirical>;

  static LossDistribution pareto(double tail_alpha);
  static LossDistribution exponential(double rate);
  static LossDistribution uniform(double upper);
  static LossDistribution log_normal(double mu_log, double sigma_log);
  static LossDistribution empirical(std::vector<double> sample);  // sorts input

  double cdf(double x) const;       // F(x); right-continuous step ECDF for Empirical
  double survival(double x) const;  // 1 - F(x)

  // Left-quantile inf{x >= 0 : F(x) >= u}; u = 1 returns the essential
  // supremum (inf of the empty set convention).
  double quantile(double u) const;

  // E[min{(X-a)_+, (b-a)_+}] = integral of S over [a, b]; b may be infinite.
  // Returns +infinity when the tail integral diverges.
  double layer_expectation(double a, double b) const;

  double mean() const;      // +infinity where divergent
  double variance() const;  // +infinity where divergent

  double ess_inf() const;
  double ess_sup() const;

  // Deterministic inverse-transform sample, returned sorted.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  const Family& family() const { return family_; }
  std::string family_name() const;

 private:
  explicit LossDistribution(Family f) : family_(std::move(f)) {}
  Family family_;
};

// Standard normal CDF and its inverse (used by the LogNormal family).
double normal_cdf(double z);
double normal_quantile(double u);

}  // namespace lvar
