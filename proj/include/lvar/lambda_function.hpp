#pragma once

#include <string>
#include <variant>
#include <vector>

namespace lvar {

struct ConstantLevel {
  double level;  // in (0, 1]
};
struct TwoLevel {
  double high;       // beta, on [0, threshold)
  double low;        // alpha, on [threshold, inf)
  double threshold;  // z >= 0
};
struct ExpAffine {
  double scale;  // a
  double decay;  // k > 0
  double base;   // c; value is scale * exp(-decay x) + base
};
struct PiecewiseConstant {
  std::vector<double> breakpoints;  // strictly increasing, > 0
  std::vector<double> levels;       // size = breakpoints.size() + 1, decreasing
};

struct LambdaValidation {
  bool ok = true;
  std::string message;
  double where = 0.0;  // location of the violation when relevant
};

/// Decreasing probability-level function on the loss axis. Evaluation at a
/// breakpoint takes the right (lower) level, matching the two-level
/// indicator convention.
class LambdaFunction {
 public:
  using Variant = std::variant<ConstantLevel, TwoLevel, ExpAffine, PiecewiseConstant>;

  static LambdaFunction constant(double level);
  static LambdaFunction two_level(double high, double low, double threshold);
  static LambdaFunction exp_affine(double scale, double decay, double base);
  static LambdaFunction piecewise_constant(std::vector<double> breakpoints,
                                           std::vector<double> levels);

  double operator()(double x) const;  // throws on x < 0

  LambdaValidation validate() const;

  // Likelihood-ratio distortion beta*L + 1 - beta, returned in closed form
  // within the same variant family. beta = 1 is the identity.
  LambdaFunction lr_distort(double beta) const;

  double sup_level() const;  // value at 0
  double inf_level() const;  // limit at infinity

  // Breakpoints where the function jumps; empty for smooth variants.
  std::vector<double> jump_points() const;
  bool is_step() const;

  const Variant& variant() const { return var_; }
  std::string kind_name() const;

 private:
  explicit LambdaFunction(Variant v) : var_(std::move(v)) {}
  Variant var_;
};

}  // namespace lvar
