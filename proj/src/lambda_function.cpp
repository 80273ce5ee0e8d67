#include "lvar/lambda_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lvar {

LambdaFunction LambdaFunction::constant(double level) {
  return LambdaFunction(ConstantLevel{level});
}

LambdaFunction LambdaFunction::two_level(double high, double low, double threshold) {
  return LambdaFunction(TwoLevel{high, low, threshold});
}

LambdaFunction LambdaFunction::exp_affine(double scale, double decay, double base) {
  return LambdaFunction(ExpAffine{scale, decay, base});
}

LambdaFunction LambdaFunction::piecewise_constant(std::vector<double> breakpoints,
                                                  std::vector<double> levels) {
  return LambdaFunction(PiecewiseConstant{std::move(breakpoints), std::move(levels)});
}

double LambdaFunction::operator()(double x) const {
  if (x < 0.0) throw std::domain_error("LambdaFunction: x must be non-negative");
  return std::visit(
      [x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLevel>) {
          return v.level;
        } else if constexpr (std::is_same_v<T, TwoLevel>) {
          return x < v.threshold ? v.high : v.low;
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          return v.scale * std::exp(-v.decay * x) + v.base;
        } else {
          auto it = std::upper_bound(v.breakpoints.begin(), v.breakpoints.end(), x);
          std::size_t idx = static_cast<std::size_t>(it - v.breakpoints.begin());
          // at a breakpoint the right (lower) level applies
          if (idx > 0 && v.breakpoints[idx - 1] == x) { /* upper_bound already past */ }
          return v.levels[idx];
        }
      },
      var_);
}

LambdaValidation LambdaFunction::validate() const {
  return std::visit(
      [](const auto& v) -> LambdaValidation {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLevel>) {
          if (v.level <= 0.0) return {false, "constant level must be in (0,1]", 0.0};
          if (v.level > 1.0) return {false, "constant level above 1", 0.0};
          return {};
        } else if constexpr (std::is_same_v<T, TwoLevel>) {
          if (!(v.low > 0.0 && v.low < v.high && v.high < 1.0))
            return {false, "two-level requires 0 < low < high < 1", 0.0};
          if (v.threshold < 0.0) return {false, "two-level threshold must be >= 0", v.threshold};
          return {};
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          if (v.scale < 0.0 || v.base < 0.0)
            return {false, "exp-affine coefficients must be non-negative", 0.0};
          if (v.decay <= 0.0) return {false, "exp-affine decay must be positive", 0.0};
          if (v.scale + v.base > 1.0) return {false, "exp-affine value at 0 exceeds 1", 0.0};
          if (v.scale == 0.0 && v.base == 0.0) return {false, "identically zero", 0.0};
          return {};
        } else {
          if (v.levels.size() != v.breakpoints.size() + 1)
            return {false, "piecewise: levels must be one longer than breakpoints", 0.0};
          for (std::size_t i = 0; i + 1 < v.breakpoints.size(); ++i)
            if (!(v.breakpoints[i] < v.breakpoints[i + 1]))
              return {false, "piecewise: breakpoints must be strictly increasing",
                      v.breakpoints[i + 1]};
          if (!v.breakpoints.empty() && v.breakpoints.front() <= 0.0)
            return {false, "piecewise: breakpoints must be positive", v.breakpoints.front()};
          bool all_zero = true;
          for (std::size_t i = 0; i < v.levels.size(); ++i) {
            if (v.levels[i] < 0.0 || v.levels[i] > 1.0)
              return {false, "piecewise: level out of [0,1] at index " + std::to_string(i),
                      static_cast<double>(i)};
            if (i > 0 && v.levels[i] > v.levels[i - 1])
              return {false, "piecewise: levels increase at index " + std::to_string(i),
                      static_cast<double>(i)};
            if (v.levels[i] > 0.0) all_zero = false;
          }
          if (all_zero) return {false, "identically zero", 0.0};
          return {};
        }
      },
      var_);
}

LambdaFunction LambdaFunction::lr_distort(double beta) const {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("lr_distort: beta must lie in (0,1]");
  if (beta == 1.0) return *this;
  return std::visit(
      [beta](const auto& v) -> LambdaFunction {
        using T = std::decay_t<decltype(v)>;
        const double shift = 1.0 - beta;
        if constexpr (std::is_same_v<T, ConstantLevel>) {
          return constant(beta * v.level + shift);
        } else if constexpr (std::is_same_v<T, TwoLevel>) {
          return two_level(beta * v.high + shift, beta * v.low + shift, v.threshold);
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          return exp_affine(beta * v.scale, v.decay, beta * v.base + shift);
        } else {
          std::vector<double> levels = v.levels;
          for (double& l : levels) l = beta * l + shift;
          return piecewise_constant(v.breakpoints, std::move(levels));
        }
      },
      var_);
}

double LambdaFunction::sup_level() const { return (*this)(0.0); }

double LambdaFunction::inf_level() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLevel>) return v.level;
        else if constexpr (std::is_same_v<T, TwoLevel>) return v.low;
        else if constexpr (std::is_same_v<T, ExpAffine>) return v.base;
        else return v.levels.back();
      },
      var_);
}

std::vector<double> LambdaFunction::jump_points() const {
  return std::visit(
      [](const auto& v) -> std::vector<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TwoLevel>) return {v.threshold};
        else if constexpr (std::is_same_v<T, PiecewiseConstant>) return v.breakpoints;
        else return {};
      },
      var_);
}

bool LambdaFunction::is_step() const {
  return std::holds_alternative<ConstantLevel>(var_) || std::holds_alternative<TwoLevel>(var_) ||
         std::holds_alternative<PiecewiseConstant>(var_);
}

std::string LambdaFunction::kind_name() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLevel>) return "constant";
        else if constexpr (std::is_same_v<T, TwoLevel>) return "two_level";
        else if constexpr (std::is_same_v<T, ExpAffine>) return "exp_affine";
        else return "piecewise_constant";
      },
      var_);
}

}  // namespace lvar
