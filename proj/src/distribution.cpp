#include "lvar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lvar {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

LossDistribution LossDistribution::pareto(double tail_alpha) {
  require(tail_alpha > 0.0, "Pareto tail parameter must be positive");
  return LossDistribution(Pareto{tail_alpha});
}

LossDistribution LossDistribution::exponential(double rate) {
  require(rate > 0.0, "Exponential rate must be positive");
  return LossDistribution(Exponential{rate});
}

LossDistribution LossDistribution::uniform(double upper) {
  require(upper > 0.0, "Uniform upper bound must be positive");
  return LossDistribution(Uniform{upper});
}

LossDistribution LossDistribution::log_normal(double mu_log, double sigma_log) {
  require(sigma_log > 0.0, "LogNormal sigma must be positive");
  return LossDistribution(LogNormal{mu_log, sigma_log});
}

LossDistribution LossDistribution::empirical(std::vector<double> sample) {
  require(!sample.empty(), "Empirical sample must be non-empty");
  std::sort(sample.begin(), sample.end());
  require(sample.front() >= 0.0, "Empirical sample values must be non-negative");
  return LossDistribution(Empirical{std::move(sample)});
}

double LossDistribution::cdf(double x) const {
  require(x >= 0.0, "cdf: x must be non-negative");
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return 1.0 - std::pow(1.0 + x, -f.tail_alpha);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 - std::exp(-f.rate * x);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return std::min(x / f.upper, 1.0);
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          if (x <= 0.0) return 0.0;
          return normal_cdf((std::log(x) - f.mu_log) / f.sigma_log);
        } else {
          const auto& s = f.sample;
          auto it = std::upper_bound(s.begin(), s.end(), x);
          return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
        }
      },
      family_);
}

double LossDistribution::survival(double x) const { return 1.0 - cdf(x); }

double LossDistribution::quantile(double u) const {
  require(u >= 0.0 && u <= 1.0, "quantile: u must lie in [0,1]");
  return std::visit(
      [this, u](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (u >= 1.0) return kPlusInfinity;
          return std::pow(1.0 - u, -1.0 / f.tail_alpha) - 1.0;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (u >= 1.0) return kPlusInfinity;
          return -std::log1p(-u) / f.rate;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return u * f.upper;
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          if (u <= 0.0) return 0.0;
          if (u >= 1.0) return kPlusInfinity;
          return std::exp(f.mu_log + f.sigma_log * normal_quantile(u));
        } else {
          const auto& s = f.sample;
          const std::size_t n = s.size();
          if (u <= 0.0) return s.front();
          // smallest k with k/n >= u
          std::size_t k = static_cast<std::size_t>(std::ceil(u * static_cast<double>(n) - 1e-12));
          if (k < 1) k = 1;
          if (k > n) k = n;
          return s[k - 1];
        }
      },
      family_);
}

double LossDistribution::layer_expectation(double a, double b) const {
  require(a >= 0.0, "layer_expectation: a must be non-negative");
  require(a <= b, "layer_expectation: requires a <= b");
  if (a == b) return 0.0;
  return std::visit(
      [a, b](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          const double al = f.tail_alpha;
          if (!is_finite(b)) {
            if (al <= 1.0) return kPlusInfinity;
            return std::pow(1.0 + a, 1.0 - al) / (al - 1.0);
          }
          if (al == 1.0) return std::log((1.0 + b) / (1.0 + a));
          return (std::pow(1.0 + a, 1.0 - al) - std::pow(1.0 + b, 1.0 - al)) / (al - 1.0);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          const double eb = is_finite(b) ? std::exp(-f.rate * b) : 0.0;
          return (std::exp(-f.rate * a) - eb) / f.rate;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          auto anti = [&f](double x) {  // integral of (1 - t/upper) on [0, min(x, upper)]
            x = std::min(x, f.upper);
            return x - x * x / (2.0 * f.upper);
          };
          return anti(is_finite(b) ? b : f.upper) - anti(a);
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          // E[(X-k)_+] = E[X] Phi(sigma - d) - k Phi(-d), d = (ln k - mu)/sigma
          auto tail = [&f](double k) {
            const double m = std::exp(f.mu_log + 0.5 * f.sigma_log * f.sigma_log);
            if (k <= 0.0) return m;
            if (!is_finite(k)) return 0.0;
            const double d = (std::log(k) - f.mu_log) / f.sigma_log;
            return m * normal_cdf(f.sigma_log - d) - k * normal_cdf(-d);
          };
          return tail(a) - tail(b);
        } else {
          double acc = 0.0;
          const double width = b - a;  // may be +inf
          for (double x : f.sample) {
            const double exc = x > a ? x - a : 0.0;
            acc += std::min(exc, width);
          }
          return acc / static_cast<double>(f.sample.size());
        }
      },
      family_);
}

double LossDistribution::mean() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return f.tail_alpha > 1.0 ? 1.0 / (f.tail_alpha - 1.0) : kPlusInfinity;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / f.rate;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return f.upper / 2.0;
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          return std::exp(f.mu_log + 0.5 * f.sigma_log * f.sigma_log);
        } else {
          double acc = 0.0;
          for (double x : f.sample) acc += x;
          return acc / static_cast<double>(f.sample.size());
        }
      },
      family_);
}

double LossDistribution::variance() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          const double al = f.tail_alpha;
          if (al <= 2.0) return kPlusInfinity;
          return al / ((al - 1.0) * (al - 1.0) * (al - 2.0));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / (f.rate * f.rate);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return f.upper * f.upper / 12.0;
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          const double s2 = f.sigma_log * f.sigma_log;
          return (std::exp(s2) - 1.0) * std::exp(2.0 * f.mu_log + s2);
        } else {
          double m = 0.0;
          for (double x : f.sample) m += x;
          m /= static_cast<double>(f.sample.size());
          double acc = 0.0;
          for (double x : f.sample) acc += (x - m) * (x - m);
          return acc / static_cast<double>(f.sample.size());
        }
      },
      family_);
}

double LossDistribution::ess_inf() const {
  if (const auto* e = std::get_if<Empirical>(&family_)) return e->sample.front();
  return 0.0;
}

double LossDistribution::ess_sup() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return f.upper;
        } else if constexpr (std::is_same_v<T, Empirical>) {
          return f.sample.back();
        } else {
          return kPlusInfinity;
        }
      },
      family_);
}

std::vector<double> LossDistribution::sample(std::size_t n, std::uint64_t seed) const {
  require(n >= 1, "sample: n must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(unif(rng)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string LossDistribution::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Pareto>) return "pareto";
        else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
        else if constexpr (std::is_same_v<T, Uniform>) return "uniform";
        else if constexpr (std::is_same_v<T, LogNormal>) return "lognormal";
        else return "empirical";
      },
      family_);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double u) {
  if (u <= 0.0) return -kPlusInfinity;
  if (u >= 1.0) return kPlusInfinity;
  // Acklam's rational approximation, polished with one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - plow) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - u;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  const double g = e / pdf;
  return x - g / (1.0 + x * g / 2.0);
}

}  // namespace lvar
