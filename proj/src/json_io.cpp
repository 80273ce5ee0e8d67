#include "lvar/json_io.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace lvar {
namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing field '" + key + "'");
  return decode_number(j.at(key), key);
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ConfigError("missing or non-string field '" + key + "'");
  return j.at(key).get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ConfigError("missing or non-array field '" + key + "'");
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(decode_number(v, key));
  return out;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

json encode_number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

double decode_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kPlusInfinity;
    if (s == "-inf") return -kPlusInfinity;
  }
  throw ConfigError("field '" + what + "' is not a number");
}

LossDistribution distribution_from_json(const json& j) {
  const auto family = require_string(j, "family");
  if (family == "pareto") return LossDistribution::pareto(require_number(j, "alpha"));
  if (family == "exponential") return LossDistribution::exponential(require_number(j, "rate"));
  if (family == "uniform") return LossDistribution::uniform(require_number(j, "upper"));
  if (family == "lognormal")
    return LossDistribution::log_normal(require_number(j, "mu"), require_number(j, "sigma"));
  if (family == "empirical") return LossDistribution::empirical(number_array(j, "sample"));
  throw ConfigError("unknown distribution family '" + family + "'");
}

json distribution_to_json(const LossDistribution& d) {
  return std::visit(
      overloaded{
          [](const Pareto& p) { return json{{"family", "pareto"}, {"alpha", p.tail_alpha}}; },
          [](const Exponential& e) { return json{{"family", "exponential"}, {"rate", e.rate}}; },
          [](const Uniform& u) { return json{{"family", "uniform"}, {"upper", u.upper}}; },
          [](const LogNormal& l) {
            return json{{"family", "lognormal"}, {"mu", l.mu_log}, {"sigma", l.sigma_log}};
          },
          [](const Empirical& e) { return json{{"family", "empirical"}, {"sample", e.sample}}; }},
      d.family());
}

LambdaFunction lambda_from_json(const json& j) {
  const auto kind = require_string(j, "kind");
  LambdaFunction L = [&] {
    if (kind == "constant") return LambdaFunction::constant(require_number(j, "level"));
    if (kind == "two_level")
      return LambdaFunction::two_level(require_number(j, "high"), require_number(j, "low"),
                                       require_number(j, "threshold"));
    if (kind == "exp_affine")
      return LambdaFunction::exp_affine(require_number(j, "scale"), require_number(j, "decay"),
                                        require_number(j, "base"));
    if (kind == "piecewise_constant")
      return LambdaFunction::piecewise_constant(number_array(j, "breakpoints"),
                                                number_array(j, "levels"));
    throw ConfigError("unknown lambda kind '" + kind + "'");
  }();
  const auto check = L.validate();
  if (!check.ok) throw ConfigError("invalid lambda: " + check.message);
  return L;
}

json lambda_to_json(const LambdaFunction& L) {
  return std::visit(
      overloaded{[](const ConstantLevel& c) {
                   return json{{"kind", "constant"}, {"level", c.level}};
                 },
                 [](const TwoLevel& t) {
                   return json{{"kind", "two_level"},
                               {"high", t.high},
                               {"low", t.low},
                               {"threshold", t.threshold}};
                 },
                 [](const ExpAffine& e) {
                   return json{{"kind", "exp_affine"},
                               {"scale", e.scale},
                               {"decay", e.decay},
                               {"base", e.base}};
                 },
                 [](const PiecewiseConstant& p) {
                   return json{{"kind", "piecewise_constant"},
                               {"breakpoints", p.breakpoints},
                               {"levels", p.levels}};
                 }},
      L.variant());
}

PremiumRule premium_from_json(const json& j) {
  const auto kind = require_string(j, "kind");
  if (kind == "expected_value") return PremiumRule::expected_value(require_number(j, "theta"));
  if (kind == "pure_lambda_var") {
    if (!j.contains("prime")) throw ConfigError("missing field 'prime'");
    return PremiumRule::pure_lambda_var(lambda_from_json(j.at("prime")));
  }
  if (kind == "mixed") {
    if (!j.contains("prime")) throw ConfigError("missing field 'prime'");
    return PremiumRule::mixed(require_number(j, "theta"), lambda_from_json(j.at("prime")));
  }
  throw ConfigError("unknown premium kind '" + kind + "'");
}

json premium_to_json(const PremiumRule& rule) {
  switch (rule.kind) {
    case PremiumRule::Kind::ExpectedValue:
      return json{{"kind", "expected_value"}, {"theta", rule.theta}};
    case PremiumRule::Kind::PureLambdaVar:
      return json{{"kind", "pure_lambda_var"}, {"prime", lambda_to_json(*rule.prime)}};
    case PremiumRule::Kind::Mixed:
      return json{{"kind", "mixed"}, {"theta", rule.theta}, {"prime", lambda_to_json(*rule.prime)}};
  }
  return {};
}

IndemnityContract contract_from_json(const json& j) {
  const auto kind = require_string(j, "kind");
  if (kind == "none") return IndemnityContract::none();
  if (kind == "full") return IndemnityContract::full();
  if (kind == "stop_loss") return IndemnityContract::stop_loss(require_number(j, "deductible"));
  if (kind == "truncated_stop_loss")
    return IndemnityContract::truncated_stop_loss(require_number(j, "deductible"),
                                                  require_number(j, "cap"));
  if (kind == "dual_stop_loss")
    return IndemnityContract::dual_stop_loss(require_number(j, "ceiling"));
  if (kind == "quota_share")
    return IndemnityContract::quota_share(require_number(j, "proportion"));
  if (kind == "piecewise_linear")
    return IndemnityContract::piecewise_linear(number_array(j, "knots"),
                                               number_array(j, "slopes"));
  throw ConfigError("unknown contract kind '" + kind + "'");
}

json contract_to_json(const IndemnityContract& f) {
  return std::visit(
      overloaded{[](const NoInsurance&) { return json{{"kind", "none"}}; },
                 [](const FullInsurance&) { return json{{"kind", "full"}}; },
                 [](const StopLoss& s) {
                   return json{{"kind", "stop_loss"}, {"deductible", encode_number(s.deductible)}};
                 },
                 [](const TruncatedStopLoss& t) {
                   return json{{"kind", "truncated_stop_loss"},
                               {"deductible", encode_number(t.deductible)},
                               {"cap", encode_number(t.cap)}};
                 },
                 [](const DualStopLoss& m) {
                   return json{{"kind", "dual_stop_loss"}, {"ceiling", encode_number(m.ceiling)}};
                 },
                 [](const QuotaShare& q) {
                   return json{{"kind", "quota_share"}, {"proportion", q.proportion}};
                 },
                 [](const PiecewiseLinearIndemnity& p) {
                   return json{{"kind", "piecewise_linear"}, {"knots", p.knots},
                               {"slopes", p.slopes}};
                 }},
      f.variant());
}

SolveReport report_from_json(const json& j) {
  SolveReport r;
  if (!j.contains("contract")) throw ConfigError("missing field 'contract'");
  r.contract = contract_from_json(j.at("contract"));
  r.optimal_value = require_number(j, "optimal_value");
  r.effective_level = require_number(j, "effective_level");
  r.branch = require_string(j, "branch");
  if (j.contains("diagnostics")) {
    for (const auto& pair : j.at("diagnostics"))
      r.diagnostics.emplace_back(decode_number(pair.at(0), "diagnostics"),
                                 decode_number(pair.at(1), "diagnostics"));
  }
  return r;
}

json report_to_json(const SolveReport& r) {
  json diag = json::array();
  for (const auto& [x, v] : r.diagnostics)
    diag.push_back(json::array({encode_number(x), encode_number(v)}));
  return json{{"contract", contract_to_json(r.contract)},
              {"optimal_value", encode_number(r.optimal_value)},
              {"effective_level", encode_number(r.effective_level)},
              {"branch", r.branch},
              {"diagnostics", diag}};
}

RunConfig run_config_from_json(const json& j) {
  static const std::set<std::string> kProblems = {
      "lambdavar",       "expected_general", "expected_stoploss",
      "existence",       "lambdavar_premium", "mixed_premium",
      "quota_share",     "robust_lr",        "robust_mv"};

  RunConfig cfg;
  cfg.problem = require_string(j, "problem");
  if (!kProblems.count(cfg.problem)) throw ConfigError("unknown problem '" + cfg.problem + "'");

  if (j.contains("distribution")) cfg.distribution = distribution_from_json(j.at("distribution"));
  if (j.contains("lambda")) cfg.lambda = lambda_from_json(j.at("lambda"));
  if (j.contains("premium")) cfg.premium = premium_from_json(j.at("premium"));
  if (j.contains("beta")) cfg.beta = require_number(j, "beta");
  if (j.contains("mu")) cfg.mu = require_number(j, "mu");
  if (j.contains("sigma")) cfg.sigma = require_number(j, "sigma");

  if (!cfg.lambda) throw ConfigError("problem '" + cfg.problem + "' requires a lambda spec");
  if (cfg.problem == "robust_mv") {
    if (!cfg.mu || !cfg.sigma) throw ConfigError("robust_mv requires 'mu' and 'sigma'");
    if (!(*cfg.mu > 0.0) || !(*cfg.sigma >= 0.0))
      throw ConfigError("robust_mv requires mu > 0 and sigma >= 0");
  } else if (!cfg.distribution) {
    throw ConfigError("problem '" + cfg.problem + "' requires a distribution spec");
  }
  if (cfg.problem == "robust_lr" && !cfg.beta)
    throw ConfigError("robust_lr requires 'beta'");
  if (cfg.beta && !(*cfg.beta > 0.0 && *cfg.beta <= 1.0))
    throw ConfigError("'beta' must lie in (0, 1]");

  const bool needs_theta = cfg.problem != "lambdavar" && cfg.problem != "lambdavar_premium";
  const bool needs_prime =
      cfg.problem == "lambdavar_premium" || cfg.problem == "mixed_premium";
  if (cfg.problem != "lambdavar") {
    if (!cfg.premium) throw ConfigError("problem '" + cfg.problem + "' requires a premium spec");
    if (needs_theta && cfg.premium->kind == PremiumRule::Kind::PureLambdaVar)
      throw ConfigError("problem '" + cfg.problem + "' needs a loading-based premium");
    if (needs_prime && !cfg.premium->prime)
      throw ConfigError("problem '" + cfg.problem + "' needs a premium with a 'prime' lambda");
  }

  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    SweepSpec sw;
    sw.parameter = require_string(s, "parameter");
    sw.from = require_number(s, "from");
    sw.to = require_number(s, "to");
    if (!s.contains("steps") || !s.at("steps").is_number_integer())
      throw ConfigError("sweep requires integer 'steps'");
    sw.steps = s.at("steps").get<int>();
    if (!is_finite(sw.from) || !is_finite(sw.to) || sw.from > sw.to)
      throw ConfigError("sweep bounds must be finite and ordered");
    if (sw.steps < 2) throw ConfigError("sweep needs at least 2 steps");
    static const std::set<std::string> kSweepable = {"theta", "beta", "alpha", "rate",
                                                     "mu", "sigma"};
    if (!kSweepable.count(sw.parameter))
      throw ConfigError("unknown sweep parameter '" + sw.parameter + "'");
    cfg.sweep = sw;
  }

  if (j.contains("output")) {
    const auto& o = j.at("output");
    OutputSpec out;
    out.path = require_string(o, "path");
    if (o.contains("format")) out.format = require_string(o, "format");
    if (out.format != "json" && out.format != "csv")
      throw ConfigError("output format must be 'json' or 'csv'");
    cfg.output = out;
  }
  return cfg;
}

std::string report_csv_header() {
  return "parameter,optimal_value,effective_level,contract,deductible_or_ceiling,cap,branch";
}

std::string report_csv_row(double parameter, const SolveReport& r) {
  double first = std::nan("");
  double cap = std::nan("");
  std::visit(overloaded{[](const NoInsurance&) {}, [](const FullInsurance&) {},
                        [&](const StopLoss& s) { first = s.deductible; },
                        [&](const TruncatedStopLoss& t) {
                          first = t.deductible;
                          cap = t.cap;
                        },
                        [&](const DualStopLoss& m) { first = m.ceiling; },
                        [&](const QuotaShare& q) { first = q.proportion; },
                        [](const PiecewiseLinearIndemnity&) {}},
             r.contract.variant());
  std::ostringstream os;
  os.precision(12);
  os << parameter << ',' << r.optimal_value << ',' << r.effective_level << ','
     << r.contract.kind_name() << ',';
  if (!std::isnan(first)) os << first;
  os << ',';
  if (!std::isnan(cap)) os << cap;
  os << ',' << r.branch;
  return os.str();
}

}  // namespace lvar
