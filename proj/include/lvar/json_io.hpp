#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lvar/contract.hpp"
#include "lvar/distribution.hpp"
#include "lvar/lambda_function.hpp"
#include "lvar/solve.hpp"

namespace lvar {

/// Raised on malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Infinite values are carried as the strings "inf" / "-inf" so reports
// survive a JSON round trip unchanged.
nlohmann::json encode_number(double x);
double decode_number(const nlohmann::json& j, const std::string& what);

LossDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const LossDistribution& d);

LambdaFunction lambda_from_json(const nlohmann::json& j);
nlohmann::json lambda_to_json(const LambdaFunction& L);

PremiumRule premium_from_json(const nlohmann::json& j);
nlohmann::json premium_to_json(const PremiumRule& rule);

IndemnityContract contract_from_json(const nlohmann::json& j);
nlohmann::json contract_to_json(const IndemnityContract& f);

SolveReport report_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const SolveReport& r);

struct SweepSpec {
  std::string parameter;  // "theta", "beta", "alpha", ...
  double from = 0.0;
  double to = 0.0;
  int steps = 0;  // number of evaluation points, >= 2
};

struct OutputSpec {
  std::string path;
  std::string format = "json";  // "json" or "csv"
};

struct RunConfig {
  std::optional<LossDistribution> distribution;
  std::optional<LambdaFunction> lambda;
  std::optional<PremiumRule> premium;
  std::string problem;
  std::optional<double> beta;   // likelihood-ratio robustness
  std::optional<double> mu;     // moment robustness
  std::optional<double> sigma;
  std::optional<SweepSpec> sweep;
  std::optional<OutputSpec> output;
};

// Parses and validates; throws ConfigError with a human-readable message on
// any violation (unknown problem, missing parameter, bad sweep bounds, ...).
RunConfig run_config_from_json(const nlohmann::json& j);

// Fixed CSV schema for sweep output.
std::string report_csv_header();
std::string report_csv_row(double parameter, const SolveReport& r);

}  // namespace lvar
