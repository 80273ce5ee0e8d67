#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lvar/json_io.hpp"
#include "lvar/parallel.hpp"
#include "lvar/reproduce.hpp"
#include "lvar/risk.hpp"
#include "lvar/solve.hpp"

namespace {

using lvar::RunConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Applies a sweep override, rebuilding the piece of the config it names.
RunConfig with_parameter(const RunConfig& base, const std::string& name, double value) {
  RunConfig cfg = base;
  if (name == "theta") {
    if (!cfg.premium) throw lvar::ConfigError("sweep over 'theta' needs a premium spec");
    cfg.premium->theta = value;
  } else if (name == "beta") {
    cfg.beta = value;
  } else if (name == "mu") {
    cfg.mu = value;
  } else if (name == "sigma") {
    cfg.sigma = value;
  } else if (name == "alpha") {
    cfg.distribution = lvar::LossDistribution::pareto(value);
  } else if (name == "rate") {
    cfg.distribution = lvar::LossDistribution::exponential(value);
  } else {
    throw lvar::ConfigError("unknown sweep parameter '" + name + "'");
  }
  return cfg;
}

lvar::SolveReport solve_one(const RunConfig& cfg) {
  const auto& L = *cfg.lambda;
  if (cfg.problem == "lambdavar") {
    const auto r = lvar::lambda_var(*cfg.distribution, L);
    lvar::SolveReport rep;
    rep.contract = lvar::IndemnityContract::none();
    rep.optimal_value = r.value;
    rep.effective_level = r.crossing_level;
    rep.branch = "risk_measure_only";
    return rep;
  }
  const double theta = cfg.premium ? cfg.premium->theta : 0.0;
  if (cfg.problem == "expected_general")
    return lvar::solve_expected_general(*cfg.distribution, L, theta);
  if (cfg.problem == "expected_stoploss")
    return lvar::solve_expected_stoploss(*cfg.distribution, L, theta);
  if (cfg.problem == "existence") {
    const auto ex = lvar::existence_positive_finite_deductible(*cfg.distribution, L, theta);
    lvar::SolveReport rep;
    rep.contract = lvar::IndemnityContract::none();
    rep.optimal_value = ex.exists ? 1.0 : 0.0;
    rep.effective_level = ex.witness;
    rep.branch = ex.exists ? "exists" : "does_not_exist: " + ex.reason;
    return rep;
  }
  if (cfg.problem == "lambdavar_premium")
    return lvar::solve_lambdavar_premium(*cfg.distribution, L, *cfg.premium->prime);
  if (cfg.problem == "mixed_premium")
    return lvar::solve_mixed_premium(*cfg.distribution, L, *cfg.premium->prime, theta);
  if (cfg.problem == "quota_share")
    return lvar::solve_quota_share(*cfg.distribution, L, theta);
  if (cfg.problem == "robust_lr")
    return lvar::solve_robust_lr(*cfg.distribution, L, theta, *cfg.beta);
  if (cfg.problem == "robust_mv")
    return lvar::solve_robust_mv(*cfg.mu, *cfg.sigma, L, theta);
  throw lvar::ConfigError("unknown problem '" + cfg.problem + "'");
}

void write_artifact(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

int run_reproduce(const std::string& target, const std::string& out_path) {
  const auto res = lvar::reproduce(target);
  write_artifact(out_path.empty() ? target + ".csv" : out_path, res.csv);
  std::cerr << res.summary << '\n';
  return res.trends_ok ? kExitOk : kExitNumeric;
}

int run_config(const std::string& config_path, std::string out_path, std::string format) {
  std::ifstream in(config_path);
  if (!in) throw lvar::ConfigError("cannot open config file '" + config_path + "'");
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::exception& e) {
    throw lvar::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const RunConfig cfg = lvar::run_config_from_json(parsed);
  if (cfg.output) {
    if (out_path.empty()) out_path = cfg.output->path;
    if (format.empty()) format = cfg.output->format;
  }
  if (format.empty()) format = "json";

  if (!cfg.sweep) {
    const auto rep = solve_one(cfg);
    if (format == "csv")
      write_artifact(out_path, lvar::report_csv_header() + "\n" + lvar::report_csv_row(0.0, rep) +
                                   "\n");
    else
      write_artifact(out_path, lvar::report_to_json(rep).dump(2) + "\n");
    return kExitOk;
  }

  const auto& sw = *cfg.sweep;
  std::vector<double> grid(sw.steps);
  for (int i = 0; i < sw.steps; ++i)
    grid[i] = sw.from + (sw.to - sw.from) * static_cast<double>(i) /
                            static_cast<double>(sw.steps - 1);
  std::vector<lvar::SolveReport> reports(grid.size());
  std::vector<std::string> errors(grid.size());
  lvar::parallel_for(grid.size(), [&](std::size_t i) {
    try {
      reports[i] = solve_one(with_parameter(cfg, sw.parameter, grid[i]));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("sweep point " + std::to_string(grid[i]) + ": " + errors[i]);

  if (format == "csv") {
    std::string text = lvar::report_csv_header() + "\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      text += lvar::report_csv_row(grid[i], reports[i]) + "\n";
    write_artifact(out_path, text);
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      json row = lvar::report_to_json(reports[i]);
      row["parameter"] = grid[i];
      rows.push_back(std::move(row));
    }
    write_artifact(out_path, rows.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LambdaVaR insurance-design solver"};
  std::string config_path, out_path, format, reproduce_target;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "Output artifact path ('-' for stdout)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Seed for randomized diagnostics (reserved)");
  app.add_option("--reproduce", reproduce_target, "Named sweep bundle")
      ->check(CLI::IsMember(lvar::reproduce_targets()));
  CLI11_PARSE(app, argc, argv);

  try {
    if (!reproduce_target.empty()) return run_reproduce(reproduce_target, out_path);
    if (config_path.empty()) {
      std::cerr << "error: provide --config or --reproduce\n";
      return kExitConfig;
    }
    return run_config(config_path, out_path, format);
  } catch (const lvar::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
