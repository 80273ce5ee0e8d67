#pragma once

#include <string>
#include <vector>

namespace lvar {

struct SweepRow {
  double parameter = 0.0;
  double column = 0.0;
};

struct ReproduceResult {
  std::string target;
  std::string csv;      // full CSV text, schema fixed per target
  std::string summary;  // qualitative claims checked against the sweep
  bool trends_ok = true;
  std::vector<SweepRow> rows;  // empty for the worked-example target
};

// Targets: example1 (worked truncated-stop-loss examples, stated vs
// recomputed values side by side) and fig2..fig7 (deterministic Pareto-tail
// parameter sweeps with Lambda(x) = 0.09 e^{-x} + 0.9).
ReproduceResult reproduce(const std::string& target);

std::vector<std::string> reproduce_targets();

}  // namespace lvar
