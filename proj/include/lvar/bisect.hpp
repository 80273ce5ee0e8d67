#pragma once

#include <functional>
#include <limits>

namespace lvar {

struct CrossingOptions {
  double abs_tol = 1e-9;
  int max_iter = 200;
  double bracket_cap = 1e18;  // give up and report +infinity beyond this
  // optional probe recorder, fed every evaluated abscissa
  std::function<void(double)>* probe = nullptr;
};

// Smallest x >= lo with pred(x) true, for a monotone predicate (once true,
// true forever). Brackets by doubling from max(lo, 1), then bisects. Returns
// +infinity if the predicate never fires below the bracket cap.
double inf_crossing(const std::function<bool(double)>& pred, double lo = 0.0,
                    const CrossingOptions& opt = {});

}  // namespace lvar
