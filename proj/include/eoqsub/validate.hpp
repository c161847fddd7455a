#pragma once

// Assumption checks.  Violations are returned as data, one entry per broken
// invariant, so callers can report all of them at once.

#include <cmath>
#include <string>
#include <vector>

#include "eoqsub/types.hpp"

namespace eoqsub {

namespace detail {

inline void check_item(const ItemParams& it, int index, bool with_imperfection,
                       std::vector<Violation>& out) {
  const std::string n = std::to_string(index);
  if (!(it.demand > 0.0) || !std::isfinite(it.demand))
    out.push_back({"domain", "d" + n, "demand d" + n + " must be positive and finite"});
  if (!(it.holding_cost > 0.0) || !std::isfinite(it.holding_cost))
    out.push_back({"domain", "ch" + n, "holding cost ch" + n + " must be positive and finite"});
  if (!with_imperfection) return;

  if (!(it.screening_rate > 0.0) || !std::isfinite(it.screening_rate))
    out.push_back({"domain", "x" + n, "screening rate x" + n + " must be positive and finite"});
  if (!(it.defect_share >= 0.0) || !(it.defect_share < 1.0))
    out.push_back({"A5", "ep" + n,
                   "expected defective share ep" + n + " must lie in [0, 1)"});
  if (it.screening_rate > 0.0 && it.demand > 0.0 && !(it.screening_rate > it.demand))
    out.push_back({"A6", "x" + n,
                   "screening must outpace demand: x" + n + " > d" + n + " required"});
  if (it.screening_rate > it.demand && it.defect_share >= 0.0 && it.defect_share < 1.0) {
    const double ceiling = 1.0 - it.demand / it.screening_rate;
    if (!(it.defect_share < ceiling))
      out.push_back({"A7", "ep" + n,
                     "ep" + n + " must stay below 1 - d" + n + "/x" + n + " = " +
                         std::to_string(ceiling) +
                         " or good stock cannot cover demand during screening"});
  }
}

}  // namespace detail

// Checks every parameter-level model assumption.  The Basic cost model ignores
// imperfection, so its scope skips the screening/defect checks (A5-A7).
[[nodiscard]] inline std::vector<Violation> validate(const SystemParams& p,
                                                     CostModel scope = CostModel::Eoqiss) {
  std::vector<Violation> out;
  const bool imperfect = scope == CostModel::Eoqiss;
  detail::check_item(p.item1, 1, imperfect, out);
  detail::check_item(p.item2, 2, imperfect, out);
  if (!(p.order_cost > 0.0) || !std::isfinite(p.order_cost))
    out.push_back({"domain", "co", "ordering cost co must be positive and finite"});
  if (!(p.transfer_cost >= 0.0) || !std::isfinite(p.transfer_cost))
    out.push_back({"domain", "ct", "transfer cost ct must be non-negative and finite"});
  if (!(p.item2.holding_cost > p.item1.holding_cost))
    out.push_back({"A9", "ch2",
                   "the substitutable item must be the costlier one to hold: ch2 > ch1"});
  return out;
}

// Throwing form used by the solvers; message lists every violation.
inline void require_valid(const SystemParams& p, CostModel scope) {
  auto v = validate(p, scope);
  if (v.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& x : v) msg += " [" + x.assumption + "] " + x.message + ";";
  throw ValidationError(msg, std::move(v));
}

// Policy sanity shared by the checked cost/lot operations.
inline void require_policy(const Policy& pol) {
  if (!(pol.cycle_time > 0.0) || !std::isfinite(pol.cycle_time))
    throw std::domain_error("cycle time T must be positive and finite");
  if (!(pol.runout_time >= 0.0) || !(pol.runout_time <= pol.cycle_time) ||
      !std::isfinite(pol.runout_time))
    throw std::domain_error("run-out time tau must lie in [0, T]");
}

}  // namespace eoqsub
