#pragma once

// Trajectory oracle: rebuilds the per-cycle cost from the piecewise-linear
// inventory paths instead of the closed forms.  Levels are linear between
// events, so every holding integral is an exact trapezoid; there is no
// discretization knob and nothing here shares code with cost.hpp's algebra
// beyond the lot-size definitions.
//
// Item 2: starts at lot2, drains at D2, loses its defective lump E[p2]*lot2
// when screening completes at ts2 = lot2/x2, reaches zero at tau.
// Item 1: starts at lot1, drains at D1 until tau and at D1+D2 afterwards
// (it covers the minor item's demand after the run-out), loses E[p1]*lot1 at
// ts1 = lot1/x1, reaches zero at T.

#include <algorithm>
#include <cmath>
#include <vector>

#include "eoqsub/cost.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"

namespace eoqsub {

namespace detail {

// Appends [t0,t1] with the given start level; returns the level after the
// segment's end jump.
inline double push_segment(std::vector<TrajectorySegment>& out, double t0, double t1,
                           double level, double slope, double jump) {
  out.push_back({t0, t1, level, slope, jump});
  return level + slope * (t1 - t0) + jump;
}

[[nodiscard]] inline double trapezoid(const std::vector<TrajectorySegment>& segs) {
  double area = 0.0;
  for (const auto& s : segs) {
    const double dt = s.t_end - s.t_begin;
    const double end_level = s.level_begin + s.slope * dt;  // before the jump
    area += (s.level_begin + end_level) * dt / 2.0;
  }
  return area;
}

inline void check_levels(const std::vector<TrajectorySegment>& segs, double tol,
                         const char* item) {
  for (const auto& s : segs) {
    const double end_level = s.level_begin + s.slope * (s.t_end - s.t_begin);
    if (s.level_begin < -tol || end_level < -tol || end_level + s.jump_at_end < -tol)
      throw InfeasibleError(std::string("infeasible policy: ") + item +
                            " inventory would go negative before its scheduled zero");
  }
}

}  // namespace detail

[[nodiscard]] inline SimulationResult simulate_cycle(const SystemParams& p,
                                                     const Policy& pol) {
  require_valid(p, CostModel::Eoqiss);
  require_policy(pol);

  const double tau = pol.runout_time;
  const double T = pol.cycle_time;
  const LotPlan lots = lot_plan_value(p, tau, T, true);
  const ScreeningEpochs epochs = screening_epochs(p, lots);
  const double scale = std::max({lots.lot1, lots.lot2, 1.0});
  const double tol = 1e-9 * scale;

  CycleTrace trace;
  trace.lots = lots;
  trace.epochs = epochs;

  // --- item 2: [0, tau] ----------------------------------------------------
  const double drop2 = p.item2.defect_share * lots.lot2;
  if (tau > 0.0) {
    if (drop2 > 0.0 && epochs.ts2 > tau * (1.0 + 1e-12))
      throw InfeasibleError("infeasible policy: minor item screening completes after its "
                            "run-out time (ts2 > tau)");
    double level = lots.lot2;
    double t = 0.0;
    if (drop2 > 0.0 && epochs.ts2 < tau) {
      level = detail::push_segment(trace.item2, t, epochs.ts2, level, -p.item2.demand, -drop2);
      t = epochs.ts2;
    }
    // Remaining run to zero; carries the lump if screening lands exactly at tau.
    const double end_jump = (drop2 > 0.0 && epochs.ts2 >= tau) ? -drop2 : 0.0;
    detail::push_segment(trace.item2, t, tau, level, -p.item2.demand, end_jump);
  }

  // --- item 1: [0, T], slope break at tau, lump at ts1 ---------------------
  const double drop1 = p.item1.defect_share * lots.lot1;
  if (drop1 > 0.0 && epochs.ts1 >= T * (1.0 - 1e-12))
    throw InfeasibleError("infeasible policy: major item screening completes at or after "
                          "cycle end (ts1 >= T)");
  {
    std::vector<double> cuts{0.0, T};
    if (tau > 0.0 && tau < T) cuts.push_back(tau);
    if (drop1 > 0.0 && epochs.ts1 > 0.0 && epochs.ts1 < T) cuts.push_back(epochs.ts1);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double level = lots.lot1;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double t0 = cuts[i];
      const double t1 = cuts[i + 1];
      const double slope =
          (t0 < tau) ? -p.item1.demand : -(p.item1.demand + p.item2.demand);
      const double jump = (drop1 > 0.0 && t1 == epochs.ts1) ? -drop1 : 0.0;
      level = detail::push_segment(trace.item1, t0, t1, level, slope, jump);
    }
    if (std::abs(level) > tol)
      throw InfeasibleError("infeasible policy: major item trace does not reach zero at "
                            "cycle end");
  }

  detail::check_levels(trace.item1, tol, "major item");
  detail::check_levels(trace.item2, tol, "minor item");

  const double holding1 = p.item1.holding_cost * detail::trapezoid(trace.item1);
  const double holding2 = p.item2.holding_cost * detail::trapezoid(trace.item2);
  const double transfer = p.transfer_cost * p.item2.demand * (T - tau);
  return SimulationResult{std::move(trace),
                          make_breakdown(p.order_cost, holding1, holding2, transfer)};
}

// Average-annual cost from the simulated cycle; the oracle-side counterpart
// of tac_eoqiss.
[[nodiscard]] inline double simulated_tac(const SystemParams& p, double tau, double T) {
  return simulate_cycle(p, Policy{tau, T}).cost.total / T;
}

[[nodiscard]] inline SystemParams zero_defects(SystemParams p) {
  p.item1.defect_share = 0.0;
  p.item2.defect_share = 0.0;
  return p;
}

}  // namespace eoqsub
