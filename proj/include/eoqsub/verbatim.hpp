#pragma once

// Published-text reproduction layer.  The source text of this model family
// contains several formulas whose printed form disagrees with the model's own
// derivation (a dropped demand factor in one defective-holding term, a pooled
// holding coefficient in the split-control cycle time, retained minor-item
// terms in the full-substitution radical, and a scaled seed radical).  The
// solvers elsewhere in this library always use the derivation-consistent
// forms; this header exposes the printed forms behind explicit accessors so
// the two can be run side by side and the gap measured by the oracle.
//
// Costs attached to verbatim reports are always the corrected evaluation at
// the verbatim policy, so the suboptimality of a printed formula shows up as
// a positive oracle residual instead of being hidden by a matching wrong
// cost.

#include <cmath>
#include <stdexcept>

#include "eoqsub/cost.hpp"
#include "eoqsub/solvers.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"

namespace eoqsub {
namespace verbatim {

// Average cost as printed: identical to the corrected form except the item-2
// defective-holding term, which appears with a single demand factor
// (ep2*D2*tau^2 / ((1-ep2)^2*x2*T)) instead of the squared-quantity form.
// Dimensionally inconsistent; kept for adjudication tests.
[[nodiscard]] inline CostBreakdown tac_terms_published(const SystemParams& p, double tau,
                                                       double T) {
  const CostBreakdown corrected = tac_terms(p, tau, T, true);
  const double a2 = defect_load(p.item2.defect_share, p.item2.screening_rate);
  const double d2 = p.item2.demand;
  const double holding2 =
      p.item2.holding_cost * (d2 * tau * tau / (2.0 * T) + a2 * d2 * tau * tau / T);
  return make_breakdown(corrected.ordering, corrected.holding1, holding2,
                        corrected.transfer);
}

// Split-control cycle time as printed: the minor item's demand is priced at
// the major item's holding cost, collapsing to the pooled one-product form.
[[nodiscard]] inline double basic_none_cycle_time_published(const SystemParams& p) {
  const double d_sum = p.item1.demand + p.item2.demand;
  return std::sqrt(2.0 * p.order_cost / (p.item1.holding_cost * d_sum));
}

// Full-substitution cycle time as printed: retains minor-item holding and
// screening terms even though no minor-item stock exists in this regime.
[[nodiscard]] inline double eoqiss_full_cycle_time_published(const SystemParams& p) {
  const double d1 = p.item1.demand, d2 = p.item2.demand;
  const double ch1 = p.item1.holding_cost, ch2 = p.item2.holding_cost;
  const double x1 = p.item1.screening_rate, x2 = p.item2.screening_rate;
  const double ep1 = p.item1.defect_share, ep2 = p.item2.defect_share;
  const double n1 = (1.0 - ep1) * (1.0 - ep1);
  const double n2 = (1.0 - ep2) * (1.0 - ep2);
  const double num = 2.0 * p.order_cost * x1 * x2 * n1 * n2;
  const double den = x1 * n1 * ((ch1 * d1 + ch2 * d2) * n2 + 2.0 * ch2 * d2 * ep2) +
                     2.0 * x2 * ch1 * d1 * d1 * ep1 * n2;
  return std::sqrt(num / den);
}

// Seed / split-control cycle time as printed: carries 2*co*x1 in the
// numerator where the derivation of the same pooled cost gives
// co*x1*(1-ep1)^2, inflating the result by sqrt(2) at zero defect share.
[[nodiscard]] inline double eoqiss_none_cycle_time_published(const SystemParams& p) {
  const double d_sum = p.item1.demand + p.item2.demand;
  const double ch1 = p.item1.holding_cost;
  const double x1 = p.item1.screening_rate;
  const double ep1 = p.item1.defect_share;
  const double n1 = (1.0 - ep1) * (1.0 - ep1);
  return std::sqrt(2.0 * p.order_cost * x1 /
                   (ch1 * d_sum * (d_sum * ep1 + x1 * n1 / 2.0)));
}

// Solve dispatch for published-formula reproduction.  Only the combinations
// whose printed optimum differs from the derivation are overridden (classic
// no-substitution, imperfect-quality full and no-substitution, and the
// no-substitution branch of the staged procedure); everything else matches
// the regular solvers.
[[nodiscard]] inline SolveReport solve_published(const SystemParams& p, CostModel model,
                                                 Regime regime,
                                                 const FixedPointSettings& settings = {}) {
  if (model == CostModel::Basic) {
    if (regime == Regime::None) {
      require_valid(p, CostModel::Basic);
      const double T = basic_none_cycle_time_published(p);
      return detail::report_for(p, CostModel::Basic, Policy{T, T});
    }
    return solve(p, CostModel::Basic, regime, settings);
  }
  switch (regime) {
    case Regime::Full: {
      require_valid(p, CostModel::Eoqiss);
      const double T = eoqiss_full_cycle_time_published(p);
      return detail::report_for(p, CostModel::Eoqiss, Policy{0.0, T});
    }
    case Regime::None: {
      require_valid(p, CostModel::Eoqiss);
      const double T = eoqiss_none_cycle_time_published(p);
      SolveReport r = detail::report_for(p, CostModel::Eoqiss, Policy{T, T});
      r.seed_cycle_time = T;
      return r;
    }
    case Regime::Auto: {
      require_valid(p, CostModel::Eoqiss);
      detail::check_settings(settings);
      const double seed = eoqiss_none_cycle_time_published(p);
      const double tau_at_seed = runout_at(p, seed, true);
      if (seed <= tau_at_seed) {
        SolveReport r = detail::report_for(p, CostModel::Eoqiss, Policy{seed, seed});
        r.seed_cycle_time = seed;
        r.theorem1_ok = theorem1_holds(p);
        return r;
      }
      SolveReport r = solve_eoqiss_partial(p, settings);
      r.seed_cycle_time = seed;
      return r;
    }
    case Regime::Partial:
      return solve_eoqiss_partial(p, settings);
  }
  throw std::invalid_argument("unknown model/regime combination");
}

}  // namespace verbatim
}  // namespace eoqsub
