#pragma once

// Closed-form cycle costs and lot sizes.
//
// The two cost models share one kernel and differ only in whether the
// screening-delay terms are active:
//
//   ordering  c_o / T
//   holding1  c_h1 [ (D1+D2) T/2 - D2 tau^2/(2T) + a1 ((D1+D2)T - D2 tau)^2 / T ]
//   holding2  c_h2 [ D2 tau^2/(2T)              + a2 (D2 tau)^2 / T ]
//   transfer  c_t D2 (1 - tau/T)
//
// with a_i = E[p_i] / ((1-E[p_i])^2 x_i).  The a_i terms are the extra stock
// carried while defectives wait for screening to finish: a lot y screened at
// rate x holds its E[p] y defectives for y/x years, contributing E[p] y^2 / x
// to the per-cycle holding integral; substituting the zero-terminal lots
// turns y1^2 into ((D1+D2)T - D2 tau)^2 / (1-E[p1])^2 and y2^2 into
// (D2 tau)^2 / (1-E[p2])^2.  With E[p] = 0 both a_i vanish and the kernel is
// exactly the classic substitution cost.  The minor-item delay term is
// quadratic in D2 tau; the variant that is linear in D2 (as the closed forms
// were once published) lives in verbatim.hpp and fails the trajectory oracle.

#include <cmath>

#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"

namespace eoqsub {

// E[p] / ((1-E[p])^2 x): per-unit-squared holding load of the screening delay.
[[nodiscard]] inline double defect_load(double defect_share, double screening_rate) {
  const double net = 1.0 - defect_share;
  return defect_share / (net * net * screening_rate);
}

namespace detail {

// Flat view of SystemParams plus derived coefficients; a1/a2 are zeroed for
// the Basic model so both models run the same arithmetic.
struct Coef {
  double d1, d2, ch1, ch2, co, ct;
  double dh;        // ch2 - ch1
  double a1, a2;    // screening-delay loads (0 when defects are ignored)
  double ep1, ep2;  // defect shares as used by the lot formulas (0 for Basic)
};

[[nodiscard]] inline Coef unpack(const SystemParams& p, bool with_defects) {
  Coef c{};
  c.d1 = p.item1.demand;
  c.d2 = p.item2.demand;
  c.ch1 = p.item1.holding_cost;
  c.ch2 = p.item2.holding_cost;
  c.co = p.order_cost;
  c.ct = p.transfer_cost;
  c.dh = c.ch2 - c.ch1;
  if (with_defects) {
    c.ep1 = p.item1.defect_share;
    c.ep2 = p.item2.defect_share;
    c.a1 = defect_load(c.ep1, p.item1.screening_rate);
    c.a2 = defect_load(c.ep2, p.item2.screening_rate);
  }
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// raw kernels (no validation; usable off the feasible wedge, e.g. by the
// finite-difference Hessian probes, as the formulas extend smoothly)
// ---------------------------------------------------------------------------

[[nodiscard]] inline CostBreakdown tac_terms(const SystemParams& p, double tau, double T,
                                             bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  const double dsum = c.d1 + c.d2;
  const double good1 = dsum * T - c.d2 * tau;  // (1-E[p1]) * lot1
  const double good2 = c.d2 * tau;             // (1-E[p2]) * lot2
  const double holding1 =
      c.ch1 * (dsum * T / 2.0 - c.d2 * tau * tau / (2.0 * T) + c.a1 * good1 * good1 / T);
  const double holding2 =
      c.ch2 * (c.d2 * tau * tau / (2.0 * T) + c.a2 * good2 * good2 / T);
  const double transfer = c.ct * c.d2 * (1.0 - tau / T);
  return make_breakdown(c.co / T, holding1, holding2, transfer);
}

[[nodiscard]] inline double tac_value(const SystemParams& p, double tau, double T,
                                      bool with_defects) {
  return tac_terms(p, tau, T, with_defects).total;
}

[[nodiscard]] inline LotPlan lot_plan_value(const SystemParams& p, double tau, double T,
                                            bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  // Zero terminal inventory fixes both lots: the good remainder of each lot
  // must exactly cover the demand routed to it.
  return LotPlan{((c.d1 + c.d2) * T - c.d2 * tau) / (1.0 - c.ep1),
                 c.d2 * tau / (1.0 - c.ep2)};
}

// ---------------------------------------------------------------------------
// checked operations
// ---------------------------------------------------------------------------

// Classic substitution cost (defects ignored).  Rejects T <= 0 or tau outside
// [0, T]; components are each non-negative and sum exactly to total.
[[nodiscard]] inline CostBreakdown tac_basic(const SystemParams& p, const Policy& pol) {
  require_valid(p, CostModel::Basic);
  require_policy(pol);
  return tac_terms(p, pol.runout_time, pol.cycle_time, false);
}

// Imperfect-quality substitution cost.  Equals tac_basic term-by-term when
// both defect shares are zero.
[[nodiscard]] inline CostBreakdown tac_eoqiss(const SystemParams& p, const Policy& pol) {
  require_valid(p, CostModel::Eoqiss);
  require_policy(pol);
  return tac_terms(p, pol.runout_time, pol.cycle_time, true);
}

// Per-cycle totals: T times the average-annual breakdown.
[[nodiscard]] inline CostBreakdown tc_eoqiss(const SystemParams& p, const Policy& pol) {
  const CostBreakdown a = tac_eoqiss(p, pol);
  const double T = pol.cycle_time;
  return make_breakdown(a.ordering * T, a.holding1 * T, a.holding2 * T, a.transfer * T);
}

// Lots that produce zero terminal inventory for both items under `pol`.
[[nodiscard]] inline LotPlan lot_plan(const SystemParams& p, const Policy& pol) {
  require_valid(p, CostModel::Eoqiss);
  require_policy(pol);
  return lot_plan_value(p, pol.runout_time, pol.cycle_time, true);
}

[[nodiscard]] inline ScreeningEpochs screening_epochs(const SystemParams& p,
                                                      const LotPlan& lots) {
  return ScreeningEpochs{lots.lot1 / p.item1.screening_rate,
                         lots.lot2 / p.item2.screening_rate};
}

// ---------------------------------------------------------------------------
// stationarity coefficients
//
// In tau-then-T form the average cost is  TAC = alpha T + beta(tau)/T + gamma(tau):
//   alpha     = ch1 (D1+D2) (1/2 + a1 (D1+D2))
//   beta(tau) = co + dh D2 tau^2/2 + (ch1 a1 + ch2 a2) (D2 tau)^2 - D2 ct tau
//   gamma(tau)= ct D2 - 2 ch1 a1 (D1+D2) D2 tau
// (the a1 square in holding1 expands as (D1+D2)^2 T - 2(D1+D2)D2 tau
//  + (D2 tau)^2/T, feeding all three coefficients).  Stationarity in T gives
// T* = sqrt(beta/alpha); stationarity in tau is affine in T:
//   tau(T) = (ct + 2 ch1 a1 (D1+D2) T) / (dh + 2 (ch1 a1 + ch2 a2) D2)
// ---------------------------------------------------------------------------

[[nodiscard]] inline double alpha_coef(const SystemParams& p, bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  const double dsum = c.d1 + c.d2;
  return c.ch1 * dsum * (0.5 + c.a1 * dsum);
}

[[nodiscard]] inline double beta_coef(const SystemParams& p, double tau, bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  const double g2 = c.d2 * tau;
  return c.co + c.dh * c.d2 * tau * tau / 2.0 + (c.ch1 * c.a1 + c.ch2 * c.a2) * g2 * g2 -
         c.d2 * c.ct * tau;
}

[[nodiscard]] inline double gamma_coef(const SystemParams& p, double tau, bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  return c.ct * c.d2 - 2.0 * c.ch1 * c.a1 * (c.d1 + c.d2) * c.d2 * tau;
}

// Run-out time that is stationary in tau for a given cycle time T.
[[nodiscard]] inline double runout_at(const SystemParams& p, double T, bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  return (c.ct + 2.0 * c.ch1 * c.a1 * (c.d1 + c.d2) * T) /
         (c.dh + 2.0 * (c.ch1 * c.a1 + c.ch2 * c.a2) * c.d2);
}

// tau = T boundary (no substitution): TAC = alpha_none T + co/T with the
// holding split between the items' own rates.
[[nodiscard]] inline double alpha_none_coef(const SystemParams& p, bool with_defects) {
  const auto c = detail::unpack(p, with_defects);
  return c.ch1 * (c.d1 / 2.0 + c.a1 * c.d1 * c.d1) +
         c.ch2 * (c.d2 / 2.0 + c.a2 * c.d2 * c.d2);
}

}  // namespace eoqsub
