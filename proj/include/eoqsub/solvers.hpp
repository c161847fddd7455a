#pragma once

// Closed-form and fixed-point solvers for the six regime/model combinations,
// the seeded auto procedure, and the two convexity predicates.  Every solver
// returns a SolveReport whose cost is the corrected average-cost evaluation
// at the reported policy.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "eoqsub/cost.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"
#include "eoqsub/verify.hpp"

namespace eoqsub {

// Strict bound on the transfer cost below which the interior (partial)
// stationary point exists and is the unique minimum: ct < sqrt(2 co dh / D2).
[[nodiscard]] inline bool theorem1_holds(const SystemParams& p) {
  const double dh = p.item2.holding_cost - p.item1.holding_cost;
  return p.transfer_cost <
         std::sqrt(2.0 * p.order_cost * dh / p.item2.demand);
}

// Published sufficient condition, evaluated verbatim at a policy.  The
// (T - 1) factor mixes a time with a pure number; it is reproduced as
// printed, not repaired.
[[nodiscard]] inline bool theorem2_holds(const SystemParams& p, const Policy& pol) {
  const double dh = p.item2.holding_cost - p.item1.holding_cost;
  return p.order_cost > p.transfer_cost * p.transfer_cost / (2.0 * dh) +
                            pol.runout_time * (pol.cycle_time - 1.0) *
                                p.transfer_cost * p.item2.demand;
}

// Central-difference Hessian of f(tau, T) at `pol`; `step` is relative to
// max(|tau|, T, 1).  Positive definiteness is judged by leading minors.
// Evaluates the smooth extension of f around the point, so callers may pass
// boundary or exterior stationary points; the conclusion is meaningful
// wherever f is twice differentiable.
template <class F>
[[nodiscard]] HessianCheck hessian_psd(F&& f, const Policy& pol, double step = 1e-4) {
  if (!(step > 0.0)) throw StepError("finite-difference step must be positive");
  const double tau = pol.runout_time, T = pol.cycle_time;
  const double h = step * std::max({std::fabs(tau), std::fabs(T), 1.0});
  if (tau + h == tau || T + h == T)
    throw StepError("finite-difference step underflowed at the evaluation point");
  if (!(T - h > 0.0))
    throw StepError("finite-difference step exceeds the cycle time at the evaluation point");

  const double f00 = f(tau, T);
  HessianCheck out;
  out.h11 = (f(tau + h, T) - 2.0 * f00 + f(tau - h, T)) / (h * h);
  out.h22 = (f(tau, T + h) - 2.0 * f00 + f(tau, T - h)) / (h * h);
  out.h12 = (f(tau + h, T + h) - f(tau + h, T - h) - f(tau - h, T + h) +
             f(tau - h, T - h)) /
            (4.0 * h * h);
  out.determinant = out.h11 * out.h22 - out.h12 * out.h12;
  out.positive_definite = out.h11 > 0.0 && out.determinant > 0.0;
  return out;
}

// Seed cycle time of the staged procedure: first-order optimum of the
// pooled-demand cost restricted to tau = T, i.e. sqrt(co / alpha).
[[nodiscard]] inline double seed_cycle_time(const SystemParams& p, CostModel model) {
  return std::sqrt(p.order_cost / alpha_coef(p, model == CostModel::Eoqiss));
}

namespace detail {

template <class G>
[[nodiscard]] inline bool curvature_positive(G&& g, double t) {
  const double h = 1e-4 * std::max(t, 1.0);
  return g(t + h) - 2.0 * g(t) + g(t - h) > 0.0;
}

// Assembles the parts of a report every solver shares: mode classification,
// lots, cost breakdown, substituted volume, and a convexity flag.  Interior
// policies get the full 2-D Hessian; boundary regimes get the second
// derivative along their one free direction (T at tau = 0, the diagonal at
// tau = T), which is the restriction that matters there.
[[nodiscard]] inline SolveReport report_for(const SystemParams& p, CostModel model,
                                            const Policy& pol) {
  const bool wd = model == CostModel::Eoqiss;
  SolveReport r;
  r.model = model;
  r.mode = classify_mode(pol.runout_time, pol.cycle_time);
  r.policy = pol;
  r.lots = lot_plan_value(p, pol.runout_time, pol.cycle_time, wd);
  r.cost = tac_terms(p, pol.runout_time, pol.cycle_time, wd);
  r.substituted_volume = p.item2.demand * (pol.cycle_time - pol.runout_time);
  switch (r.mode) {
    case SubstitutionMode::Partial:
      r.hessian_psd =
          hessian_psd([&](double t, double T) { return tac_value(p, t, T, wd); }, pol)
              .positive_definite;
      break;
    case SubstitutionMode::Full:
      r.hessian_psd = curvature_positive(
          [&](double T) { return tac_value(p, 0.0, T, wd); }, pol.cycle_time);
      break;
    case SubstitutionMode::None:
      r.hessian_psd = curvature_positive(
          [&](double T) { return tac_value(p, T, T, wd); }, pol.cycle_time);
      break;
  }
  return r;
}

inline void check_settings(const FixedPointSettings& s) {
  if (!(s.tolerance > 0.0))
    throw std::invalid_argument("fixed-point tolerance must be positive");
  if (s.max_iterations < 1)
    throw std::invalid_argument("fixed-point iteration cap must be at least 1");
}

}  // namespace detail

// --------------------------------------------------------------------------
// classic model (defects ignored)
// --------------------------------------------------------------------------

[[nodiscard]] inline SolveReport solve_basic_none(const SystemParams& p) {
  require_valid(p, CostModel::Basic);
  const double T = std::sqrt(p.order_cost / alpha_none_coef(p, false));
  return detail::report_for(p, CostModel::Basic, Policy{T, T});
}

[[nodiscard]] inline SolveReport solve_basic_full(const SystemParams& p) {
  require_valid(p, CostModel::Basic);
  const double T = std::sqrt(beta_coef(p, 0.0, false) / alpha_coef(p, false));
  return detail::report_for(p, CostModel::Basic, Policy{0.0, T});
}

// Interior stationary point tau* = ct/(ch2-ch1), T* = sqrt(beta/alpha).
// When tau* >= T* the interior point leaves the feasible wedge and the
// no-substitution optimum is returned instead.
[[nodiscard]] inline SolveReport solve_basic_partial(const SystemParams& p) {
  require_valid(p, CostModel::Basic);
  const double tau = runout_at(p, 0.0, false);  // T coefficient vanishes without defects
  const double beta = beta_coef(p, tau, false);
  if (!(beta > 0.0))
    throw InfeasibleError(
        "no interior optimum: transfer cost meets or exceeds the bound "
        "sqrt(2*co*(ch2-ch1)/D2)");
  const double T = std::sqrt(beta / alpha_coef(p, false));
  SolveReport r = tau < T ? detail::report_for(p, CostModel::Basic, Policy{tau, T})
                          : solve_basic_none(p);
  r.theorem1_ok = theorem1_holds(p);
  return r;
}

// Regime selection for the classic model: the interior optimum when it exists
// inside the wedge, otherwise no substitution.  Full substitution never wins
// at positive transfer cost; a cross-regime dominance check enforces that the
// returned report is no worse than either alternative.
[[nodiscard]] inline SolveReport solve_basic(const SystemParams& p) {
  SolveReport winner;
  if (theorem1_holds(p)) {
    winner = solve_basic_partial(p);
  } else {
    winner = solve_basic_none(p);
    winner.theorem1_ok = false;
  }
  const SolveReport full = solve_basic_full(p);
  const SolveReport none = solve_basic_none(p);
  const double slack = 1e-9 * std::max(1.0, winner.cost.total);
  if (winner.cost.total > full.cost.total + slack ||
      winner.cost.total > none.cost.total + slack)
    throw std::logic_error("regime selection returned a dominated optimum");
  return winner;
}

// --------------------------------------------------------------------------
// imperfect-quality model
// --------------------------------------------------------------------------

[[nodiscard]] inline SolveReport solve_eoqiss_full(const SystemParams& p) {
  require_valid(p, CostModel::Eoqiss);
  const double T = std::sqrt(beta_coef(p, 0.0, true) / alpha_coef(p, true));
  return detail::report_for(p, CostModel::Eoqiss, Policy{0.0, T});
}

[[nodiscard]] inline SolveReport solve_eoqiss_none(const SystemParams& p) {
  require_valid(p, CostModel::Eoqiss);
  const double T = std::sqrt(p.order_cost / alpha_none_coef(p, true));
  SolveReport r = detail::report_for(p, CostModel::Eoqiss, Policy{T, T});
  r.seed_cycle_time = seed_cycle_time(p, CostModel::Eoqiss);
  return r;
}

// Coupled stationarity system: tau is affine in T, T* = sqrt(beta(tau)/alpha).
// Resolved by fixed-point iteration from the pooled seed; with zero defect
// shares the map converges on the first pass to the classic interior optimum.
[[nodiscard]] inline SolveReport solve_eoqiss_partial(const SystemParams& p,
                                                      const FixedPointSettings& settings = {}) {
  require_valid(p, CostModel::Eoqiss);
  detail::check_settings(settings);
  const double alpha = alpha_coef(p, true);
  const double seed = seed_cycle_time(p, CostModel::Eoqiss);

  double T = seed;
  double tau = runout_at(p, T, true);
  bool converged = false;
  for (int i = 0; i < settings.max_iterations; ++i) {
    const double beta = beta_coef(p, tau, true);
    if (!(beta > 0.0))
      throw InfeasibleError(
          "no interior optimum: transfer cost meets or exceeds the bound "
          "sqrt(2*co*(ch2-ch1)/D2)");
    const double T_next = std::sqrt(beta / alpha);
    const double tau_next = runout_at(p, T_next, true);
    const double delta = std::max(std::fabs(T_next - T), std::fabs(tau_next - tau)) /
                         std::max(T, 1e-12);
    T = T_next;
    tau = tau_next;
    if (delta < settings.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw IterationError("stationarity fixed point did not converge within " +
                             std::to_string(settings.max_iterations) + " iterations",
                         Policy{tau, T});

  SolveReport r;
  if (tau < T) {
    r = detail::report_for(p, CostModel::Eoqiss, Policy{tau, T});
    r.theorem2_ok = theorem2_holds(p, r.policy);
  } else {
    r = solve_eoqiss_none(p);
  }
  r.theorem1_ok = theorem1_holds(p);
  r.seed_cycle_time = seed;
  return r;
}

namespace detail {

// Staged procedure without the oracle cross-check: seed T0, decide the regime
// by comparing the seed against the run-out response at the seed, then hand
// off to the regime solver.
[[nodiscard]] inline SolveReport solve_eoqiss_auto_core(const SystemParams& p,
                                                        const FixedPointSettings& settings) {
  require_valid(p, CostModel::Eoqiss);
  check_settings(settings);
  const double seed = seed_cycle_time(p, CostModel::Eoqiss);
  const double tau_at_seed = runout_at(p, seed, true);
  if (seed <= tau_at_seed) {
    SolveReport r = solve_eoqiss_none(p);
    r.theorem1_ok = theorem1_holds(p);
    return r;
  }
  return solve_eoqiss_partial(p, settings);
}

}  // namespace detail

// Staged procedure plus an oracle cross-check: the winner is verified against
// the simulated-cost minimizer over `region` (the default region when null)
// and carries the resulting residual.
[[nodiscard]] inline SolveReport solve_eoqiss_auto(const SystemParams& p,
                                                   const FixedPointSettings& settings = {},
                                                   const SearchRegion* region = nullptr) {
  const SolveReport core = detail::solve_eoqiss_auto_core(p, settings);
  return verify(p, core, 1e-4, region).report;
}

// --------------------------------------------------------------------------
// dispatch
// --------------------------------------------------------------------------

[[nodiscard]] inline SolveReport solve(const SystemParams& p, CostModel model, Regime regime,
                                       const FixedPointSettings& settings = {},
                                       const SearchRegion* region = nullptr) {
  if (model == CostModel::Basic) {
    switch (regime) {
      case Regime::Partial: return solve_basic_partial(p);
      case Regime::Full: return solve_basic_full(p);
      case Regime::None: return solve_basic_none(p);
      case Regime::Auto: return solve_basic(p);
    }
  } else {
    switch (regime) {
      case Regime::Partial: return solve_eoqiss_partial(p, settings);
      case Regime::Full: return solve_eoqiss_full(p);
      case Regime::None: return solve_eoqiss_none(p);
      case Regime::Auto: return solve_eoqiss_auto(p, settings, region);
    }
  }
  throw std::invalid_argument("unknown model/regime combination");
}

}  // namespace eoqsub
