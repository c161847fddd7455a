#pragma once

// Cross-checks a solver report against the trajectory simulator: the closed
// form must reproduce the simulated cost at the reported policy, and a dense
// search of the policy region must not find a materially cheaper policy.

#include <algorithm>
#include <cmath>
#include <limits>

#include "eoqsub/cost.hpp"
#include "eoqsub/minimize.hpp"
#include "eoqsub/simulate.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"

namespace eoqsub {

namespace detail {

// Projection used when a report ignores defects: zero the defect shares and
// lift the screening rates clear of the simulator's validity bound.  With
// zero defects the rates carry no cost, so the projection changes nothing
// except making the trajectory well posed for arbitrary rate inputs.
[[nodiscard]] inline SystemParams defect_free_projection(SystemParams p) {
  p.item1.defect_share = 0.0;
  p.item2.defect_share = 0.0;
  const double floor_rate = 10.0 * (p.item1.demand + p.item2.demand) + 1.0;
  if (!(p.item1.screening_rate > floor_rate)) p.item1.screening_rate = floor_rate;
  if (!(p.item2.screening_rate > floor_rate)) p.item2.screening_rate = floor_rate;
  return p;
}

}  // namespace detail

// Region bracketing every optimum in the parameter family by a wide margin:
// tau in [0, 3*tau_seed + 1] and T in [0.05*T0, 4*T0], where T0 is the pooled
// seed cycle time and tau_seed the run-out response at that seed.
[[nodiscard]] inline SearchRegion default_search_region(const SystemParams& p,
                                                        CostModel model) {
  const bool wd = model == CostModel::Eoqiss;
  const double t0 = std::sqrt(p.order_cost / alpha_coef(p, wd));
  const double tau_seed = runout_at(p, t0, wd);
  SearchRegion r;
  r.tau_range = Interval{0.0, 3.0 * tau_seed + 1.0};
  r.cycle_range = Interval{0.05 * t0, 4.0 * t0};
  return r;
}

// Validates `report` against the oracle.  Throws VerificationError when the
// stored total disagrees with the cost of the stored policy, when simulation
// and closed form disagree at the policy, or when the oracle finds a policy
// whose relative improvement exceeds `residual_ceiling`.
[[nodiscard]] inline VerifyReport verify(const SystemParams& p, const SolveReport& report,
                                         double residual_ceiling = 1e-4,
                                         const SearchRegion* region = nullptr) {
  require_valid(p, report.model);
  require_policy(report.policy);
  const bool wd = report.model == CostModel::Eoqiss;
  const SystemParams sim_params = wd ? p : detail::defect_free_projection(p);
  const double tau = report.policy.runout_time;
  const double T = report.policy.cycle_time;

  const double analytic = tac_value(p, tau, T, wd);
  const double scale = std::max(1.0, std::fabs(analytic));
  if (!(std::fabs(analytic - report.cost.total) <= 1e-9 * scale))
    throw VerificationError("reported total differs from the cost of the reported policy",
                            report.policy, report.policy,
                            std::fabs(analytic - report.cost.total) / scale);

  const double simulated = simulated_tac(sim_params, tau, T);
  if (!(std::fabs(simulated - analytic) <= 1e-9 * scale))
    throw VerificationError("closed-form cost differs from the simulated trajectory cost",
                            report.policy, report.policy,
                            std::fabs(simulated - analytic) / scale);

  const SearchRegion reg = region ? *region : default_search_region(p, report.model);
  auto probe = [&](double ptau, double pT) {
    try {
      return simulated_tac(sim_params, ptau, pT);
    } catch (const InfeasibleError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  MinimizeResult best = minimize_2d(probe, reg);
  if (analytic < best.value) {  // the solver's own point counts as evaluated
    best.value = analytic;
    best.argmin = report.policy;
  }
  const double residual =
      std::fabs(analytic - best.value) / std::max(std::fabs(best.value), 1e-12);

  VerifyReport out;
  out.report = report;
  out.report.oracle_residual = residual;
  out.oracle_policy = best.argmin;
  out.oracle_value = best.value;
  out.residual = residual;
  if (residual > residual_ceiling)
    throw VerificationError("oracle found a materially cheaper policy than the solver",
                            report.policy, best.argmin, residual);
  return out;
}

}  // namespace eoqsub
