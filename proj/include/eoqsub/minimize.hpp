#pragma once

// Derivative-free minimization used by the oracle: a dense coarse grid over
// the feasible wedge tau <= T followed by alternating 1-D golden-section
// refinement along each axis and along the diagonal direction.  Deterministic;
// the returned point is never worse than any point evaluated along the way.

#include <cmath>
#include <cstdint>
#include <utility>

#include "eoqsub/types.hpp"

namespace eoqsub {

namespace detail {

struct Probe {
  double x = 0.0;
  double fx = 0.0;
  std::uint64_t evals = 0;
};

// Golden-section search on [lo, hi]; reports the best point actually
// evaluated (endpoints included), so callers can trust fx without a final
// un-checked interpolation.
template <class F>
[[nodiscard]] Probe golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498949;  // (sqrt(5)-1)/2
  Probe best{lo, f(lo), 1};
  const auto consider = [&](double x, double fx) {
    ++best.evals;
    if (fx < best.fx) {
      best.x = x;
      best.fx = fx;
    }
  };
  consider(hi, f(hi));

  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  int guard = 200;
  while (b - a > tol && guard-- > 0) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace detail

// Minimizes cost(tau, T) over region, honoring tau <= T.  The coarse grid
// has region.resolution points per axis; refinement brackets one grid cell
// around the incumbent and cycles through three directions (tau, T, and the
// diagonal (1,1), which keeps tau - T fixed and so can slide along the
// tau = T boundary where axis moves alone would stall) until every move
// falls below region.refine_tolerance.
template <class F>
[[nodiscard]] MinimizeResult minimize_2d(F&& cost, const SearchRegion& region) {
  const auto& tr = region.tau_range;
  const auto& cr = region.cycle_range;
  if (region.resolution < 16)
    throw RegionError("search region resolution must be at least 16");
  if (!(tr.lo >= 0.0) || !(tr.hi >= tr.lo))
    throw RegionError("tau range must satisfy 0 <= lo <= hi");
  if (!(cr.lo > 0.0) || !(cr.hi > cr.lo))
    throw RegionError("cycle-time range must satisfy 0 < lo < hi");
  if (tr.lo > cr.hi)
    throw RegionError("empty feasible set: tau range lies entirely above the cycle range");

  const int n = region.resolution;
  const double dtau = (tr.hi - tr.lo) / (n - 1);
  const double dT = (cr.hi - cr.lo) / (n - 1);

  MinimizeResult best;
  bool found = false;
  for (int j = 0; j < n; ++j) {
    const double T = cr.lo + j * dT;
    for (int i = 0; i < n; ++i) {
      const double tau = tr.lo + i * dtau;
      if (tau > T) break;  // grid rows are increasing in tau
      const double v = cost(tau, T);
      ++best.evaluations;
      if (!found || v < best.value) {
        best.value = v;
        best.argmin = Policy{tau, T};
        found = true;
      }
    }
  }
  if (!found) throw RegionError("no feasible grid point in the search region");

  for (int round = 0; round < 100; ++round) {
    double move_tau = 0.0, move_T = 0.0, move_diag = 0.0;
    {
      const double T = best.argmin.cycle_time;
      const double lo = std::fmax(tr.lo, best.argmin.runout_time - dtau);
      const double hi = std::fmin(std::fmin(tr.hi, T), best.argmin.runout_time + dtau);
      if (hi > lo) {
        auto probe = detail::golden_section([&](double tau) { return cost(tau, T); }, lo,
                                            hi, region.refine_tolerance);
        best.evaluations += probe.evals;
        if (probe.fx < best.value) {
          move_tau = std::fabs(probe.x - best.argmin.runout_time);
          best.argmin.runout_time = probe.x;
          best.value = probe.fx;
        }
      }
    }
    {
      const double tau = best.argmin.runout_time;
      const double lo = std::fmax(std::fmax(cr.lo, tau), best.argmin.cycle_time - dT);
      const double hi = std::fmin(cr.hi, best.argmin.cycle_time + dT);
      if (hi > lo) {
        auto probe = detail::golden_section([&](double T) { return cost(tau, T); }, lo, hi,
                                            region.refine_tolerance);
        best.evaluations += probe.evals;
        if (probe.fx < best.value) {
          move_T = std::fabs(probe.x - best.argmin.cycle_time);
          best.argmin.cycle_time = probe.x;
          best.value = probe.fx;
        }
      }
    }
    {
      const double tau0 = best.argmin.runout_time;
      const double T0 = best.argmin.cycle_time;
      const double step = std::fmax(dtau, dT);
      const double lo = std::fmax(-step, std::fmax(tr.lo - tau0, cr.lo - T0));
      const double hi = std::fmin(step, std::fmin(tr.hi - tau0, cr.hi - T0));
      if (hi > lo) {
        auto probe = detail::golden_section(
            [&](double t) { return cost(tau0 + t, T0 + t); }, lo, hi,
            region.refine_tolerance);
        best.evaluations += probe.evals;
        if (probe.fx < best.value) {
          move_diag = std::fabs(probe.x);
          best.argmin.runout_time = tau0 + probe.x;
          best.argmin.cycle_time = T0 + probe.x;
          best.value = probe.fx;
        }
      }
    }
    if (move_tau < region.refine_tolerance && move_T < region.refine_tolerance &&
        move_diag < region.refine_tolerance)
      break;
  }
  return best;
}

}  // namespace eoqsub
