#pragma once

// Shared fixtures: the worked example's parameter set and a generator of
// random valid parameter sets with an interior-feasible transfer cost.

#include <cmath>
#include <cstdint>
#include <random>

#include <eoqsub/types.hpp>

namespace testp {

// d1 = d2 = 1000, ch1 = 1, co = 4500, x1 = 175200, x2 = 175100; the minor
// holding cost, transfer cost, and defect shares vary per test.
inline eoqsub::SystemParams example(double ch2 = 5.0, double ct = 1.0, double ep = 0.02) {
  eoqsub::SystemParams p;
  p.item1 = {1000.0, 1.0, 175200.0, ep};
  p.item2 = {1000.0, ch2, 175100.0, ep};
  p.order_cost = 4500.0;
  p.transfer_cost = ct;
  return p;
}

struct Sampler {
  std::mt19937_64 rng;

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uni(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  // Random parameter set satisfying every model assumption.  The transfer
  // cost is drawn strictly below the interior-feasibility bound
  // sqrt(2 co (ch2 - ch1) / d2) scaled by `ct_scale`, so the partial regime
  // stays solvable whenever ct_scale < 1.
  eoqsub::SystemParams draw(double ep_max = 0.2, double ct_scale = 0.8,
                            double ep2_min = 0.0) {
    eoqsub::SystemParams p;
    p.item1.demand = uni(50.0, 5000.0);
    p.item2.demand = uni(50.0, 5000.0);
    p.item1.holding_cost = uni(0.5, 5.0);
    p.item2.holding_cost = p.item1.holding_cost * uni(1.2, 4.0);
    p.order_cost = uni(500.0, 20000.0);
    p.item1.screening_rate = (p.item1.demand + p.item2.demand) * uni(5.0, 50.0);
    p.item2.screening_rate = p.item2.demand * uni(5.0, 50.0);
    p.item1.defect_share = uni(0.0, ep_max);
    p.item2.defect_share = uni(ep2_min, ep_max);
    const double dh = p.item2.holding_cost - p.item1.holding_cost;
    const double bound = std::sqrt(2.0 * p.order_cost * dh / p.item2.demand);
    p.transfer_cost = uni(0.05, 1.0) * ct_scale * bound;
    return p;
  }
};

}  // namespace testp
