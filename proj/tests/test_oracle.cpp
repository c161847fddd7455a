#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <eoqsub/cost.hpp>
#include <eoqsub/minimize.hpp>
#include <eoqsub/simulate.hpp>
#include <eoqsub/types.hpp>
#include <eoqsub/validate.hpp>
#include <eoqsub/verbatim.hpp>

#include "helpers.hpp"

using namespace eoqsub;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("triangle trajectories integrate to the textbook holding cost") {
  SystemParams p = testp::example(5.0, 1.0, 0.0);
  const SimulationResult r = simulate_cycle(p, Policy{1.0, 1.0});
  CHECK_THAT(r.cost.holding1, WithinRel(500.0, 1e-12));
  CHECK_THAT(r.cost.holding2, WithinRel(2500.0, 1e-12));
  CHECK(r.cost.ordering == 4500.0);
  CHECK(r.cost.transfer == 0.0);
}

TEST_CASE("trace tiles the cycle and ends on empty shelves") {
  const SystemParams p = testp::example();
  const Policy pol{0.25, 2.0};
  const SimulationResult r = simulate_cycle(p, pol);

  REQUIRE(!r.trace.item1.empty());
  REQUIRE(!r.trace.item2.empty());
  CHECK(r.trace.item1.front().t_begin == 0.0);
  CHECK_THAT(r.trace.item1.back().t_end, WithinRel(2.0, 1e-12));
  CHECK_THAT(r.trace.item2.back().t_end, WithinRel(0.25, 1e-12));
  for (std::size_t i = 1; i < r.trace.item1.size(); ++i)
    CHECK(r.trace.item1[i].t_begin == r.trace.item1[i - 1].t_end);

  const auto& last1 = r.trace.item1.back();
  const double end1 =
      last1.level_begin + last1.slope * (last1.t_end - last1.t_begin) + last1.jump_at_end;
  CHECK_THAT(end1, WithinAbs(0.0, 1e-9 * 4100.0));
}

TEST_CASE("defect-free cycles reproduce the defect-blind closed form exactly") {
  testp::Sampler s(911);
  for (int i = 0; i < 50; ++i) {
    SystemParams p = s.draw();
    p.item1.defect_share = 0.0;
    p.item2.defect_share = 0.0;
    const double T = s.uni(0.3, 4.0);
    const double tau = s.uni(0.0, T);
    const double per_cycle = simulate_cycle(p, Policy{tau, T}).cost.total;
    CHECK_THAT(per_cycle, WithinRel(T * tac_value(p, tau, T, false), 1e-12));
  }
}

TEST_CASE("screened cycles reproduce the defect-adjusted closed form") {
  testp::Sampler s(424242);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = s.draw(0.2, 0.8, 0.01);
    const double T = s.uni(0.3, 4.0);
    const double tau = s.uni(0.05, 0.95) * T;
    const double per_cycle = simulate_cycle(p, Policy{tau, T}).cost.total;
    CHECK_THAT(per_cycle, WithinRel(T * tac_value(p, tau, T, true), 1e-9));
  }
}

TEST_CASE("the published minor-item defect term disagrees with the trajectories") {
  // The published average-cost expression carries the minor demand linearly in
  // its defect term; the trajectory integral carries it squared.  At d2 = 1000
  // the two differ by orders of magnitude in that term.
  const SystemParams p = testp::example();
  const Policy pol{0.25, 2.0};
  const double simulated = simulate_cycle(p, pol).cost.total / pol.cycle_time;
  const double corrected = tac_value(p, 0.25, 2.0, true);
  const double published = verbatim::tac_terms_published(p, 0.25, 2.0).total;
  CHECK_THAT(simulated, WithinRel(corrected, 1e-9));
  CHECK(std::fabs(simulated - published) / simulated > 1e-9);
}

TEST_CASE("policies that outrun the stock are rejected") {
  const SystemParams p = testp::example();
  CHECK_THROWS_AS(simulate_cycle(p, Policy{3.0, 2.0}), std::domain_error);

  // Valid parameters, infeasible policy: the rate barely outpaces the major
  // item's own demand, so once the substitution load is added the screening
  // pass cannot finish inside the cycle.
  SystemParams slow = testp::example();
  slow.item1.screening_rate = 1100.0;
  slow.item1.defect_share = 0.05;  // under the 1 - d1/x1 ceiling
  REQUIRE(validate(slow, CostModel::Eoqiss).empty());
  CHECK_THROWS_AS(simulate_cycle(slow, Policy{0.0, 2.0}), InfeasibleError);
}

TEST_CASE("grid plus golden-section finds a separable quadratic minimum") {
  SearchRegion region;
  region.tau_range = {0.0, 3.0};
  region.cycle_range = {0.1, 4.0};
  const auto r = minimize_2d(
      [](double tau, double T) { return (tau - 1.0) * (tau - 1.0) + (T - 2.0) * (T - 2.0); },
      region);
  CHECK_THAT(r.argmin.runout_time, WithinAbs(1.0, 1e-6));
  CHECK_THAT(r.argmin.cycle_time, WithinAbs(2.0, 1e-6));
  CHECK(r.value < 1e-10);
  CHECK(r.evaluations > 0);
}

TEST_CASE("constrained minimum lands on the diagonal when the free one is outside") {
  SearchRegion region;
  region.tau_range = {0.0, 3.0};
  region.cycle_range = {0.1, 2.0};
  // Free minimum (3, 1) violates tau <= T; the constrained one sits at tau = T = 2.
  const auto r = minimize_2d(
      [](double tau, double T) { return (tau - 3.0) * (tau - 3.0) + (T - 1.0) * (T - 1.0); },
      region);
  CHECK_THAT(r.value, WithinRel(2.0, 1e-6));
  CHECK(r.argmin.runout_time <= r.argmin.cycle_time + 1e-9);
  CHECK_THAT(r.argmin.cycle_time, WithinAbs(2.0, 1e-4));
}

TEST_CASE("region validation rejects unusable search boxes") {
  SearchRegion r;
  r.tau_range = {0.0, 3.0};
  r.cycle_range = {0.1, 4.0};
  r.resolution = 8;
  CHECK_THROWS_AS(minimize_2d([](double, double) { return 0.0; }, r), RegionError);

  r.resolution = 64;
  r.cycle_range = {4.0, 0.1};
  CHECK_THROWS_AS(minimize_2d([](double, double) { return 0.0; }, r), RegionError);

  r.cycle_range = {0.1, 1.0};
  r.tau_range = {2.0, 3.0};  // entirely above the reachable diagonal
  CHECK_THROWS_AS(minimize_2d([](double, double) { return 0.0; }, r), RegionError);
}

TEST_CASE("oracle recovers the defect-blind interior optimum") {
  const SystemParams p = testp::example();  // ch2 = 5, ct = 1
  SearchRegion region;
  region.tau_range = {0.0, 3.0};
  region.cycle_range = {0.1, 5.0};
  const auto r =
      minimize_2d([&](double tau, double T) { return tac_value(p, tau, T, false); }, region);
  CHECK_THAT(r.argmin.runout_time, WithinRel(0.25, 1e-4));
  CHECK_THAT(r.argmin.cycle_time, WithinRel(2.0916500663351889, 1e-4));
}

TEST_CASE("oracle lands on the diagonal once transfers stop paying for themselves") {
  const SystemParams p = testp::example(5.0, 9.0);  // above the interior bound of 6
  SearchRegion region;
  region.tau_range = {0.0, 3.0};
  region.cycle_range = {0.1, 5.0};
  const auto r =
      minimize_2d([&](double tau, double T) { return tac_value(p, tau, T, false); }, region);
  CHECK(std::fabs(r.argmin.runout_time - r.argmin.cycle_time) < 1e-5);
  CHECK_THAT(r.argmin.cycle_time, WithinRel(std::sqrt(1.5), 1e-4));
}
