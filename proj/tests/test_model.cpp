#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <eoqsub/cost.hpp>
#include <eoqsub/types.hpp>
#include <eoqsub/validate.hpp>

#include "helpers.hpp"

using namespace eoqsub;
using Catch::Matchers::WithinRel;

TEST_CASE("mode classification covers the closed wedge") {
  CHECK(classify_mode(0.5, 2.0) == SubstitutionMode::Partial);
  CHECK(classify_mode(0.0, 2.0) == SubstitutionMode::Full);
  CHECK(classify_mode(-1e-9, 2.0) == SubstitutionMode::Full);
  CHECK(classify_mode(2.0, 2.0) == SubstitutionMode::None);
  CHECK(classify_mode(2.5, 2.0) == SubstitutionMode::None);
}

TEST_CASE("validation accepts the example set and reports all breaks at once") {
  const SystemParams good = testp::example();
  CHECK(validate(good, CostModel::Eoqiss).empty());
  CHECK(validate(good, CostModel::Basic).empty());

  SystemParams bad = good;
  bad.item1.demand = 0.0;
  bad.item2.holding_cost = 0.5;      // below ch1
  bad.item2.defect_share = 1.0;      // outside [0, 1)
  const auto vs = validate(bad, CostModel::Eoqiss);
  REQUIRE(vs.size() == 3);
  bool saw_d1 = false, saw_a9 = false, saw_a5 = false;
  for (const auto& v : vs) {
    saw_d1 = saw_d1 || (v.assumption == "domain" && v.field == "d1");
    saw_a9 = saw_a9 || (v.assumption == "A9" && v.field == "ch2");
    saw_a5 = saw_a5 || (v.assumption == "A5" && v.field == "ep2");
  }
  CHECK(saw_d1);
  CHECK(saw_a9);
  CHECK(saw_a5);
}

TEST_CASE("screening assumptions: rate must outpace demand, share must stay under ceiling") {
  SystemParams p = testp::example();
  p.item2.screening_rate = 900.0;  // below d2
  auto vs = validate(p, CostModel::Eoqiss);
  REQUIRE(vs.size() == 1);
  CHECK(vs.front().assumption == "A6");

  p = testp::example();
  p.item1.screening_rate = 1100.0;  // ceiling 1 - 1000/1100 = 0.0909
  p.item1.defect_share = 0.2;
  vs = validate(p, CostModel::Eoqiss);
  REQUIRE(vs.size() == 1);
  CHECK(vs.front().assumption == "A7");

  // The defect-blind model has no screening assumptions to break.
  CHECK(validate(p, CostModel::Basic).empty());
}

TEST_CASE("breakdown components sum exactly to total") {
  const CostBreakdown b = make_breakdown(1.25, 2.5, 0.125, 3.0);
  CHECK(b.total == 1.25 + 2.5 + 0.125 + 3.0);
}

TEST_CASE("defect load vanishes with the share and matches its definition") {
  CHECK(defect_load(0.0, 175200.0) == 0.0);
  const double a = defect_load(0.02, 175200.0);
  CHECK_THAT(a, WithinRel(0.02 / (0.98 * 0.98 * 175200.0), 1e-15));
}

TEST_CASE("defect-blind cost at a round policy is exact") {
  // ch2 = 2, tau = 1, T = 2: ordering 2250, holding1 1750, holding2 500,
  // transfer 500; every term is dyadic so equality is exact.
  const SystemParams p = testp::example(2.0);
  const CostBreakdown b = tac_terms(p, 1.0, 2.0, false);
  CHECK(b.ordering == 2250.0);
  CHECK(b.holding1 == 1750.0);
  CHECK(b.holding2 == 500.0);
  CHECK(b.transfer == 500.0);
  CHECK(b.total == 5000.0);
}

TEST_CASE("quadratic-in-tau coefficients reproduce the cost identity") {
  testp::Sampler s(20240817);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = s.draw();
    for (const bool wd : {false, true}) {
      const double T = s.uni(0.3, 4.0);
      const double tau = s.uni(0.0, T);
      const double via_coeffs = alpha_coef(p, wd) * T + beta_coef(p, tau, wd) / T +
                                gamma_coef(p, tau, wd);
      CHECK_THAT(tac_terms(p, tau, T, wd).total, WithinRel(via_coeffs, 1e-11));
    }
  }
}

TEST_CASE("example coefficients at the interior stationary run-out time") {
  const SystemParams p = testp::example();  // ch2 = 5, ct = 1
  CHECK(runout_at(p, 0.0, false) == 0.25);  // ct / (ch2 - ch1), exact
  CHECK(beta_coef(p, 0.25, false) == 4375.0);
  CHECK(alpha_coef(p, false) == 1000.0);
  CHECK(alpha_none_coef(p, false) == 3000.0);
}

TEST_CASE("defect terms raise both quadratic coefficients") {
  const SystemParams p = testp::example();
  CHECK(alpha_coef(p, true) > alpha_coef(p, false));
  CHECK(alpha_none_coef(p, true) > alpha_none_coef(p, false));

  SystemParams clean = p;
  clean.item1.defect_share = 0.0;
  clean.item2.defect_share = 0.0;
  CHECK(alpha_coef(clean, true) == alpha_coef(clean, false));
  CHECK(beta_coef(clean, 0.25, true) == beta_coef(clean, 0.25, false));
  CHECK(alpha_none_coef(clean, true) == alpha_none_coef(clean, false));
}

TEST_CASE("lots cover routed demand after screening losses") {
  const SystemParams p = testp::example();
  const double T = 2.0916500663351889;
  const LotPlan ignore_defects = lot_plan_value(p, 0.25, T, false);
  CHECK_THAT(ignore_defects.lot1, WithinRel(1000.0 * T + 1000.0 * (T - 0.25), 1e-14));
  CHECK(ignore_defects.lot2 == 250.0);

  const LotPlan with_defects = lot_plan_value(p, 0.25, T, true);
  CHECK_THAT(with_defects.lot1, WithinRel(ignore_defects.lot1 / 0.98, 1e-14));
  CHECK_THAT(with_defects.lot2, WithinRel(250.0 / 0.98, 1e-14));
}

TEST_CASE("checked cost operations reject bad policies and bad parameters") {
  const SystemParams p = testp::example();
  CHECK_THROWS_AS(tac_basic(p, Policy{0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(tac_basic(p, Policy{-0.1, 2.0}), std::domain_error);
  CHECK_THROWS_AS(tac_basic(p, Policy{2.5, 2.0}), std::domain_error);

  SystemParams bad = p;
  bad.item2.holding_cost = 0.5;
  CHECK_THROWS_AS(tac_eoqiss(bad, Policy{0.25, 2.0}), ValidationError);
  try {
    (void)tac_eoqiss(bad, Policy{0.25, 2.0});
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations().front().assumption == "A9");
  }
}

TEST_CASE("per-cycle totals scale the annualized breakdown by T") {
  const SystemParams p = testp::example();
  const Policy pol{0.25, 2.0};
  const CostBreakdown annual = tac_eoqiss(p, pol);
  const CostBreakdown cycle = tc_eoqiss(p, pol);
  CHECK_THAT(cycle.total, WithinRel(annual.total * 2.0, 1e-15));
  CHECK_THAT(cycle.holding2, WithinRel(annual.holding2 * 2.0, 1e-15));
}

TEST_CASE("screening epochs precede the stock events they must precede") {
  const SystemParams p = testp::example();
  const Policy pol{0.25, 2.0};
  const ScreeningEpochs e = screening_epochs(p, lot_plan(p, pol));
  CHECK(e.ts1 > 0.0);
  CHECK(e.ts2 > 0.0);
  CHECK(e.ts2 < 0.25);
  CHECK(e.ts1 < 2.0);
}
