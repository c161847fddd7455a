#pragma once

// Value types for a two-product lot-sizing model with one-way stockout
// substitution and in-cycle screening of imperfect items.
//
// Model sketch: both products are replenished together every T years.  The
// minor product (item 2) runs out at time tau <= T; from tau to T its demand
// is served from the major product's stock (item 1) at a per-unit transfer
// cost.  Each lot contains an expected defective share E[p]; defectives stay
// in stock until screening finishes at t_s = y/x and then leave in one lump.
//
// All quantities are annual rates (units/year, cost/year) unless a field says
// otherwise.  Types here are plain aggregates; invariants are documented and
// enforced by validate() / the checked operations, not by constructors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eoqsub {

// ---------------------------------------------------------------------------
// parameters
// ---------------------------------------------------------------------------

struct ItemParams {
  double demand = 0.0;          // D > 0, units/year
  double holding_cost = 0.0;    // c_h > 0, cost per unit per year
  double screening_rate = 0.0;  // x > D (assumption A6), units/year
  double defect_share = 0.0;    // E[p] in [0,1) (A5), and < 1 - D/x (A7)
};

struct SystemParams {
  ItemParams item1;            // major item: substitutes for item 2 after its run-out
  ItemParams item2;            // minor item: never substitutes for item 1
  double order_cost = 0.0;     // c_o > 0, joint ordering cost per cycle
  double transfer_cost = 0.0;  // c_t >= 0, cost per substituted unit
  // A9: item2.holding_cost > item1.holding_cost (strict).
};

// ---------------------------------------------------------------------------
// policies, lots, costs
// ---------------------------------------------------------------------------

// 0 <= runout_time <= cycle_time, cycle_time > 0.
struct Policy {
  double runout_time = 0.0;  // tau: when item 2 stock hits zero
  double cycle_time = 0.0;   // T: replenishment interval
};

// Order quantities per cycle.  lot1 > 0; lot2 >= 0 (zero iff tau = 0).
struct LotPlan {
  double lot1 = 0.0;
  double lot2 = 0.0;
};

// Average-annual cost components unless a caller says per-cycle.
// total is always the exact sum of the four components; each is >= 0.
struct CostBreakdown {
  double ordering = 0.0;
  double holding1 = 0.0;
  double holding2 = 0.0;
  double transfer = 0.0;
  double total = 0.0;
};

[[nodiscard]] inline CostBreakdown make_breakdown(double ordering, double holding1,
                                                  double holding2, double transfer) {
  CostBreakdown b{ordering, holding1, holding2, transfer, 0.0};
  b.total = b.ordering + b.holding1 + b.holding2 + b.transfer;
  return b;
}

// Screening completion epochs t_si = y_i / x_i, measured from cycle start.
// For a consumed lot, 0 < t_si < cycle end of that item's trace.
struct ScreeningEpochs {
  double ts1 = 0.0;
  double ts2 = 0.0;
};

// ---------------------------------------------------------------------------
// solver surface
// ---------------------------------------------------------------------------

enum class CostModel : std::uint8_t { Basic, Eoqiss };
enum class SubstitutionMode : std::uint8_t { Partial, Full, None };
enum class Regime : std::uint8_t { Partial, Full, None, Auto };

[[nodiscard]] constexpr const char* to_string(CostModel m) {
  return m == CostModel::Basic ? "basic" : "eoqiss";
}
[[nodiscard]] constexpr const char* to_string(SubstitutionMode m) {
  switch (m) {
    case SubstitutionMode::Partial: return "partial";
    case SubstitutionMode::Full: return "full";
    default: return "none";
  }
}
[[nodiscard]] constexpr const char* to_string(Regime r) {
  switch (r) {
    case Regime::Partial: return "partial";
    case Regime::Full: return "full";
    case Regime::None: return "none";
    default: return "auto";
  }
}

// Mode follows the tau relation: tau = 0 -> Full, tau = T -> None, else Partial.
[[nodiscard]] inline SubstitutionMode classify_mode(double tau, double T) {
  if (tau <= 0.0) return SubstitutionMode::Full;
  if (tau >= T) return SubstitutionMode::None;
  return SubstitutionMode::Partial;
}

struct FixedPointSettings {
  double tolerance = 1e-10;  // relative change in (tau, T) between iterates
  int max_iterations = 100;
};

struct SolveReport {
  CostModel model = CostModel::Basic;
  SubstitutionMode mode = SubstitutionMode::None;
  Policy policy;
  LotPlan lots;
  CostBreakdown cost;  // average annual cost at `policy`, consistent with `model`
  std::optional<bool> theorem1_ok;  // convexity bound on the transfer cost (absent if n/a)
  std::optional<bool> theorem2_ok;  // published sufficient condition at `policy` (absent if n/a)
  bool hessian_psd = false;         // finite-difference Hessian check at `policy`
  std::optional<double> oracle_residual;   // relative gap to the simulation oracle's minimum
  std::optional<double> seed_cycle_time;   // step-1 seed T0, when the solve procedure used one
  double substituted_volume = 0.0;         // D2 * (T - tau), units per cycle
};

// ---------------------------------------------------------------------------
// validation data
// ---------------------------------------------------------------------------

// One violated model assumption.  `assumption` is machine-readable: "A5".."A9"
// for the numbered model assumptions, "domain" for plain sign constraints.
struct Violation {
  std::string assumption;
  std::string field;
  std::string message;
};

// ---------------------------------------------------------------------------
// oracle surface
// ---------------------------------------------------------------------------

// One linear piece of an inventory trajectory.  Level at t in [t_begin,t_end]
// is level_begin + slope*(t - t_begin); jump_at_end <= 0 is applied at t_end
// (lump removal of defectives when screening completes there, else 0).
struct TrajectorySegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  double level_begin = 0.0;
  double slope = 0.0;
  double jump_at_end = 0.0;
};

struct CycleTrace {
  std::vector<TrajectorySegment> item1;  // tiles [0, T], ends at level 0
  std::vector<TrajectorySegment> item2;  // tiles [0, tau], ends at level 0
  ScreeningEpochs epochs;
  LotPlan lots;
};

struct SimulationResult {
  CycleTrace trace;
  CostBreakdown cost;  // per cycle, not annualized
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchRegion {
  Interval tau_range;
  Interval cycle_range;        // requires lo > 0
  int resolution = 200;        // grid points per axis, >= 16
  double refine_tolerance = 1e-8;
};

struct MinimizeResult {
  Policy argmin;
  double value = 0.0;
  std::uint64_t evaluations = 0;
};

struct HessianCheck {
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  double determinant = 0.0;
  bool positive_definite = false;  // leading minors: h11 > 0 and det > 0
};

struct VerifyReport {
  SolveReport report;      // input report with oracle_residual filled in
  Policy oracle_policy;    // argmin of the simulated cost over the region
  double oracle_value = 0.0;
  double residual = 0.0;   // |TAC_solver - TAC_oracle| / TAC_oracle
};

// ---------------------------------------------------------------------------
// sweep surface
// ---------------------------------------------------------------------------

// One sweep axis.  params/values are zipped: entry k of `values` holds one
// value per name in `params`, so an axis can move several fields together
// (e.g. the paired defect-share cases).  Axes combine as a cross product.
struct SweepAxis {
  std::vector<std::string> params;
  std::vector<std::vector<double>> values;
};

[[nodiscard]] inline SweepAxis make_axis(std::string param, std::vector<double> values) {
  SweepAxis ax;
  ax.params.push_back(std::move(param));
  ax.values.reserve(values.size());
  for (double v : values) ax.values.push_back({v});
  return ax;
}

struct SweepSpec {
  SystemParams base;
  std::vector<SweepAxis> axes;                // empty -> single row at base
  std::vector<Regime> regimes = {Regime::Auto};
  CostModel model = CostModel::Eoqiss;
  FixedPointSettings fixed_point{};
  std::uint64_t cap = 1'000'000;              // max rows, checked before any work
  unsigned threads = 0;                       // 0 -> EOQ_SUBST_THREADS or hardware
};

struct SweepRow {
  std::vector<std::pair<std::string, double>> axis_values;  // lexicographic order
  Regime regime = Regime::Auto;
  bool valid = false;
  std::string status;  // "ok", "invalid: ...", "infeasible: ...", "residual-exceeded"
  SubstitutionMode mode = SubstitutionMode::None;
  Policy policy;
  LotPlan lots;
  double tac = 0.0;
  std::optional<bool> theorem1_ok;
  std::optional<bool> theorem2_ok;
  bool hessian_psd = false;
  std::optional<double> oracle_residual;
};

// One directional claim evaluated over sweep rows.
struct Finding {
  std::string id;
  std::string description;
  bool applicable = false;  // false -> not enough rows/regimes; pass is then vacuous
  bool pass = false;
  std::string witness;      // short human-readable evidence
};

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

// Parameters violate model assumptions.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string message, std::vector<Violation> violations)
      : std::runtime_error(std::move(message)), violations_(std::move(violations)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// No optimum exists for the requested regime (e.g. the transfer-cost bound fails).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point iteration did not converge; carries the last iterate.
class IterationError : public std::runtime_error {
 public:
  IterationError(std::string message, Policy last)
      : std::runtime_error(std::move(message)), last_(last) {}
  [[nodiscard]] Policy last_iterate() const { return last_; }

 private:
  Policy last_;
};

// Solver result disagrees with the simulation oracle beyond the ceiling.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string message, Policy solver, Policy oracle, double residual)
      : std::runtime_error(std::move(message)),
        solver_(solver),
        oracle_(oracle),
        residual_(residual) {}
  [[nodiscard]] Policy solver_policy() const { return solver_; }
  [[nodiscard]] Policy oracle_policy() const { return oracle_; }
  [[nodiscard]] double residual() const { return residual_; }

 private:
  Policy solver_;
  Policy oracle_;
  double residual_;
};

// Search region empty, inverted or under-resolved.
class RegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sweep cross product exceeds the configured cap; thrown before any solve runs.
class SweepCapError : public std::runtime_error {
 public:
  SweepCapError(std::string message, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error(std::move(message)), requested_(requested), cap_(cap) {}
  [[nodiscard]] std::uint64_t requested() const { return requested_; }
  [[nodiscard]] std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

// Finite-difference step underflowed at the evaluation point.
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eoqsub
