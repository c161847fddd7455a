#pragma once

// Parameter-sweep harness: runs one solve per grid point x regime, keeps
// invalid combinations as flagged rows so grids stay rectangular, and
// evaluates directional claims (monotone responses to defect shares and the
// minor holding cost) over the resulting rows.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "eoqsub/solvers.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"
#include "eoqsub/verify.hpp"

namespace eoqsub {

// Writes one scalar model input addressed by its short config key.
inline void set_field(SystemParams& p, const std::string& name, double value) {
  if (name == "d1") p.item1.demand = value;
  else if (name == "d2") p.item2.demand = value;
  else if (name == "ch1") p.item1.holding_cost = value;
  else if (name == "ch2") p.item2.holding_cost = value;
  else if (name == "x1") p.item1.screening_rate = value;
  else if (name == "x2") p.item2.screening_rate = value;
  else if (name == "ep1") p.item1.defect_share = value;
  else if (name == "ep2") p.item2.defect_share = value;
  else if (name == "co") p.order_cost = value;
  else if (name == "ct") p.transfer_cost = value;
  else throw std::invalid_argument("unknown parameter name: " + name);
}

namespace detail {

struct SweepJob {
  SystemParams params;
  std::vector<std::pair<std::string, double>> axis_values;
  Regime regime = Regime::Auto;
};

[[nodiscard]] inline SweepRow compute_row(const SweepJob& job, const SweepSpec& spec,
                                          bool verify_each) {
  SweepRow row;
  row.axis_values = job.axis_values;
  row.regime = job.regime;

  const auto violations = validate(job.params, spec.model);
  if (!violations.empty()) {
    std::string ids;
    for (const auto& v : violations) {
      if (!ids.empty()) ids += ',';
      ids += v.assumption;
    }
    row.valid = false;
    row.status = "invalid: " + ids;
    return row;
  }
  row.valid = true;
  try {
    const SolveReport rep =
        spec.model == CostModel::Eoqiss && job.regime == Regime::Auto
            ? solve_eoqiss_auto_core(job.params, spec.fixed_point)  // oracle only on demand
            : solve(job.params, spec.model, job.regime, spec.fixed_point);
    row.mode = rep.mode;
    row.policy = rep.policy;
    row.lots = rep.lots;
    row.tac = rep.cost.total;
    row.theorem1_ok = rep.theorem1_ok;
    row.theorem2_ok = rep.theorem2_ok;
    row.hessian_psd = rep.hessian_psd;
    row.status = "ok";
    if (verify_each) {
      try {
        row.oracle_residual = verify(job.params, rep).residual;
      } catch (const VerificationError& e) {
        row.status = "residual-exceeded";
        row.oracle_residual = e.residual();
      }
    }
  } catch (const InfeasibleError& e) {
    row.status = std::string("infeasible: ") + e.what();
  } catch (const IterationError& e) {
    row.status = std::string("iteration: ") + e.what();
  }
  return row;
}

[[nodiscard]] inline unsigned sweep_thread_count(const SweepSpec& spec, std::size_t jobs) {
  unsigned threads = spec.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("EOQ_SUBST_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0 && v < 1024) threads = static_cast<unsigned>(v);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
}

}  // namespace detail

// Runs the sweep.  Row order is lexicographic in the axes (first axis slowest)
// with the regime list innermost, independent of how execution is scheduled.
// The row cap is enforced before any solve runs.
[[nodiscard]] inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                                     bool verify_each = false) {
  if (spec.regimes.empty())
    throw std::invalid_argument("sweep needs at least one regime");
  for (const auto& ax : spec.axes) {
    if (ax.params.empty())
      throw std::invalid_argument("sweep axis with no parameter names");
    if (ax.values.empty())
      throw std::invalid_argument("sweep axis with empty value list");
    for (const auto& tuple : ax.values)
      if (tuple.size() != ax.params.size())
        throw std::invalid_argument(
            "sweep axis value arity does not match its parameter list");
    SystemParams probe = spec.base;
    for (const auto& name : ax.params) set_field(probe, name, 1.0);  // rejects bad names
  }

  std::uint64_t total = spec.regimes.size();
  for (const auto& ax : spec.axes) {
    const std::uint64_t n = ax.values.size();
    total = total > UINT64_MAX / n ? UINT64_MAX : total * n;
  }
  if (total > spec.cap)
    throw SweepCapError("sweep would produce " + std::to_string(total) +
                            " rows, above the cap of " + std::to_string(spec.cap),
                        total, spec.cap);

  std::uint64_t combos = 1;
  for (const auto& ax : spec.axes) combos *= ax.values.size();

  std::vector<detail::SweepJob> jobs;
  jobs.reserve(total);
  for (std::uint64_t c = 0; c < combos; ++c) {
    detail::SweepJob job;
    job.params = spec.base;
    std::uint64_t rem = c;
    std::vector<std::size_t> idx(spec.axes.size(), 0);
    for (std::size_t a = spec.axes.size(); a-- > 0;) {  // last axis varies fastest
      idx[a] = rem % spec.axes[a].values.size();
      rem /= spec.axes[a].values.size();
    }
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const auto& ax = spec.axes[a];
      const auto& tuple = ax.values[idx[a]];
      for (std::size_t k = 0; k < ax.params.size(); ++k) {
        set_field(job.params, ax.params[k], tuple[k]);
        job.axis_values.emplace_back(ax.params[k], tuple[k]);
      }
    }
    for (Regime rg : spec.regimes) {
      jobs.push_back(job);
      jobs.back().regime = rg;
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  const unsigned threads = detail::sweep_thread_count(spec, jobs.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      rows[i] = detail::compute_row(jobs[i], spec, verify_each);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < jobs.size(); i += threads)
            rows[i] = detail::compute_row(jobs[i], spec, verify_each);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return rows;
}

// --------------------------------------------------------------------------
// directional claims
// --------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline std::optional<double> axis_value(const SweepRow& row,
                                                      const char* name) {
  for (const auto& [k, v] : row.axis_values)
    if (k == name) return v;
  return std::nullopt;
}

[[nodiscard]] inline bool same_axis_value(const std::optional<double>& a,
                                          const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || *a == *b;
}

[[nodiscard]] inline std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Regime identity used for grouping comparisons: explicit regimes stand as
// themselves; auto rows are grouped by the mode the solve landed in.
[[nodiscard]] inline int regime_group(const SweepRow& row) {
  if (row.regime != Regime::Auto) return static_cast<int>(row.regime);
  return static_cast<int>(row.mode);
}

[[nodiscard]] inline bool row_usable(const SweepRow& row) {
  return row.valid && (row.status == "ok" || row.status == "residual-exceeded");
}

// A pair is directionally attributable to parameter `primary` when the other
// defect-share coordinate moves by no more than the primary does; this admits
// the paired defect-share grids while excluding pairs dominated by the other
// coordinate.
struct EpPair {
  std::size_t lo = 0, hi = 0;
  double delta = 0.0;
};

[[nodiscard]] inline std::vector<EpPair> directional_pairs(
    const std::vector<SweepRow>& rows, const std::vector<std::size_t>& members,
    const char* primary, const char* other) {
  std::vector<EpPair> out;
  for (std::size_t i : members) {
    for (std::size_t j : members) {
      const auto pi = axis_value(rows[i], primary), pj = axis_value(rows[j], primary);
      if (!pi || !pj || !(*pj > *pi)) continue;
      const auto oi = axis_value(rows[i], other), oj = axis_value(rows[j], other);
      const double od = oi && oj ? std::fabs(*oj - *oi) : 0.0;
      if (od > *pj - *pi) continue;
      if (!same_axis_value(axis_value(rows[i], "ch2"), axis_value(rows[j], "ch2")))
        continue;
      out.push_back({i, j, *pj - *pi});
    }
  }
  return out;
}

}  // namespace detail

// Evaluates the directional observations over sweep rows: usable minor stock
// versus the minor defect share, major lot and cost versus the major defect
// share, the cross-regime sensitivity ranking, and the run-out response to
// the minor holding cost.  Accepts sweeps over ep1, ep2, ch2 (singly or as
// paired grids); anything else is a usage error.  Claims without comparable
// row pairs are reported inapplicable and pass vacuously.
[[nodiscard]] inline std::vector<Finding> qualitative_checks(
    const std::vector<SweepRow>& rows) {
  for (const auto& row : rows)
    for (const auto& [k, v] : row.axis_values)
      if (k != "ep1" && k != "ep2" && k != "ch2")
        throw std::invalid_argument(
            "directional checks support sweeps over ep1, ep2, ch2 only (got " + k + ")");

  std::vector<std::size_t> partial_rows;     // solved into the interior regime
  std::vector<std::vector<std::size_t>> groups;  // all usable rows, by regime group
  {
    std::vector<int> keys;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!detail::row_usable(rows[i])) continue;
      if (rows[i].mode == SubstitutionMode::Partial) partial_rows.push_back(i);
      const int key = detail::regime_group(rows[i]);
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(key);
        groups.emplace_back();
        groups.back().push_back(i);
      } else {
        groups[static_cast<std::size_t>(it - keys.begin())].push_back(i);
      }
    }
  }

  std::vector<Finding> findings;

  {  // net minor stock vs ep2, interior regime
    Finding f;
    f.id = "minor-net-stock-vs-ep2";
    f.description =
        "usable minor-item stock per cycle does not rise when the minor defect share grows";
    f.pass = true;
    const auto pairs = detail::directional_pairs(rows, partial_rows, "ep2", "ep1");
    for (const auto& pr : pairs) {
      const auto& a = rows[pr.lo];
      const auto& b = rows[pr.hi];
      const double net_a = a.lots.lot2 * (1.0 - *detail::axis_value(a, "ep2"));
      const double net_b = b.lots.lot2 * (1.0 - *detail::axis_value(b, "ep2"));
      f.applicable = true;
      const bool ok = net_b <= net_a * (1.0 + 1e-12);
      if (!ok || f.witness.empty())
        f.witness = "net stock " + detail::fmt_short(net_a) + " -> " +
                    detail::fmt_short(net_b) + " as ep2 " +
                    detail::fmt_short(*detail::axis_value(a, "ep2")) + " -> " +
                    detail::fmt_short(*detail::axis_value(b, "ep2"));
      if (!ok) {
        f.pass = false;
        break;
      }
    }
    findings.push_back(std::move(f));
  }

  {  // major lot vs ep1, interior regime
    Finding f;
    f.id = "major-lot-vs-ep1";
    f.description = "major-item lot grows when the major defect share grows";
    f.pass = true;
    const auto pairs = detail::directional_pairs(rows, partial_rows, "ep1", "ep2");
    for (const auto& pr : pairs) {
      const auto& a = rows[pr.lo];
      const auto& b = rows[pr.hi];
      f.applicable = true;
      const bool ok = b.lots.lot1 > a.lots.lot1 * (1.0 - 1e-12);
      if (!ok || f.witness.empty())
        f.witness = "lot1 " + detail::fmt_short(a.lots.lot1) + " -> " +
                    detail::fmt_short(b.lots.lot1) + " as ep1 " +
                    detail::fmt_short(*detail::axis_value(a, "ep1")) + " -> " +
                    detail::fmt_short(*detail::axis_value(b, "ep1"));
      if (!ok) {
        f.pass = false;
        break;
      }
    }
    findings.push_back(std::move(f));
  }

  {  // average cost vs ep1, every regime
    Finding f;
    f.id = "tac-vs-ep1";
    f.description = "average cost rises with the major defect share in every regime";
    f.pass = true;
    for (const auto& members : groups) {
      const auto pairs = detail::directional_pairs(rows, members, "ep1", "ep2");
      for (const auto& pr : pairs) {
        const auto& a = rows[pr.lo];
        const auto& b = rows[pr.hi];
        f.applicable = true;
        const bool ok = b.tac > a.tac * (1.0 - 1e-12);
        if (!ok || f.witness.empty())
          f.witness = "tac " + detail::fmt_short(a.tac) + " -> " +
                      detail::fmt_short(b.tac) + " as ep1 " +
                      detail::fmt_short(*detail::axis_value(a, "ep1")) + " -> " +
                      detail::fmt_short(*detail::axis_value(b, "ep1"));
        if (!ok) f.pass = false;
      }
    }
    findings.push_back(std::move(f));
  }

  {  // cross-regime sensitivity ranking
    Finding f;
    f.id = "full-sensitivity-dominates";
    f.description =
        "relative cost sensitivity to the major defect share is largest under full "
        "substitution";
    f.pass = true;
    double s_full = -1.0, s_partial = -1.0, s_none = -1.0;
    for (const auto& members : groups) {
      const auto pairs = detail::directional_pairs(rows, members, "ep1", "ep2");
      for (const auto& pr : pairs) {
        if (rows[pr.lo].mode != rows[pr.hi].mode) continue;
        const double s = std::fabs(rows[pr.hi].tac - rows[pr.lo].tac) /
                         (rows[pr.lo].tac * pr.delta);
        switch (rows[pr.lo].mode) {
          case SubstitutionMode::Full: s_full = std::max(s_full, s); break;
          case SubstitutionMode::Partial: s_partial = std::max(s_partial, s); break;
          case SubstitutionMode::None: s_none = std::max(s_none, s); break;
        }
      }
    }
    if (s_full >= 0.0 && (s_partial >= 0.0 || s_none >= 0.0)) {
      f.applicable = true;
      f.pass = (s_partial < 0.0 || s_full > s_partial) &&
               (s_none < 0.0 || s_full > s_none);
      f.witness = "per-unit-ep1 relative cost change: full " + detail::fmt_short(s_full);
      if (s_partial >= 0.0) f.witness += ", partial " + detail::fmt_short(s_partial);
      if (s_none >= 0.0) f.witness += ", none " + detail::fmt_short(s_none);
    }
    findings.push_back(std::move(f));
  }

  {  // run-out time vs ch2, interior regime
    Finding f;
    f.id = "runout-vs-ch2";
    f.description =
        "run-out time does not rise when the minor holding cost grows";
    f.pass = true;
    for (std::size_t i : partial_rows) {
      for (std::size_t j : partial_rows) {
        const auto ci = detail::axis_value(rows[i], "ch2");
        const auto cj = detail::axis_value(rows[j], "ch2");
        if (!ci || !cj || !(*cj > *ci)) continue;
        if (!detail::same_axis_value(detail::axis_value(rows[i], "ep1"),
                                     detail::axis_value(rows[j], "ep1")) ||
            !detail::same_axis_value(detail::axis_value(rows[i], "ep2"),
                                     detail::axis_value(rows[j], "ep2")))
          continue;
        f.applicable = true;
        const bool ok =
            rows[j].policy.runout_time <= rows[i].policy.runout_time * (1.0 + 1e-12);
        if (!ok || f.witness.empty())
          f.witness = "tau " + detail::fmt_short(rows[i].policy.runout_time) + " -> " +
                      detail::fmt_short(rows[j].policy.runout_time) + " as ch2 " +
                      detail::fmt_short(*ci) + " -> " + detail::fmt_short(*cj);
        if (!ok) f.pass = false;
      }
    }
    findings.push_back(std::move(f));
  }

  return findings;
}

}  // namespace eoqsub
