// Command-line front end: single solves, parameter sweeps, oracle
// verification, and parameter validation over flat JSON config files.
// Output is byte-deterministic for a fixed config and flag set.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <eoqsub/eoqsub.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;      // unreadable/invalid config, bad flags, bad region
constexpr int kExitInfeasible = 3;  // regime has no optimum, or iteration failed
constexpr int kExitVerify = 4;      // oracle residual above the ceiling
constexpr int kExitCap = 5;         // sweep cross product above the cap

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliOverrides {
  std::string config_path;
  std::string model;
  std::string regime;
  std::string format;
  std::string seed_region;
  bool verify = false;
  bool paper_verbatim = false;
};

struct RunConfig {
  eoqsub::SystemParams params;
  eoqsub::CostModel model = eoqsub::CostModel::Eoqiss;
  eoqsub::Regime regime = eoqsub::Regime::Auto;
  std::string format;  // empty -> per-command default
  bool verify = false;
  bool paper_verbatim = false;
  double verify_ceiling = 1e-4;
  eoqsub::FixedPointSettings fixed_point;
  std::optional<eoqsub::SearchRegion> region;
  bool has_sweep = false;
  std::vector<eoqsub::SweepAxis> sweep_axes;
  std::vector<eoqsub::Regime> sweep_regimes;
  std::optional<eoqsub::CostModel> sweep_model;
  std::uint64_t sweep_cap = 1'000'000;
  bool sweep_verify_each = false;
  std::string raw;  // config file bytes, fingerprinted in sweep headers
};

void fail(std::vector<std::string>& errs, std::string msg) {
  errs.push_back(std::move(msg));
}

double num_at(const eoqsub::json& j, const std::string& key,
              std::vector<std::string>& errs) {
  if (!j.at(key).is_number()) {
    fail(errs, "key '" + key + "' must be a number");
    return 0.0;
  }
  return j.at(key).get<double>();
}

void reject_unknown(const eoqsub::json& obj, const std::vector<std::string>& known,
                    const std::string& where, std::vector<std::string>& errs) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto& k : known) ok = ok || key == k;
    if (!ok) fail(errs, "unknown key '" + key + "'" + (where.empty() ? "" : " in " + where));
  }
}

eoqsub::SearchRegion region_from_json(const eoqsub::json& r,
                                      std::vector<std::string>& errs) {
  eoqsub::SearchRegion out;
  reject_unknown(r, {"tau", "cycle", "resolution", "refine_tolerance"}, "region", errs);
  for (const char* key : {"tau", "cycle"}) {
    if (!r.contains(key)) {
      fail(errs, std::string("region needs key '") + key + "' as [lo, hi]");
      continue;
    }
    const auto& iv = r.at(key);
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
      fail(errs, std::string("region key '") + key + "' must be [lo, hi]");
      continue;
    }
    (std::string(key) == "tau" ? out.tau_range : out.cycle_range) =
        eoqsub::Interval{iv[0].get<double>(), iv[1].get<double>()};
  }
  if (r.contains("resolution")) {
    if (!r.at("resolution").is_number_integer())
      fail(errs, "region resolution must be an integer");
    else
      out.resolution = r.at("resolution").get<int>();
  }
  if (r.contains("refine_tolerance")) out.refine_tolerance = num_at(r, "refine_tolerance", errs);
  return out;
}

void sweep_from_json(const eoqsub::json& s, RunConfig& cfg,
                     std::vector<std::string>& errs) {
  cfg.has_sweep = true;
  reject_unknown(s, {"axes", "regimes", "model", "cap", "verify_each"}, "sweep", errs);
  if (!s.contains("axes") || !s.at("axes").is_array() || s.at("axes").empty()) {
    fail(errs, "sweep needs a non-empty 'axes' array");
    return;
  }
  for (const auto& a : s.at("axes")) {
    if (!a.is_object()) {
      fail(errs, "each sweep axis must be an object");
      continue;
    }
    reject_unknown(a, {"param", "params", "values"}, "sweep axis", errs);
    eoqsub::SweepAxis ax;
    if (a.contains("param") && a.at("param").is_string()) {
      ax.params.push_back(a.at("param").get<std::string>());
    } else if (a.contains("params") && a.at("params").is_array()) {
      for (const auto& n : a.at("params")) {
        if (!n.is_string()) {
          fail(errs, "sweep axis 'params' entries must be strings");
          break;
        }
        ax.params.push_back(n.get<std::string>());
      }
    } else {
      fail(errs, "sweep axis needs 'param' (string) or 'params' (string array)");
      continue;
    }
    if (!a.contains("values") || !a.at("values").is_array() || a.at("values").empty()) {
      fail(errs, "sweep axis needs a non-empty 'values' array");
      continue;
    }
    for (const auto& v : a.at("values")) {
      if (v.is_number()) {
        ax.values.push_back({v.get<double>()});
      } else if (v.is_array()) {
        std::vector<double> tuple;
        for (const auto& c : v) {
          if (!c.is_number()) {
            fail(errs, "sweep axis value tuples must hold numbers");
            break;
          }
          tuple.push_back(c.get<double>());
        }
        ax.values.push_back(std::move(tuple));
      } else {
        fail(errs, "sweep axis values must be numbers or number tuples");
      }
    }
    cfg.sweep_axes.push_back(std::move(ax));
  }
  if (s.contains("regimes")) {
    if (!s.at("regimes").is_array() || s.at("regimes").empty()) {
      fail(errs, "sweep 'regimes' must be a non-empty string array");
    } else {
      for (const auto& r : s.at("regimes")) {
        const auto rg = r.is_string()
                            ? eoqsub::regime_from_string(r.get<std::string>())
                            : std::nullopt;
        if (!rg)
          fail(errs, "sweep regime must be one of partial, full, none, auto");
        else
          cfg.sweep_regimes.push_back(*rg);
      }
    }
  }
  if (s.contains("model")) {
    const auto m = s.at("model").is_string()
                       ? eoqsub::model_from_string(s.at("model").get<std::string>())
                       : std::nullopt;
    if (!m)
      fail(errs, "sweep model must be 'basic' or 'eoqiss'");
    else
      cfg.sweep_model = *m;
  }
  if (s.contains("cap")) {
    if (!s.at("cap").is_number_integer() || s.at("cap").get<std::int64_t>() < 1)
      fail(errs, "sweep cap must be a positive integer");
    else
      cfg.sweep_cap = s.at("cap").get<std::uint64_t>();
  }
  if (s.contains("verify_each")) {
    if (!s.at("verify_each").is_boolean())
      fail(errs, "sweep verify_each must be a boolean");
    else
      cfg.sweep_verify_each = s.at("verify_each").get<bool>();
  }
}

eoqsub::SearchRegion region_from_flag(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--seed-region expects numbers: tau_lo,tau_hi,cycle_lo,cycle_hi[,resolution]");
    }
  }
  if (parts.size() != 4 && parts.size() != 5)
    throw ConfigError("--seed-region expects tau_lo,tau_hi,cycle_lo,cycle_hi[,resolution]");
  eoqsub::SearchRegion r;
  r.tau_range = {parts[0], parts[1]};
  r.cycle_range = {parts[2], parts[3]};
  if (parts.size() == 5) r.resolution = static_cast<int>(parts[4]);
  return r;
}

RunConfig load_config(const CliOverrides& ov) {
  std::ifstream in(ov.config_path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + ov.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();

  RunConfig cfg;
  cfg.raw = buf.str();
  eoqsub::json j;
  try {
    j = eoqsub::json::parse(cfg.raw);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  std::vector<std::string> errs;
  const std::vector<std::string> known = {
      "d1", "d2",  "ch1",   "ch2",    "x1",           "x2",
      "ep1", "ep2", "co",    "ct",     "model",        "regime",
      "format", "verify", "paper_verbatim", "verify_ceiling",
      "fixed_point", "region", "sweep"};
  reject_unknown(j, known, "", errs);

  std::vector<std::string> missing;
  for (const char* key : {"d1", "d2", "ch1", "ch2", "x1", "x2", "ep1", "ep2", "co", "ct"})
    if (!j.contains(key)) missing.emplace_back(key);
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& k : missing) msg += ' ' + k;
    fail(errs, msg);
  } else {
    cfg.params.item1.demand = num_at(j, "d1", errs);
    cfg.params.item2.demand = num_at(j, "d2", errs);
    cfg.params.item1.holding_cost = num_at(j, "ch1", errs);
    cfg.params.item2.holding_cost = num_at(j, "ch2", errs);
    cfg.params.item1.screening_rate = num_at(j, "x1", errs);
    cfg.params.item2.screening_rate = num_at(j, "x2", errs);
    cfg.params.item1.defect_share = num_at(j, "ep1", errs);
    cfg.params.item2.defect_share = num_at(j, "ep2", errs);
    cfg.params.order_cost = num_at(j, "co", errs);
    cfg.params.transfer_cost = num_at(j, "ct", errs);
  }

  if (j.contains("model")) {
    const auto m = j.at("model").is_string()
                       ? eoqsub::model_from_string(j.at("model").get<std::string>())
                       : std::nullopt;
    if (!m) fail(errs, "model must be 'basic' or 'eoqiss'");
    else cfg.model = *m;
  }
  if (j.contains("regime")) {
    const auto r = j.at("regime").is_string()
                       ? eoqsub::regime_from_string(j.at("regime").get<std::string>())
                       : std::nullopt;
    if (!r) fail(errs, "regime must be one of partial, full, none, auto");
    else cfg.regime = *r;
  }
  if (j.contains("format")) {
    const auto f = j.at("format").is_string() ? j.at("format").get<std::string>() : "";
    if (f != "json" && f != "csv") fail(errs, "format must be 'json' or 'csv'");
    else cfg.format = f;
  }
  if (j.contains("verify")) {
    if (!j.at("verify").is_boolean()) fail(errs, "verify must be a boolean");
    else cfg.verify = j.at("verify").get<bool>();
  }
  if (j.contains("paper_verbatim")) {
    if (!j.at("paper_verbatim").is_boolean()) fail(errs, "paper_verbatim must be a boolean");
    else cfg.paper_verbatim = j.at("paper_verbatim").get<bool>();
  }
  if (j.contains("verify_ceiling")) {
    cfg.verify_ceiling = num_at(j, "verify_ceiling", errs);
    if (!(cfg.verify_ceiling > 0.0)) fail(errs, "verify_ceiling must be positive");
  }
  if (j.contains("fixed_point")) {
    const auto& fp = j.at("fixed_point");
    if (!fp.is_object()) {
      fail(errs, "fixed_point must be an object");
    } else {
      reject_unknown(fp, {"tolerance", "max_iterations"}, "fixed_point", errs);
      if (fp.contains("tolerance")) cfg.fixed_point.tolerance = num_at(fp, "tolerance", errs);
      if (fp.contains("max_iterations")) {
        if (!fp.at("max_iterations").is_number_integer() ||
            fp.at("max_iterations").get<std::int64_t>() < 1)
          fail(errs, "fixed_point max_iterations must be a positive integer");
        else
          cfg.fixed_point.max_iterations = fp.at("max_iterations").get<int>();
      }
    }
  }
  if (j.contains("region")) {
    if (!j.at("region").is_object()) fail(errs, "region must be an object");
    else cfg.region = region_from_json(j.at("region"), errs);
  }
  if (j.contains("sweep")) {
    if (!j.at("sweep").is_object()) fail(errs, "sweep must be an object");
    else sweep_from_json(j.at("sweep"), cfg, errs);
  }

  if (!errs.empty()) {
    std::string msg = "config errors:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  // flags override file values
  if (!ov.model.empty()) {
    const auto m = eoqsub::model_from_string(ov.model);
    if (!m) throw ConfigError("--model must be 'basic' or 'eoqiss'");
    cfg.model = *m;
  }
  if (!ov.regime.empty()) {
    const auto r = eoqsub::regime_from_string(ov.regime);
    if (!r) throw ConfigError("--regime must be one of partial, full, none, auto");
    cfg.regime = *r;
  }
  if (!ov.format.empty()) {
    if (ov.format != "json" && ov.format != "csv")
      throw ConfigError("--format must be 'json' or 'csv'");
    cfg.format = ov.format;
  }
  if (!ov.seed_region.empty()) cfg.region = region_from_flag(ov.seed_region);
  cfg.verify = cfg.verify || ov.verify;
  cfg.paper_verbatim = cfg.paper_verbatim || ov.paper_verbatim;
  return cfg;
}

void emit(const std::string& text) { std::fwrite(text.data(), 1, text.size(), stdout); }

void print_violations(const std::vector<eoqsub::Violation>& vs) {
  emit(eoqsub::violations_to_json(vs).dump(2) + "\n");
  for (const auto& v : vs)
    std::fprintf(stderr, "invalid config: [%s] %s\n", v.assumption.c_str(),
                 v.message.c_str());
}

eoqsub::SolveReport run_solve(const RunConfig& cfg) {
  if (cfg.paper_verbatim)
    return eoqsub::verbatim::solve_published(cfg.params, cfg.model, cfg.regime,
                                             cfg.fixed_point);
  const eoqsub::SearchRegion* rg = cfg.region ? &*cfg.region : nullptr;
  return eoqsub::solve(cfg.params, cfg.model, cfg.regime, cfg.fixed_point, rg);
}

eoqsub::SweepRow report_as_row(const eoqsub::SolveReport& rep, eoqsub::Regime regime) {
  eoqsub::SweepRow row;
  row.regime = regime;
  row.valid = true;
  row.status = "ok";
  row.mode = rep.mode;
  row.policy = rep.policy;
  row.lots = rep.lots;
  row.tac = rep.cost.total;
  row.theorem1_ok = rep.theorem1_ok;
  row.theorem2_ok = rep.theorem2_ok;
  row.hessian_psd = rep.hessian_psd;
  row.oracle_residual = rep.oracle_residual;
  return row;
}

int cmd_solve(const CliOverrides& ov) {
  const RunConfig cfg = load_config(ov);
  const auto vs = eoqsub::validate(cfg.params, cfg.model);
  if (!vs.empty()) {
    print_violations(vs);
    return kExitConfig;
  }
  eoqsub::SolveReport report = run_solve(cfg);
  if (cfg.verify) {
    const eoqsub::SearchRegion* rg = cfg.region ? &*cfg.region : nullptr;
    report = eoqsub::verify(cfg.params, report, cfg.verify_ceiling, rg).report;
  }
  if (cfg.format == "csv")
    emit(eoqsub::sweep_to_csv({report_as_row(report, cfg.regime)},
                              eoqsub::digest_hex(eoqsub::fnv1a64(cfg.raw))));
  else
    emit(eoqsub::report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const CliOverrides& ov) {
  const RunConfig cfg = load_config(ov);
  const auto vs = eoqsub::validate(cfg.params, cfg.model);
  if (!vs.empty()) {
    print_violations(vs);
    return kExitConfig;
  }
  const eoqsub::SolveReport report = run_solve(cfg);
  const eoqsub::SearchRegion* rg = cfg.region ? &*cfg.region : nullptr;
  const eoqsub::VerifyReport vr = eoqsub::verify(cfg.params, report, cfg.verify_ceiling, rg);
  emit(eoqsub::verify_to_json(vr).dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const CliOverrides& ov) {
  const RunConfig cfg = load_config(ov);
  if (!cfg.has_sweep)
    throw ConfigError("sweep command needs a 'sweep' section in the config");
  eoqsub::SweepSpec spec;
  spec.base = cfg.params;
  spec.axes = cfg.sweep_axes;
  if (!cfg.sweep_regimes.empty()) spec.regimes = cfg.sweep_regimes;
  if (!ov.regime.empty()) {
    const auto r = eoqsub::regime_from_string(ov.regime);
    if (!r) throw ConfigError("--regime must be one of partial, full, none, auto");
    spec.regimes = {*r};
  }
  spec.model = cfg.sweep_model.value_or(cfg.model);
  spec.fixed_point = cfg.fixed_point;
  spec.cap = cfg.sweep_cap;
  const auto rows = eoqsub::run_sweep(spec, cfg.sweep_verify_each);

  const std::string digest = eoqsub::digest_hex(eoqsub::fnv1a64(cfg.raw));
  if (cfg.format == "json") {
    eoqsub::json out;
    out["tool"] = eoqsub::kToolName;
    out["version"] = eoqsub::kVersion;
    out["config_digest"] = digest;
    out["rows"] = eoqsub::json::array();
    for (const auto& row : rows) {
      eoqsub::json r;
      eoqsub::json axes = eoqsub::json::object();
      for (const auto& [name, value] : row.axis_values) axes[name] = value;
      r["axis_values"] = axes;
      r["regime"] = eoqsub::to_string(row.regime);
      r["valid"] = row.valid;
      r["status"] = row.status;
      const bool solved = row.status == "ok" || row.status == "residual-exceeded";
      if (solved) {
        r["mode"] = eoqsub::to_string(row.mode);
        r["tau"] = row.policy.runout_time;
        r["T"] = row.policy.cycle_time;
        r["y1"] = row.lots.lot1;
        r["y2"] = row.lots.lot2;
        r["tac"] = row.tac;
        r["hessian_psd"] = row.hessian_psd;
      }
      r["theorem1_ok"] = eoqsub::detail::opt_json(row.theorem1_ok);
      r["theorem2_ok"] = eoqsub::detail::opt_json(row.theorem2_ok);
      r["oracle_residual"] = eoqsub::detail::opt_json(row.oracle_residual);
      out["rows"].push_back(std::move(r));
    }
    emit(out.dump(2) + "\n");
  } else {
    emit(eoqsub::sweep_to_csv(rows, digest));
  }
  return kExitOk;
}

int cmd_validate(const CliOverrides& ov) {
  const RunConfig cfg = load_config(ov);
  const auto vs = eoqsub::validate(cfg.params, cfg.model);
  emit(eoqsub::violations_to_json(vs).dump(2) + "\n");
  if (!vs.empty())
    for (const auto& v : vs)
      std::fprintf(stderr, "invalid config: [%s] %s\n", v.assumption.c_str(),
                   v.message.c_str());
  return vs.empty() ? kExitOk : kExitConfig;
}

int dispatch(int which, const CliOverrides& ov) {
  try {
    switch (which) {
      case 0: return cmd_solve(ov);
      case 1: return cmd_sweep(ov);
      case 2: return cmd_verify(ov);
      default: return cmd_validate(ov);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const eoqsub::ValidationError& e) {
    print_violations(e.violations());
    return kExitConfig;
  } catch (const eoqsub::SweepCapError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitCap;
  } catch (const eoqsub::RegionError& e) {
    std::fprintf(stderr, "search region rejected: %s\n", e.what());
    return kExitConfig;
  } catch (const eoqsub::VerificationError& e) {
    const auto s = e.solver_policy();
    const auto o = e.oracle_policy();
    std::fprintf(stderr,
                 "verification failed: %s\n"
                 "  solver policy: tau=%.17g T=%.17g\n"
                 "  oracle policy: tau=%.17g T=%.17g\n"
                 "  residual: %.17g\n",
                 e.what(), s.runout_time, s.cycle_time, o.runout_time, o.cycle_time,
                 e.residual());
    return kExitVerify;
  } catch (const eoqsub::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const eoqsub::IterationError& e) {
    std::fprintf(stderr, "no convergence: %s (last iterate tau=%.17g T=%.17g)\n",
                 e.what(), e.last_iterate().runout_time, e.last_iterate().cycle_time);
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-product lot sizing with one-way stockout substitution"};
  app.require_subcommand(1);

  CliOverrides ov;
  const auto add_common = [&ov](CLI::App* sub) {
    sub->add_option("--config", ov.config_path, "JSON parameter file")->required();
    sub->add_option("--model", ov.model, "cost model: basic | eoqiss");
    sub->add_option("--regime", ov.regime, "substitution regime: partial | full | none | auto");
    sub->add_option("--format", ov.format, "output format: json | csv");
    sub->add_flag("--paper-verbatim", ov.paper_verbatim,
                  "use the published closed forms instead of the corrected ones");
    sub->add_option("--seed-region", ov.seed_region,
                    "oracle search region: tau_lo,tau_hi,cycle_lo,cycle_hi[,resolution]");
  };

  CLI::App* s_solve = app.add_subcommand("solve", "solve one parameter set");
  add_common(s_solve);
  s_solve->add_flag("--verify", ov.verify, "cross-check the result against the simulation oracle");
  CLI::App* s_sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
  add_common(s_sweep);
  CLI::App* s_verify = app.add_subcommand("verify", "solve, then verify against the oracle");
  add_common(s_verify);
  CLI::App* s_validate = app.add_subcommand("validate", "check parameters against model assumptions");
  add_common(s_validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  int which = 3;
  if (s_solve->parsed()) which = 0;
  else if (s_sweep->parsed()) which = 1;
  else if (s_verify->parsed()) which = 2;
  return dispatch(which, ov);
}
