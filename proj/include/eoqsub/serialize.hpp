#pragma once

// JSON and CSV serialization.  Output is byte-deterministic: object keys are
// emitted in a fixed order, CSV numbers use 17 significant digits with a '.'
// decimal separator, and rows end with a bare LF.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eoqsub/types.hpp"
#include "eoqsub/version.hpp"

namespace eoqsub {

using json = nlohmann::ordered_json;

[[nodiscard]] inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// FNV-1a over raw bytes; used to fingerprint config files in sweep headers.
[[nodiscard]] inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

[[nodiscard]] inline std::string digest_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

[[nodiscard]] inline std::optional<CostModel> model_from_string(std::string_view s) {
  if (s == "basic") return CostModel::Basic;
  if (s == "eoqiss") return CostModel::Eoqiss;
  return std::nullopt;
}

[[nodiscard]] inline std::optional<Regime> regime_from_string(std::string_view s) {
  if (s == "partial") return Regime::Partial;
  if (s == "full") return Regime::Full;
  if (s == "none") return Regime::None;
  if (s == "auto") return Regime::Auto;
  return std::nullopt;
}

[[nodiscard]] inline std::optional<SubstitutionMode> mode_from_string(std::string_view s) {
  if (s == "partial") return SubstitutionMode::Partial;
  if (s == "full") return SubstitutionMode::Full;
  if (s == "none") return SubstitutionMode::None;
  return std::nullopt;
}

namespace detail {

[[nodiscard]] inline json opt_json(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

[[nodiscard]] inline json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace detail

[[nodiscard]] inline json params_to_json(const SystemParams& p) {
  json j;
  j["d1"] = p.item1.demand;
  j["d2"] = p.item2.demand;
  j["ch1"] = p.item1.holding_cost;
  j["ch2"] = p.item2.holding_cost;
  j["x1"] = p.item1.screening_rate;
  j["x2"] = p.item2.screening_rate;
  j["ep1"] = p.item1.defect_share;
  j["ep2"] = p.item2.defect_share;
  j["co"] = p.order_cost;
  j["ct"] = p.transfer_cost;
  return j;
}

[[nodiscard]] inline json report_to_json(const SolveReport& r) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["model"] = to_string(r.model);
  j["mode"] = to_string(r.mode);
  j["policy"] = {{"runout_time", r.policy.runout_time}, {"cycle_time", r.policy.cycle_time}};
  j["lots"] = {{"lot1", r.lots.lot1}, {"lot2", r.lots.lot2}};
  j["cost"] = {{"ordering", r.cost.ordering},
               {"holding1", r.cost.holding1},
               {"holding2", r.cost.holding2},
               {"transfer", r.cost.transfer},
               {"total", r.cost.total}};
  j["checks"] = {{"theorem1_ok", detail::opt_json(r.theorem1_ok)},
                 {"theorem2_ok", detail::opt_json(r.theorem2_ok)},
                 {"hessian_psd", r.hessian_psd}};
  j["oracle_residual"] = detail::opt_json(r.oracle_residual);
  j["seed_cycle_time"] = detail::opt_json(r.seed_cycle_time);
  j["substituted_volume"] = r.substituted_volume;
  return j;
}

[[nodiscard]] inline SolveReport report_from_json(const json& j) {
  SolveReport r;
  if (const auto m = model_from_string(j.at("model").get<std::string>())) r.model = *m;
  if (const auto m = mode_from_string(j.at("mode").get<std::string>())) r.mode = *m;
  r.policy.runout_time = j.at("policy").at("runout_time").get<double>();
  r.policy.cycle_time = j.at("policy").at("cycle_time").get<double>();
  r.lots.lot1 = j.at("lots").at("lot1").get<double>();
  r.lots.lot2 = j.at("lots").at("lot2").get<double>();
  const auto& c = j.at("cost");
  r.cost.ordering = c.at("ordering").get<double>();
  r.cost.holding1 = c.at("holding1").get<double>();
  r.cost.holding2 = c.at("holding2").get<double>();
  r.cost.transfer = c.at("transfer").get<double>();
  r.cost.total = c.at("total").get<double>();
  const auto& k = j.at("checks");
  if (!k.at("theorem1_ok").is_null()) r.theorem1_ok = k.at("theorem1_ok").get<bool>();
  if (!k.at("theorem2_ok").is_null()) r.theorem2_ok = k.at("theorem2_ok").get<bool>();
  r.hessian_psd = k.at("hessian_psd").get<bool>();
  if (!j.at("oracle_residual").is_null())
    r.oracle_residual = j.at("oracle_residual").get<double>();
  if (!j.at("seed_cycle_time").is_null())
    r.seed_cycle_time = j.at("seed_cycle_time").get<double>();
  r.substituted_volume = j.at("substituted_volume").get<double>();
  return r;
}

[[nodiscard]] inline json verify_to_json(const VerifyReport& v) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["residual"] = v.residual;
  j["oracle"] = {{"runout_time", v.oracle_policy.runout_time},
                 {"cycle_time", v.oracle_policy.cycle_time},
                 {"value", v.oracle_value}};
  j["report"] = report_to_json(v.report);
  return j;
}

[[nodiscard]] inline json violations_to_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs)
    arr.push_back({{"assumption", v.assumption}, {"field", v.field}, {"message", v.message}});
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["valid"] = vs.empty();
  j["violations"] = arr;
  return j;
}

namespace detail {

[[nodiscard]] inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

[[nodiscard]] inline const char* csv_bool(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : "";
}

}  // namespace detail

// Renders sweep rows as CSV.  Two '#' metadata lines (tool version, config
// digest) precede the header row.  Unsolved rows keep their axis, regime, and
// status cells and leave the solution cells empty.
[[nodiscard]] inline std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                                              std::string_view config_digest) {
  std::string out;
  out += "# tool: ";
  out += kToolName;
  out += ' ';
  out += kVersion;
  out += '\n';
  out += "# config_digest: ";
  out += config_digest;
  out += '\n';

  std::vector<std::string> axis_names;
  if (!rows.empty())
    for (const auto& [name, value] : rows.front().axis_values) axis_names.push_back(name);

  for (const auto& name : axis_names) {
    out += detail::csv_field(name);
    out += ',';
  }
  out += "regime,valid,status,mode,tau,T,y1,y2,tac,theorem1_ok,theorem2_ok,"
         "hessian_psd,oracle_residual\n";

  for (const auto& row : rows) {
    for (const auto& [name, value] : row.axis_values) {
      out += fmt_double(value);
      out += ',';
    }
    out += to_string(row.regime);
    out += ',';
    out += row.valid ? "true" : "false";
    out += ',';
    out += detail::csv_field(row.status);
    out += ',';
    const bool solved = row.status == "ok" || row.status == "residual-exceeded";
    if (solved) {
      out += to_string(row.mode);
      out += ',';
      out += fmt_double(row.policy.runout_time);
      out += ',';
      out += fmt_double(row.policy.cycle_time);
      out += ',';
      out += fmt_double(row.lots.lot1);
      out += ',';
      out += fmt_double(row.lots.lot2);
      out += ',';
      out += fmt_double(row.tac);
      out += ',';
    } else {
      out += ",,,,,,";
    }
    out += detail::csv_bool(row.theorem1_ok);
    out += ',';
    out += detail::csv_bool(row.theorem2_ok);
    out += ',';
    if (solved) out += row.hessian_psd ? "true" : "false";
    out += ',';
    if (row.oracle_residual) out += fmt_double(*row.oracle_residual);
    out += '\n';
  }
  return out;
}

}  // namespace eoqsub
