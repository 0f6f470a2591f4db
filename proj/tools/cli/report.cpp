#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "builders.hpp"

namespace lpmult::cli {

namespace {

std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const ConditionResult& c) {
  return {{"name", c.name},
          {"order", c.order},
          {"weight", number(c.weight)},
          {"constant", number(c.constant)},
          {"constant_half", number(c.constant_half)},
          {"constant_quarter", number(c.constant_quarter)},
          {"growth_ratio", number(c.growth_ratio)},
          {"sustained_growth", c.sustained_growth},
          {"finite", c.finite},
          {"pass", c.pass}};
}

Json to_json(const MultiplierReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  Json subs = Json::array();
  for (const auto& s : r.sub_reports) subs.push_back(to_json(s));
  Json sob = Json::array();
  for (const auto& [p, s] : r.sobolev_orders) sob.push_back({{"p", p}, {"sobolev_order", number(s)}});
  Json out = {{"checker", r.checker},
              {"model", r.model},
              {"band", r.band},
              {"range", r.range},
              {"half_range", r.half_range},
              {"conditions", conds},
              {"notes", r.notes},
              {"growth_threshold", r.options.growth_threshold},
              {"pass", r.pass}};
  if (r.top_constant) out["top_constant"] = number(*r.top_constant);
  if (!sob.empty()) out["sobolev_orders"] = sob;
  if (!subs.empty()) out["sub_reports"] = subs;
  return out;
}

Json to_json(const SlopeFit& f) {
  return {{"slope", number(f.slope)}, {"intercept", number(f.intercept)}, {"r2", number(f.r2)}};
}

Json to_json(const LadderReport& r) {
  Json vals = Json::array();
  for (double v : r.values) vals.push_back(number(v));
  Json out = {{"name", r.name},   {"r", r.rs},
              {"values", vals},   {"fit", r.fit ? to_json(*r.fit) : Json(nullptr)},
              {"target", r.target}, {"tolerance", r.tolerance},
              {"min_r2", r.min_r2}, {"pass", r.pass}};
  return out;
}

std::string ladder_csv(const LadderReport& r) {
  std::ostringstream os;
  os << "name,r,value\n";
  for (std::size_t i = 0; i < r.rs.size(); ++i)
    os << r.name << ',' << csv_number(r.rs[i]) << ',' << csv_number(r.values[i]) << '\n';
  return os.str();
}

std::string conditions_csv(const MultiplierReport& r) {
  std::ostringstream os;
  os << "checker,condition,order,weight,constant,constant_half,constant_quarter,growth_ratio,pass\n";
  for (const auto& c : r.conditions)
    os << r.checker << ',' << c.name << ',' << c.order << ',' << csv_number(c.weight) << ',' << csv_number(c.constant)
       << ',' << csv_number(c.constant_half) << ',' << csv_number(c.constant_quarter) << ','
       << csv_number(c.growth_ratio) << ',' << (c.pass ? 1 : 0) << '\n';
  return os.str();
}

Json envelope(const std::string& command, const Json& config, const CommandResult& result, int exit_code,
              const Json& error, double seconds) {
  Json csv = Json::object();
  for (const auto& [name, block] : result.csv) csv[name] = block;
  return {{"schema_version", kSchemaVersion},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", config},
          {"results", result.results},
          {"csv", csv},
          {"pass", result.pass && exit_code == 0},
          {"exit_code", exit_code},
          {"error", error},
          {"timing", {{"wall_seconds", seconds}}}};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write report '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing report '" + path + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace lpmult::cli
