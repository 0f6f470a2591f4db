#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lpmult/cz_criterion.hpp"
#include "lpmult/multiplier_check.hpp"

namespace lpmult::cli {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "lpmult-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

// Non-finite numbers become null; the accompanying flags say why.
Json number(double x);
Json complex_json(Complex z);

Json to_json(const ConditionResult& c);
Json to_json(const MultiplierReport& r);
Json to_json(const SlopeFit& f);
Json to_json(const LadderReport& r);

std::string ladder_csv(const LadderReport& r);
std::string conditions_csv(const MultiplierReport& r);

struct CommandResult {
  Json results = Json::object();
  bool pass = true;
  // Named CSV blocks, in output order.
  std::vector<std::pair<std::string, std::string>> csv;
};

// Envelope with sorted keys: schema_version, tool_version, command, config,
// results, csv, pass, exit_code, error and timing (the only nondeterministic field).
Json envelope(const std::string& command, const Json& config, const CommandResult& result, int exit_code,
              const Json& error, double seconds);

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace lpmult::cli
