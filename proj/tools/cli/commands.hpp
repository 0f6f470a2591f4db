#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace lpmult::cli {

struct RunConfig {
  std::string group = "su2";
  std::optional<int> band;
  std::optional<int> range;
  std::string symbol;
  std::vector<std::string> checkers;
  // "m,rho,order" for the symbol-class checker.
  std::string symbol_class;
  std::string ladder = "default";
  std::uint64_t seed = 0;
  int lp_trials = 0;
  // invert
  std::string field = "D3";
  std::string c = "1";
  double bound = 2.0;
  bool recursion_check = false;
  // probe
  std::string q = "rho2";
  double s = 0.0;

  Json to_json(const std::string& command) const;
};

// "default", "2^-a..2^-b" or a comma-separated list of positive numbers.
std::vector<double> parse_ladder(const std::string& text);

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_invert(const RunConfig& cfg);
CommandResult cmd_probe(const RunConfig& cfg);
CommandResult cmd_fourier_selftest(const RunConfig& cfg);

}  // namespace lpmult::cli
