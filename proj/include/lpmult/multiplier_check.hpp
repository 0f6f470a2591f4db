#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpmult/matrix_symbol.hpp"

namespace lpmult {

struct CheckOptions {
  // C(R) / C(R/2) must stay below this.
  double growth_threshold = 1.25;
  // A condition also fails when the constant keeps climbing over two dyadic
  // shells: both increments exceed tail_fraction * C(R) and the last one is
  // at least tail_persistence times the one before.
  double tail_fraction = 0.02;
  double tail_persistence = 0.8;
  // Constants below noise_floor * max(1, sup |sigma|) count as zero.
  double noise_floor = 1e-10;
};

struct ConditionResult {
  std::string name;
  int order = 0;
  double weight = 0.0;
  double constant = 0.0;
  double constant_half = 0.0;
  double constant_quarter = 0.0;
  double growth_ratio = 1.0;
  bool sustained_growth = false;
  bool finite = true;
  bool pass = true;
};

struct MultiplierReport {
  std::string checker;
  std::string model;
  int band = 0;
  int range = 0;
  int half_range = 0;
  std::vector<ConditionResult> conditions;
  std::optional<double> top_constant;
  // (p, Sobolev order) pairs for graded checks.
  std::vector<std::pair<double, double>> sobolev_orders;
  std::vector<MultiplierReport> sub_reports;
  std::vector<std::string> notes;
  CheckOptions options;
  bool pass = false;
};

struct SymbolClassSpec {
  double m = 0.0;
  double rho = 1.0;
  int max_order = 2;
};

// sup over labels of band <= range and over all Delta_0 words of order a of
// <xi>^w |D^alpha sigma(xi)|_op.
double seminorm(const MatrixSymbol& sigma, int order, double weight, int range);

MultiplierReport check_mikhlin(const MatrixSymbol& sigma, int range, const CheckOptions& opt = {});
MultiplierReport check_refined(const MatrixSymbol& sigma, int range, const CheckOptions& opt = {});
MultiplierReport check_torus3(const MatrixSymbol& sigma, int range = 64, const CheckOptions& opt = {});
MultiplierReport check_symbol_class(const MatrixSymbol& sigma, const SymbolClassSpec& spec, int range,
                                    const CheckOptions& opt = {});

// Band a symbol must have for a checker over `range`.
int required_band(const GroupModel& model, const std::string& checker, int range, int max_order = -1);

struct LpRatioStats {
  double p = 2.0;
  int trials = 0;
  double max = 0.0;
  double median = 0.0;
  double min = 0.0;
  std::vector<double> ratios;
};

LpRatioStats empirical_lp_ratio(const MatrixSymbol& sigma, double p, int trials, int band, std::uint64_t seed);

}  // namespace lpmult
