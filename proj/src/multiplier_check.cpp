#include "lpmult/multiplier_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/symbol_calculus.hpp"

namespace lpmult {

namespace {

constexpr int kMinRange = 7;

double label_bracket(const MatrixSymbol& s, std::size_t idx) {
  if (s.model().is_su2()) return su2_bracket(static_cast<int>(idx));
  thread_local std::vector<int> k;
  k.resize(static_cast<std::size_t>(s.model().torus_dim()));
  s.torus_freq(idx, k.data());
  return std::max(1.0, torus_casimir(k));
}

// prof[b] = max over labels of band b <= range of <xi>^w |s(xi)|_op.
void accumulate(const MatrixSymbol& s, double weight, int range, std::vector<double>& prof) {
  for (std::size_t i = 0; i < s.label_count(); ++i) {
    const int b = s.band_at(i);
    if (b > range) continue;
    const double norm = s.model().is_torus() ? std::abs(s.data()[i]) : op_norm(s.block(i));
    double v = norm;
    if (weight != 0.0 && norm != 0.0) v *= std::pow(label_bracket(s, i), weight);
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    prof[static_cast<std::size_t>(b)] = std::max(prof[static_cast<std::size_t>(b)], v);
  }
}

double prefix_max(const std::vector<double>& prof, int upto) {
  double m = 0.0;
  for (int b = 0; b <= upto && b < static_cast<int>(prof.size()); ++b) m = std::max(m, prof[static_cast<std::size_t>(b)]);
  return m;
}

ConditionResult finalize(std::string name, int order, double weight, const std::vector<double>& prof, int range,
                         double scale, const CheckOptions& opt) {
  ConditionResult c;
  c.name = std::move(name);
  c.order = order;
  c.weight = weight;
  c.constant = prefix_max(prof, range);
  c.constant_half = prefix_max(prof, range / 2);
  c.constant_quarter = prefix_max(prof, range / 4);
  c.finite = std::isfinite(c.constant);
  const double floor = opt.noise_floor * std::max(1.0, scale);
  if (!c.finite) {
    c.growth_ratio = std::numeric_limits<double>::infinity();
    c.pass = false;
    return c;
  }
  if (c.constant <= floor) {
    c.growth_ratio = 1.0;
  } else {
    c.growth_ratio = c.constant_half > floor ? c.constant / c.constant_half : std::numeric_limits<double>::infinity();
    const double top = c.constant - c.constant_half, prev = c.constant_half - c.constant_quarter;
    c.sustained_growth = top > opt.tail_fraction * c.constant && prev > opt.tail_fraction * c.constant &&
                         top >= opt.tail_persistence * prev;
  }
  c.pass = c.growth_ratio < opt.growth_threshold && !c.sustained_growth;
  return c;
}

void validate(const MatrixSymbol& sigma, const std::string& checker, int range, int max_order = -1) {
  if (range < kMinRange)
    throw ResolutionError("range " + std::to_string(range) + " too small: need at least " +
                          std::to_string(kMinRange + 1) + " labels per direction");
  const int need = required_band(sigma.model(), checker, range, max_order);
  if (sigma.band() < need)
    throw ResolutionError("band insufficient: " + checker + " over range " + std::to_string(range) +
                          " needs symbol band >= " + std::to_string(need) + " (have " + std::to_string(sigma.band()) + ")");
}

double symbol_scale(const MatrixSymbol& sigma, int range) { return sigma.max_op_norm(range); }

// Profiles of all Delta_0 words up to max_order (multisets; differences commute).
std::vector<std::vector<double>> word_profiles(const MatrixSymbol& sigma, int max_order,
                                               const std::function<double(int)>& weight, int range) {
  const auto gens = generators(sigma.model());
  std::vector<std::vector<double>> prof(static_cast<std::size_t>(max_order) + 1,
                                        std::vector<double>(static_cast<std::size_t>(range) + 1, 0.0));
  std::function<void(const MatrixSymbol&, int, std::size_t)> dfs = [&](const MatrixSymbol& cur, int depth,
                                                                       std::size_t start) {
    accumulate(cur, weight(depth), range, prof[static_cast<std::size_t>(depth)]);
    if (depth == max_order) return;
    for (std::size_t g = start; g < gens.size(); ++g) dfs(apply_difference(gens[g], cur), depth + 1, g);
  };
  dfs(sigma, 0, 0);
  return prof;
}

MultiplierReport base_report(const std::string& checker, const MatrixSymbol& sigma, int range, const CheckOptions& opt) {
  MultiplierReport r;
  r.checker = checker;
  r.model = sigma.model().name();
  r.band = sigma.band();
  r.range = range;
  r.half_range = range / 2;
  r.options = opt;
  r.notes.push_back("finite range: pass means finite constants without a growing tail over the checked labels");
  return r;
}

void settle(MultiplierReport& r) {
  r.pass = std::all_of(r.conditions.begin(), r.conditions.end(), [](const ConditionResult& c) { return c.pass; }) &&
           std::all_of(r.sub_reports.begin(), r.sub_reports.end(), [](const MultiplierReport& s) { return s.pass; });
}

ConditionResult top_order(const MatrixSymbol& sigma, int range, double scale, const CheckOptions& opt) {
  const int kappa = sigma.model().kappa();
  MatrixSymbol cur = sigma;
  for (int i = 0; i < kappa / 2; ++i) cur = laplace_difference_by_generators(cur);
  std::vector<double> prof(static_cast<std::size_t>(range) + 1, 0.0);
  accumulate(cur, kappa, range, prof);
  return finalize("A^" + std::to_string(kappa / 2), kappa, kappa, prof, range, scale, opt);
}

}  // namespace

int required_band(const GroupModel& model, const std::string& checker, int range, int max_order) {
  const int gb = generator_band(model), kappa = model.kappa();
  if (checker == "mikhlin") return range + kappa * gb;
  if (checker == "refined") return range + std::max(kappa - 1, kappa / 2) * gb;
  if (checker == "torus3") return range + 1;
  if (checker == "symbol-class") return range + std::max(max_order < 0 ? kappa : max_order, kappa) * gb;
  throw ResolutionError("unknown checker '" + checker + "'");
}

double seminorm(const MatrixSymbol& sigma, int order, double weight, int range) {
  if (range < 0) throw ResolutionError("empty range");
  if (sigma.band() < range + order * generator_band(sigma.model()))
    throw ResolutionError("range outside the exact region of the symbol");
  const auto prof = word_profiles(sigma, order, [&](int) { return weight; }, range);
  return prefix_max(prof.back(), range);
}

MultiplierReport check_mikhlin(const MatrixSymbol& sigma, int range, const CheckOptions& opt) {
  validate(sigma, "mikhlin", range);
  MultiplierReport r = base_report("mikhlin", sigma, range, opt);
  const int kappa = sigma.model().kappa();
  const double scale = symbol_scale(sigma, range);
  const auto prof = word_profiles(sigma, kappa, [](int a) { return static_cast<double>(a); }, range);
  for (int a = 0; a <= kappa; ++a)
    r.conditions.push_back(finalize("order " + std::to_string(a), a, a, prof[static_cast<std::size_t>(a)], range, scale, opt));
  r.top_constant = top_order(sigma, range, scale, opt).constant;
  settle(r);
  return r;
}

MultiplierReport check_refined(const MatrixSymbol& sigma, int range, const CheckOptions& opt) {
  validate(sigma, "refined", range);
  MultiplierReport r = base_report("refined", sigma, range, opt);
  const int kappa = sigma.model().kappa();
  const double scale = symbol_scale(sigma, range);
  const auto prof = word_profiles(sigma, kappa - 1, [](int a) { return static_cast<double>(a); }, range);
  for (int a = 0; a < kappa; ++a)
    r.conditions.push_back(finalize("order " + std::to_string(a), a, a, prof[static_cast<std::size_t>(a)], range, scale, opt));
  ConditionResult top = top_order(sigma, range, scale, opt);
  r.top_constant = top.constant;
  r.conditions.push_back(std::move(top));
  settle(r);
  if (r.pass) r.notes.push_back("refined conditions pass; the full order-" + std::to_string(kappa) + " family was not evaluated");
  return r;
}

MultiplierReport check_torus3(const MatrixSymbol& sigma, int range, const CheckOptions& opt) {
  if (sigma.model() != GroupModel::torus(3)) throw ResolutionError("check_torus3 requires the torus-3 model");
  validate(sigma, "torus3", range);
  MultiplierReport r = base_report("torus3", sigma, range, opt);
  std::vector<double> p1(static_cast<std::size_t>(range) + 1, 0.0), p2 = p1, p3 = p1;
  int k[3];
  for (k[0] = -range; k[0] <= range; ++k[0])
    for (k[1] = -range; k[1] <= range; ++k[1])
      for (k[2] = -range; k[2] <= range; ++k[2]) {
        const int b = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
        const double norm = std::sqrt(static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
        const Complex s0 = sigma.at(k);
        Complex avg = 0.0;
        double first = 0.0;
        for (int j = 0; j < 3; ++j) {
          int kp[3] = {k[0], k[1], k[2]}, km[3] = {k[0], k[1], k[2]};
          kp[j] += 1;
          km[j] -= 1;
          const Complex sp = sigma.at(kp), sm = sigma.at(km);
          first = std::max(first, std::abs(sp - s0));
          avg += sp + sm;
        }
        auto put = [&](std::vector<double>& p, double v) {
          if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
          p[static_cast<std::size_t>(b)] = std::max(p[static_cast<std::size_t>(b)], v);
        };
        put(p1, std::abs(s0));
        put(p2, norm * first);
        put(p3, norm * norm * std::abs(s0 - avg / 6.0));
      }
  const double scale = prefix_max(p1, range);
  r.conditions.push_back(finalize("bounded |sigma(k)|", 0, 0, p1, range, scale, opt));
  r.conditions.push_back(finalize("|k| |sigma(k+e_j) - sigma(k)|", 1, 1, p2, range, scale, opt));
  r.conditions.push_back(finalize("|k|^2 |sigma(k) - mean of neighbours|", 2, 2, p3, range, scale, opt));
  settle(r);
  return r;
}

MultiplierReport check_symbol_class(const MatrixSymbol& sigma, const SymbolClassSpec& spec, int range,
                                    const CheckOptions& opt) {
  if (spec.rho < 0.0 || spec.rho > 1.0) throw MathInputError("symbol class type must lie in [0, 1]");
  if (spec.max_order < 0) throw MathInputError("max_order must be nonnegative");
  validate(sigma, "symbol-class", range, spec.max_order);
  MultiplierReport r = base_report("symbol-class", sigma, range, opt);
  const double scale = symbol_scale(sigma, range);
  const auto prof = word_profiles(
      sigma, spec.max_order, [&](int a) { return spec.rho * a - spec.m; }, range);
  for (int a = 0; a <= spec.max_order; ++a)
    r.conditions.push_back(finalize("order " + std::to_string(a), a, spec.rho * a - spec.m,
                                    prof[static_cast<std::size_t>(a)], range, scale, opt));
  const int kappa = sigma.model().kappa();
  const double loss = kappa * (1.0 - spec.rho);
  for (double p : {1.5, 2.0, 3.0, 4.0}) r.sobolev_orders.emplace_back(p, loss * std::abs(1.0 / p - 0.5));

  const double shift = -std::max(spec.m, 0.0) - loss;
  MatrixSymbol reduced = sigma;
  for (std::size_t i = 0; i < reduced.label_count(); ++i) reduced.block(i) *= std::pow(label_bracket(reduced, i), shift);
  r.sub_reports.push_back(check_mikhlin(reduced, range, opt));
  r.sub_reports.back().checker = "mikhlin (reweighted by <xi>^" + std::to_string(shift) + ")";
  settle(r);
  return r;
}

LpRatioStats empirical_lp_ratio(const MatrixSymbol& sigma, double p, int trials, int band, std::uint64_t seed) {
  if (!(p > 1.0) || !std::isfinite(p)) throw MathInputError("p must lie in (1, inf)");
  if (trials < 1) throw ResolutionError("need at least one trial");
  if (band > sigma.band()) throw ResolutionError("function band exceeds symbol band");
  auto grid = build_grid(sigma.model(), std::max(1, band));
  const MatrixSymbol s = sigma.truncated(band);
  LpRatioStats st;
  st.p = p;
  st.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int attempt = 0;; ++attempt) {
      MatrixSymbol c(sigma.model(), band);
      for (auto& v : c.data()) v = Complex(n(rng), n(rng));
      const GroupFunction f = fourier_inverse(c, grid);
      const double nf = lp_norm(f, p);
      if (nf < 1e-12) {
        if (attempt > 10) throw MathInputError("could not draw a nondegenerate test function");
        continue;
      }
      const GroupFunction g = fourier_inverse(symbol_product(s, c), grid);
      st.ratios.push_back(lp_norm(g, p) / nf);
      break;
    }
  }
  std::vector<double> sorted = st.ratios;
  std::sort(sorted.begin(), sorted.end());
  st.min = sorted.front();
  st.max = sorted.back();
  const std::size_t m = sorted.size();
  st.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return st;
}

}  // namespace lpmult
