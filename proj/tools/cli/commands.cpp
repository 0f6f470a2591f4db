#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "builders.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/symbol_calculus.hpp"
#include "lpmult/vf_inverse.hpp"

namespace lpmult::cli {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

// Budget for entries x difference words in one check.
constexpr double kMaxCheckWork = 3e8;

// Multisets of generators of size <= order.
double word_count(const GroupModel& model, int order) {
  const double g = static_cast<double>(generators(model).size());
  double total = 0.0, term = 1.0;
  for (int a = 0; a <= order; ++a) {
    total += term;
    term = term * (g + a) / (a + 1);
  }
  return total;
}

int default_range(const GroupModel& model, const std::string& checker, int order) {
  if (checker == "torus3") return 64;
  if (model.is_su2()) return 24;
  // Largest range up to 16 whose symbol stays within a few million entries.
  int r = 16;
  const int top = std::max(order, model.kappa());
  while (r > 7 && symbol_entries(model, required_band(model, checker, r, order)) * word_count(model, top) > kMaxCheckWork) --r;
  return r;
}

SymbolClassSpec parse_class(const std::string& text, const GroupModel& model) {
  SymbolClassSpec spec;
  spec.max_order = model.kappa();
  if (text.empty()) return spec;
  const auto parts = split_list(text);
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("--class expects m,rho[,order]");
  spec.m = parse_complex(parts[0]).real();
  spec.rho = parse_complex(parts[1]).real();
  if (parts.size() == 3) spec.max_order = static_cast<int>(parse_complex(parts[2]).real());
  return spec;
}

int checker_order(const std::string& checker, const SymbolClassSpec& spec) {
  return checker == "symbol-class" ? spec.max_order : -1;
}

// Largest range whose required band fits in `band`.
int fit_range(const GroupModel& model, const std::string& checker, int order, int band) {
  int r = band;
  while (r > 0 && required_band(model, checker, r, order) > band) --r;
  return r;
}

MultiplierReport run_checker(const std::string& checker, const MatrixSymbol& sigma, int range,
                             const SymbolClassSpec& spec) {
  if (checker == "mikhlin") return check_mikhlin(sigma, range);
  if (checker == "refined") return check_refined(sigma, range);
  if (checker == "torus3") return check_torus3(sigma, range);
  if (checker == "symbol-class") return check_symbol_class(sigma, spec, range);
  throw ConfigError("unknown checker '" + checker + "' (mikhlin, refined, torus3, symbol-class)");
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<double> field_coefficients(const std::string& text) {
  if (text.size() >= 2 && text[0] == 'D' && text.find(',') == std::string::npos) {
    const int j = std::atoi(text.c_str() + 1);
    if (j < 1 || j > 3) throw ConfigError("vector field " + text + " out of range (D1..D3)");
    std::vector<double> X(3, 0.0);
    X[static_cast<std::size_t>(j - 1)] = 1.0;
    return X;
  }
  std::vector<double> X;
  for (const auto& p : split_list(text)) X.push_back(parse_complex(p).real());
  if (X.size() != 3) throw ConfigError("--field expects D1..D3 or three frame coefficients x,y,z");
  return X;
}

// Diagonal closed forms for the probe; empty when the builder has none.
std::function<DiagonalSymbol(int)> diagonal_builder(const std::string& spec) {
  if (spec == "identity") return diagonal_identity;
  if (spec == "riesz:D3") return diagonal_riesz_d3;
  if (spec.rfind("vf-inverse:D3:", 0) == 0) {
    const Complex c = parse_complex(spec.substr(14));
    return [c](int band) { return diagonal_vf_inverse_d3(band, c); };
  }
  if (spec.rfind("laplacian-function:", 0) == 0) {
    const auto f = laplacian_function_profile(spec);
    return [f](int band) { return DiagonalSymbol::from_function(band, [&](int L, int) { return f(std::sqrt(su2_casimir(L))); }); };
  }
  return {};
}

// With the band as resolution cap (class grids with band + 1 nodes and
// symbol labels up to band), the smallest r the probe can resolve.
double probe_r_min(int band) {
  const double grid = smallest_resolved_r(*build_class_grid(std::max(band, 1)));
  const double symbol = band > 2 ? 2.0 * std::pow(200.0 / (band - 2), 3.0) : HUGE_VAL;
  return std::max(grid, symbol);
}

}  // namespace

Json RunConfig::to_json(const std::string& command) const {
  Json j = {{"group", group}, {"seed", seed}};
  if (band) j["band"] = *band;
  if (range) j["range"] = *range;
  if (command == "check") {
    j["symbol"] = symbol;
    j["checkers"] = checkers;
    if (!symbol_class.empty()) j["class"] = symbol_class;
    j["lp_trials"] = lp_trials;
  } else if (command == "invert") {
    j["field"] = field;
    j["c"] = c;
    j["bound"] = bound;
    j["recursion_check"] = recursion_check;
  } else if (command == "probe") {
    j["symbol"] = symbol;
    j["ladder"] = ladder;
    j["q"] = q;
    j["s"] = s;
  }
  return j;
}

std::vector<double> parse_ladder(const std::string& text) {
  if (text.empty() || text == "default") return default_ladder();
  std::vector<double> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    auto exponent = [&](const std::string& t) {
      if (t.rfind("2^", 0) != 0) throw ConfigError("ladder range must read 2^a..2^b, got '" + text + "'");
      return static_cast<int>(std::lround(parse_complex(t.substr(2)).real()));
    };
    const int a = exponent(text.substr(0, dots)), b = exponent(text.substr(dots + 2));
    const int step = a <= b ? 1 : -1;
    for (int e = a;; e += step) {
      out.push_back(std::ldexp(1.0, e));
      if (e == b) break;
    }
  } else {
    for (const auto& p : split_list(text)) out.push_back(parse_complex(p).real());
  }
  for (double r : out)
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("ladder points must lie in (0, 1)");
  return out;
}

CommandResult cmd_check(const RunConfig& cfg) {
  const GroupModel model = GroupModel::parse(cfg.group);
  if (cfg.symbol.empty()) throw ConfigError("check needs --symbol");
  std::vector<std::string> checkers = cfg.checkers.empty() ? std::vector<std::string>{"mikhlin"} : cfg.checkers;
  const SymbolClassSpec spec = parse_class(cfg.symbol_class, model);
  for (const auto& c : checkers)
    if (c != "mikhlin" && c != "refined" && c != "torus3" && c != "symbol-class")
      throw ConfigError("unknown checker '" + c + "' (mikhlin, refined, torus3, symbol-class)");

  std::vector<int> ranges;
  int band = 0;
  for (const auto& c : checkers) {
    const int order = checker_order(c, spec);
    int r = cfg.range ? *cfg.range : (cfg.band ? fit_range(model, c, order, *cfg.band) : default_range(model, c, order));
    ranges.push_back(r);
    band = std::max(band, required_band(model, c, r, order));
  }
  if (cfg.band) band = *cfg.band;
  for (std::size_t i = 0; i < checkers.size(); ++i) {
    if (checkers[i] == "torus3") continue;
    const int order = checkers[i] == "symbol-class" ? std::max(spec.max_order, model.kappa()) : model.kappa();
    const double cost = symbol_entries(model, band) * word_count(model, order);
    if (cost > kMaxCheckWork) {
      std::ostringstream os;
      os << checkers[i] << " on " << model.name() << " at band " << band << " needs about " << cost
         << " entry-word evaluations (limit " << kMaxCheckWork << "); lower --range or --band";
      throw ResolutionError(os.str());
    }
  }

  const MatrixSymbol sigma = build_symbol(model, cfg.symbol, band);
  CommandResult out;
  out.results["symbol_band"] = sigma.band();
  Json reports = Json::array();
  for (std::size_t i = 0; i < checkers.size(); ++i) {
    const MultiplierReport r = run_checker(checkers[i], sigma, ranges[i], spec);
    reports.push_back(to_json(r));
    out.csv.emplace_back("conditions_" + checkers[i], conditions_csv(r));
    out.pass = out.pass && r.pass;
  }
  out.results["reports"] = reports;
  if (cfg.lp_trials > 0) {
    const int lp_band = std::min(sigma.band(), model.is_su2() ? 8 : 6);
    Json lp = Json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "p,trial,ratio\n";
    for (double p : {1.5, 3.0}) {
      const LpRatioStats st = empirical_lp_ratio(sigma, p, cfg.lp_trials, lp_band, cfg.seed);
      for (std::size_t t = 0; t < st.ratios.size(); ++t) csv << p << ',' << t << ',' << st.ratios[t] << '\n';
      Json ratios = Json::array();
      for (double x : st.ratios) ratios.push_back(number(x));
      lp.push_back({{"p", p}, {"trials", st.trials}, {"band", lp_band}, {"min", number(st.min)},
                    {"median", number(st.median)}, {"max", number(st.max)}, {"ratios", ratios}});
    }
    out.results["lp_ratios"] = lp;
    out.csv.emplace_back("lp_ratios", csv.str());
  }
  return out;
}

CommandResult cmd_invert(const RunConfig& cfg) {
  if (GroupModel::parse(cfg.group) != GroupModel::su2()) throw ConfigError("invert is available on su2 only");
  const std::vector<double> coeffs = field_coefficients(cfg.field);
  const Complex c = parse_complex(cfg.c);
  const int range = cfg.range ? *cfg.range : 40;
  VectorFieldSpec X(coeffs, 2);
  double nx = 0.0;
  for (double x : coeffs) nx += x * x;
  nx = std::sqrt(nx);

  // Every label up to the one whose spectrum reaches |c| is examined, so
  // exceptional values are caught regardless of the requested band.
  const int reach = static_cast<int>(std::ceil(2.0 * std::abs(c) / nx)) + 2;
  const double dist = spectral_distance(X, c, reach);
  if (dist < kExceptionalMargin) {
    std::ostringstream os;
    os << "c = " << complex_text(c) << " is exceptional for X = " << cfg.field
       << ": sigma_X + c is singular (i c must avoid (|X|/2) Z = " << 0.5 * nx << " Z)";
    throw ExceptionalParameterError(os.str());
  }

  CommandResult out;
  Json ex = Json::array();
  for (Complex z : exceptional_set(X, cfg.bound)) ex.push_back(complex_json(z));
  out.results["exceptional_set"] = {{"bound", cfg.bound}, {"points", ex}};
  out.results["spectral_distance"] = number(dist);
  out.results["tau"] = Json::array({complex_json(X.tau()[0]), complex_json(X.tau()[1])});

  const MultiplierReport s00 = verify_s00(X, c, range);
  out.results["s00"] = to_json(s00);
  out.csv.emplace_back("conditions_s00", conditions_csv(s00));
  out.pass = s00.pass;

  if (cfg.recursion_check) {
    const int band = cfg.band ? *cfg.band : 12;
    Json res = Json::array();
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
      const RecursionResidual r = recursion_residual(X, c, j, band);
      res.push_back({{"j", j}, {"diagonal", number(r.diagonal)}, {"off_diagonal", number(r.off_diagonal)}});
      worst = std::max(worst, r.max());
    }
    const bool ok = worst < 1e-9;
    out.results["recursion"] = {{"band", band}, {"residuals", res}, {"max", number(worst)}, {"tolerance", 1e-9},
                                {"pass", ok}};
    out.pass = out.pass && ok;
  }
  return out;
}

CommandResult cmd_probe(const RunConfig& cfg) {
  if (GroupModel::parse(cfg.group) != GroupModel::su2()) throw ConfigError("probe is available on su2 only");
  const std::vector<double> ladder = parse_ladder(cfg.ladder);
  const VanishingFactor q = parse_vanishing_factor(cfg.q);
  const std::string symbol = cfg.symbol.empty() ? "riesz:D3" : cfg.symbol;
  auto diag = diagonal_builder(symbol);

  if (cfg.band) {
    const int b = *cfg.band;
    const double r_min = probe_r_min(b);
    for (double r : ladder)
      if (r < r_min) {
        std::ostringstream os;
        os.precision(6);
        os << "ladder point r = " << r << " is under-resolved at band " << b << "; ";
        if (r_min < 1.0)
          os << "smallest usable r is " << r_min;
        else
          os << "no r < 1 is usable";
        int need = std::max(b, 3);
        while (probe_r_min(need) > r) need *= 2;
        int lo = need / 2;
        while (need - lo > 1) {
          const int mid = (lo + need) / 2;
          (probe_r_min(mid) > r ? lo : need) = mid;
        }
        os << " (r = " << r << " needs band >= " << need << ")";
        throw ResolutionError(os.str());
      }
  }

  CommandResult out;
  std::vector<LadderReport> ladders = {mollifier_constant_slope(ladder), mollifier_l2_slope(ladder),
                                       psi_l2_slope(ladder), negative_sobolev_decay(q, cfg.s, ladder)};
  CzProbeReport cz;
  if (diag) {
    cz = cz_probe(diag, ladder);
  } else {
    if (!cfg.band) throw ResolutionError("symbol '" + symbol + "' has no diagonal form; pass --band and a coarser --ladder");
    cz = cz_probe(build_symbol(GroupModel::su2(), symbol, *cfg.band), ladder);
  }
  ladders.push_back(cz.ladder);

  Json table = Json::array();
  for (const auto& l : ladders) {
    table.push_back(to_json(l));
    out.csv.emplace_back("ladder_" + l.name, ladder_csv(l));
    out.pass = out.pass && l.pass;
  }
  out.results["ladders"] = table;
  out.results["cz"] = {{"symbol", symbol}, {"m", cz.m}, {"epsilon", cz.epsilon}};
  return out;
}

CommandResult cmd_fourier_selftest(const RunConfig& cfg) {
  std::vector<std::pair<GroupModel, int>> cases;
  if (cfg.group.empty() || cfg.group == "all") {
    cases = {{GroupModel::su2(), 8}, {GroupModel::torus(3), 16}};
  } else {
    const GroupModel m = GroupModel::parse(cfg.group);
    cases = {{m, m.is_su2() ? 8 : 16}};
  }
  if (cfg.band)
    for (auto& c : cases) c.second = *cfg.band;

  CommandResult out;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "group,band,roundtrip_rel,plancherel_rel,pass\n";
  csv.precision(6);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [model, band] = cases[i];
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> n(0.0, 1.0);
    MatrixSymbol c(model, band);
    for (auto& v : c.data()) v = Complex(n(rng), n(rng));
    const auto grid = build_grid(model, band);
    const GroupFunction f = fourier_inverse(c, grid);
    const MatrixSymbol back = fourier_forward(f, band);
    const double norm = plancherel_norm(c);
    const double roundtrip = plancherel_norm(back - c) / norm;
    const double planch = std::abs(l2_norm(f) - norm) / norm;
    const bool ok = roundtrip < 1e-9 && planch < 1e-9;
    rows.push_back({{"group", model.name()}, {"band", band}, {"roundtrip_rel", number(roundtrip)},
                    {"plancherel_rel", number(planch)}, {"tolerance", 1e-9}, {"pass", ok}});
    csv << model.name() << ',' << band << ',' << roundtrip << ',' << planch << ',' << (ok ? 1 : 0) << '\n';
    out.pass = out.pass && ok;
  }
  out.results["cases"] = rows;
  out.csv.emplace_back("selftest", csv.str());
  return out;
}

}  // namespace lpmult::cli
