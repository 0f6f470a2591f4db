#include "lpmult/cz_criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/symbol_calculus.hpp"

namespace lpmult {

namespace {

constexpr int kNodesAcross = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

double splice(double y) { return y <= 0.0 ? 0.0 : std::exp(-1.0 / y); }

double rho_of(const Su2Element& g) {
  const double tr = g.trace();
  if (tr <= 0.0) return kInf;
  return std::sqrt(std::max(0.0, su2_rho_squared(g)));
}

double rho_of(const std::vector<double>& x) { return std::sqrt(torus_rho_squared(x)); }

int group_dim(const GroupGrid& grid) { return grid.model().dimension(); }

// Spacing of the grid measured in rho near the identity.
double rho_spacing(const GroupGrid& grid) {
  switch (grid.kind()) {
    case GridKind::su2_class: return 2.0 * kPi / (static_cast<double>(grid.size()) + 1.0);
    case GridKind::torus_lattice: return 2.0 * kPi / grid.axis_points();
    case GridKind::su2_euler: return std::max(2.0 * kPi / grid.n_phi(), kPi / grid.n_theta());
  }
  return kInf;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Class grid resolving phi at scale r with spectral band `band`.
std::shared_ptr<const GroupGrid> class_grid_for(double r, int band) {
  const double R = std::cbrt(r);
  const int need = static_cast<int>(std::ceil(64.0 * 2.0 * kPi / R));
  return build_class_grid(band, std::max({2 * band + 2, need, 256}));
}

double l2_of_coefficients(const std::vector<Complex>& c, double s) {
  double acc = 0.0;
  for (int L = 0; L < static_cast<int>(c.size()); ++L) {
    const double d = L + 1.0;
    const double w = s == 0.0 ? 1.0 : std::pow(su2_bracket(L), -2.0 * s);
    acc += w * d * d * std::norm(c[static_cast<std::size_t>(L)]);
  }
  return std::sqrt(acc);
}

double diagonal_l2(const DiagonalSymbol& s, double sob = 0.0) {
  double acc = 0.0;
  for (int L = 0; L <= s.band(); ++L) {
    double hs = 0.0;
    for (Complex v : s.diagonal(L)) hs += std::norm(v);
    const double w = sob == 0.0 ? 1.0 : std::pow(su2_bracket(L), -2.0 * sob);
    acc += w * (L + 1.0) * hs;
  }
  return std::sqrt(acc);
}

void finish_ladder(LadderReport& rep) {
  const bool all_zero = std::all_of(rep.values.begin(), rep.values.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    rep.pass = true;
    return;
  }
  rep.fit = fit_loglog(rep.rs, rep.values);
  rep.pass = std::abs(rep.fit->slope - rep.target) <= rep.tolerance && rep.fit->r2 >= rep.min_r2;
}

void check_ladder(const std::vector<double>& ladder) {
  if (ladder.size() < 4) throw ResolutionError("ladder needs at least 4 points");
  for (double r : ladder)
    if (!(r > 0.0 && r < 1.0)) throw MathInputError("ladder values must lie in (0, 1)");
}

}  // namespace

double bump(double x) {
  x = std::abs(x);
  if (x <= 0.5) return 1.0;
  if (x >= 1.0) return 0.0;
  const double y = 2.0 * (1.0 - x);
  const double a = splice(y), b = splice(1.0 - y);
  return a / (a + b);
}

double mollifier_rho(const GroupGrid& grid, std::size_t node) {
  switch (grid.kind()) {
    case GridKind::su2_class: {
      const double u = 0.5 * grid.class_angle(node);
      return u >= 0.5 * kPi ? kInf : 2.0 * std::sin(u);
    }
    case GridKind::su2_euler: return rho_of(grid.element(node));
    case GridKind::torus_lattice: return rho_of(grid.torus_point(node));
  }
  return kInf;
}

double smallest_resolved_r(const GroupGrid& grid) {
  return std::pow(kNodesAcross * rho_spacing(grid), group_dim(grid));
}

Mollifier build_phi_r(std::shared_ptr<const GroupGrid> grid, double r) {
  if (!(r > 0.0)) throw MathInputError("mollifier scale must be positive");
  const int n = group_dim(*grid);
  const double R = std::pow(r, 1.0 / n);
  const double rmin = smallest_resolved_r(*grid);
  if (r < rmin)
    throw ResolutionError("mollifier scale r = " + format_double(r) + " is under-resolved on this grid; smallest usable r = " +
                          format_double(rmin));
  if (R >= 1.0) throw MathInputError("mollifier support radius must stay below 1");
  Mollifier m;
  m.r = r;
  m.support_radius = R;
  m.phi.grid = grid;
  m.phi.samples.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) m.phi.samples[i] = bump(mollifier_rho(*grid, i) / R);
  const double mass = integrate(m.phi).real();
  if (!(mass > 0.0)) throw ResolutionError("mollifier support contains no grid mass");
  m.c_r = 1.0 / mass;
  for (auto& v : m.phi.samples) v *= m.c_r;
  return m;
}

GroupFunction build_psi_r(std::shared_ptr<const GroupGrid> grid, double r) {
  GroupFunction a = build_phi_r(grid, r).phi;
  const GroupFunction b = build_phi_r(grid, 0.5 * r).phi;
  for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] -= b.samples[i];
  return a;
}

double mollifier_tail(std::shared_ptr<const GroupGrid> grid, double r, double t) {
  if (!(t > 0.0)) throw MathInputError("tail threshold must be positive");
  const Mollifier m = build_phi_r(grid, r);
  const double cut = std::pow(t, 1.0 / group_dim(*grid));
  double acc = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i)
    if (mollifier_rho(*grid, i) >= cut) acc += grid->weights()[i] * m.phi.samples[i].real();
  return acc;
}

double l1_modulus(std::shared_ptr<const GroupGrid> grid, double r, const Su2Element& h) {
  if (grid->kind() != GridKind::su2_euler) throw ResolutionError("l1_modulus on SU(2) needs an Euler grid");
  const Mollifier m = build_phi_r(grid, r);
  const Su2Element hinv = h.inverse();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double shifted = m.c_r * bump(rho_of(grid->element(i) * hinv) / m.support_radius);
    acc += grid->weights()[i] * std::abs(shifted - m.phi.samples[i].real());
  }
  return acc;
}

double l1_modulus(std::shared_ptr<const GroupGrid> grid, double r, const std::vector<double>& h) {
  if (grid->kind() != GridKind::torus_lattice) throw ResolutionError("l1_modulus on the torus needs a lattice grid");
  if (static_cast<int>(h.size()) != grid->model().torus_dim()) throw MathInputError("shift dimension mismatch");
  const Mollifier m = build_phi_r(grid, r);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    std::vector<double> x = grid->torus_point(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= h[j];
    const double shifted = m.c_r * bump(rho_of(x) / m.support_radius);
    acc += grid->weights()[i] * std::abs(shifted - m.phi.samples[i].real());
  }
  return acc;
}

SlopeFit fit_loglog(const std::vector<double>& rs, const std::vector<double>& values) {
  if (rs.size() != values.size() || rs.size() < 2) throw MathInputError("slope fit needs matching ladders of length >= 2");
  const std::size_t n = rs.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rs[i] > 0.0) || !(values[i] > 0.0)) throw MathInputError("log-log fit needs positive values");
    x[i] = std::log(rs[i]);
    y[i] = std::log(values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw MathInputError("ladder points must be distinct");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::vector<double> default_ladder() {
  std::vector<double> out;
  for (int k = 4; k <= 9; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

namespace {

LadderReport mollifier_ladder(const std::string& name, const std::vector<double>& ladder, double target, double tol,
                              const std::function<double(double)>& value) {
  check_ladder(ladder);
  LadderReport rep;
  rep.name = name;
  rep.rs = ladder;
  rep.target = target;
  rep.tolerance = tol;
  rep.min_r2 = 0.98;
  for (double r : ladder) rep.values.push_back(value(r));
  finish_ladder(rep);
  return rep;
}

}  // namespace

LadderReport mollifier_constant_slope(const std::vector<double>& ladder, double tolerance) {
  return mollifier_ladder("c_r", ladder, -1.0, tolerance,
                          [](double r) { return build_phi_r(class_grid_for(r, 1), r).c_r; });
}

LadderReport mollifier_l2_slope(const std::vector<double>& ladder, double tolerance) {
  return mollifier_ladder("phi_r L2", ladder, -0.5, tolerance,
                          [](double r) { return l2_norm(build_phi_r(class_grid_for(r, 1), r).phi); });
}

LadderReport psi_l2_slope(const std::vector<double>& ladder, double tolerance) {
  return mollifier_ladder("psi_r L2", ladder, -0.5, tolerance,
                          [](double r) { return l2_norm(build_psi_r(class_grid_for(0.5 * r, 1), r)); });
}

VanishingFactor parse_vanishing_factor(const std::string& name) {
  if (name == "one" || name == "1") return VanishingFactor::one;
  if (name == "rho2") return VanishingFactor::rho_squared;
  if (name == "xi12") return VanishingFactor::xi12;
  throw MathInputError("unknown factor '" + name + "' (expected one, rho2, xi12)");
}

std::string to_string(VanishingFactor q) {
  switch (q) {
    case VanishingFactor::one: return "one";
    case VanishingFactor::rho_squared: return "rho2";
    case VanishingFactor::xi12: return "xi12";
  }
  return "?";
}

int vanishing_order(VanishingFactor q) {
  switch (q) {
    case VanishingFactor::one: return 0;
    case VanishingFactor::rho_squared: return 2;
    case VanishingFactor::xi12: return 1;
  }
  return 0;
}

int probe_band(double r) { return static_cast<int>(std::ceil(200.0 / std::cbrt(r))); }

std::vector<double> psi_hat(double r, int band) {
  auto grid = class_grid_for(0.5 * r, band);
  const auto c = central_coefficients(build_psi_r(grid, r), band);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

LadderReport negative_sobolev_decay(VanishingFactor q, double s, const std::vector<double>& ladder, double tolerance) {
  const int n = 3;
  if (!(s >= 0.0 && s <= 1.0 + 0.5 * n)) throw MathInputError("s must lie in [0, 1 + n/2]");
  check_ladder(ladder);
  LadderReport rep;
  rep.name = "|" + to_string(q) + " psi_r|_{H^-" + format_double(s) + "}";
  rep.rs = ladder;
  rep.target = (vanishing_order(q) + s) / n - 0.5;
  rep.tolerance = tolerance;
  rep.min_r2 = 0.98;
  for (double r : ladder) {
    const int J = probe_band(0.5 * r);
    auto grid = class_grid_for(0.5 * r, J + 1);
    GroupFunction psi = build_psi_r(grid, r);
    double value = 0.0;
    switch (q) {
      case VanishingFactor::one: value = l2_of_coefficients(central_coefficients(psi, J), s); break;
      case VanishingFactor::rho_squared: {
        for (std::size_t i = 0; i < grid->size(); ++i) {
          const double sn = std::sin(0.5 * grid->class_angle(i));
          psi.samples[i] *= 4.0 * sn * sn;
        }
        value = l2_of_coefficients(central_coefficients(psi, J), s);
        break;
      }
      case VanishingFactor::xi12: {
        // |P_L(b G)|^2 = 2 (|P_L(a G)|^2 - |P_L(Re(a) G)|^2) by conjugation symmetry.
        const auto c = central_coefficients(psi, J + 1);
        const DiagonalSymbol G = DiagonalSymbol::from_function(J + 1, [&](int L, int) { return c[static_cast<std::size_t>(L)]; });
        const DiagonalSymbol aG = multiply_by_fundamental(G, 1);
        const DiagonalSymbol x0G = multiply_by_fundamental(G, 0);
        double acc = 0.0;
        for (int L = 0; L <= J; ++L) {
          double pa = 0.0, p0 = 0.0;
          for (Complex v : aG.diagonal(L)) pa += std::norm(v);
          for (Complex v : x0G.diagonal(L)) p0 += 0.25 * std::norm(v);
          const double w = s == 0.0 ? 1.0 : std::pow(su2_bracket(L), -2.0 * s);
          acc += w * (L + 1.0) * 2.0 * std::max(0.0, pa - p0);
        }
        value = std::sqrt(acc);
        break;
      }
    }
    rep.values.push_back(value);
  }
  finish_ladder(rep);
  return rep;
}

DiagonalSymbol DiagonalSymbol::from_function(int band, const std::function<Complex(int, int)>& f) {
  if (band < 0) throw ResolutionError("band must be nonnegative");
  DiagonalSymbol s;
  s.diag_.resize(static_cast<std::size_t>(band) + 1);
  for (int L = 0; L <= band; ++L) {
    auto& d = s.diag_[static_cast<std::size_t>(L)];
    d.resize(static_cast<std::size_t>(L) + 1);
    for (int a = 0; a <= L; ++a) d[static_cast<std::size_t>(a)] = f(L, a);
  }
  return s;
}

DiagonalSymbol DiagonalSymbol::from_matrix_symbol(const MatrixSymbol& sigma, double tol) {
  if (!sigma.model().is_su2()) throw MathInputError("diagonal symbols live on SU(2)");
  for (int L = 0; L <= sigma.band(); ++L) {
    CMatrix b = sigma.su2(L);
    const double total = b.norm();
    b.diagonal().setZero();
    if (b.norm() > tol * std::max(1.0, total)) throw MathInputError("symbol is not diagonal at twice_spin " + std::to_string(L));
  }
  return from_function(sigma.band(), [&](int L, int a) { return sigma.su2(L)(a, a); });
}

MatrixSymbol DiagonalSymbol::to_matrix_symbol(int band) const {
  if (band > this->band()) throw ResolutionError("requested band exceeds the diagonal symbol");
  MatrixSymbol out(GroupModel::su2(), band);
  for (int L = 0; L <= band; ++L)
    for (int a = 0; a <= L; ++a) out.su2(L)(a, a) = diag_[static_cast<std::size_t>(L)][static_cast<std::size_t>(a)];
  return out;
}

DiagonalSymbol DiagonalSymbol::truncated(int band) const {
  if (band > this->band()) throw ResolutionError("requested band exceeds the diagonal symbol");
  DiagonalSymbol s;
  s.diag_.assign(diag_.begin(), diag_.begin() + band + 1);
  return s;
}

DiagonalSymbol multiply_by_fundamental(const DiagonalSymbol& s, int twice_mu) {
  if (twice_mu != 0 && twice_mu != 1 && twice_mu != -1) throw MathInputError("twice_mu must be -1, 0 or 1");
  if (s.band() < 1) throw ResolutionError("multiplication by the fundamental character needs band >= 1");
  const int out_band = s.band() - 1;
  return DiagonalSymbol::from_function(out_band, [&](int J, int A) {
    const int M2 = 2 * A - J;
    Complex acc = 0.0;
    for (int L : {J - 1, J + 1}) {
      if (L < 0) continue;
      const double l = 0.5 * L;
      for (int mu2 : {1, -1}) {
        if (twice_mu != 0 && mu2 != twice_mu) continue;
        const int m2 = M2 - mu2;
        if (m2 < -L || m2 > L) continue;
        const double m = 0.5 * m2;
        double cg2;
        if (L == J - 1)
          cg2 = mu2 > 0 ? (l + m + 1.0) / (2.0 * l + 1.0) : (l - m + 1.0) / (2.0 * l + 1.0);
        else
          cg2 = mu2 > 0 ? (l - m) / (2.0 * l + 1.0) : (l + m) / (2.0 * l + 1.0);
        acc += (L + 1.0) * cg2 * s.diagonal(L)[static_cast<std::size_t>((m2 + L) / 2)];
      }
    }
    return acc / (J + 1.0);
  });
}

DiagonalSymbol laplace_difference_diagonal(const DiagonalSymbol& s) {
  if (s.band() < 2) throw ResolutionError("A needs band >= 2");
  DiagonalSymbol chi2 = multiply_by_fundamental(multiply_by_fundamental(s));
  for (int L = 0; L <= chi2.band(); ++L) {
    auto& d = chi2.diagonal(L);
    const auto& o = s.diagonal(L);
    for (std::size_t a = 0; a < d.size(); ++a) d[a] = 4.0 * o[a] - d[a];
  }
  return chi2;
}

DiagonalSymbol diagonal_identity(int band) {
  return DiagonalSymbol::from_function(band, [](int, int) { return Complex(1.0); });
}

DiagonalSymbol diagonal_riesz_d3(int band) {
  return DiagonalSymbol::from_function(band, [](int L, int a) {
    if (L == 0) return Complex(0.0);
    return Complex(0.0, -(a - 0.5 * L)) / su2_casimir(L);
  });
}

DiagonalSymbol diagonal_vf_inverse_d3(int band, Complex c, double scale) {
  return DiagonalSymbol::from_function(band, [&](int L, int a) {
    const Complex den = Complex(0.0, -(a - 0.5 * L) * scale) + c;
    if (std::abs(den) < 1e-8)
      throw ExceptionalParameterError("sigma_X + c is singular at twice_spin " + std::to_string(L));
    return 1.0 / den;
  });
}

namespace {

CzProbeReport cz_report_base(const std::vector<double>& ladder) {
  check_ladder(ladder);
  CzProbeReport rep;
  const GroupModel model = GroupModel::su2();
  const int n = model.dimension();
  rep.m = model.kappa() / 2;
  rep.epsilon = 4.0 * rep.m / n - 1.0;
  rep.ladder.name = "|A^m(sigma psi_r^)|_l2";
  rep.ladder.rs = ladder;
  rep.ladder.target = 2.0 * rep.m / n - 0.5;
  rep.ladder.tolerance = 0.1;
  rep.ladder.min_r2 = 0.95;
  return rep;
}

void cz_finish(CzProbeReport& rep) {
  LadderReport& l = rep.ladder;
  const bool all_zero = std::all_of(l.values.begin(), l.values.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    l.pass = true;
    return;
  }
  l.fit = fit_loglog(l.rs, l.values);
  l.pass = l.fit->slope >= l.target - l.tolerance && l.fit->r2 >= l.min_r2;
}

}  // namespace

CzProbeReport cz_probe(const std::function<DiagonalSymbol(int)>& symbol, const std::vector<double>& ladder) {
  CzProbeReport rep = cz_report_base(ladder);
  for (double r : ladder) {
    const int J = probe_band(0.5 * r);
    const int top = J + 2 * rep.m;
    const auto p = psi_hat(r, top);
    DiagonalSymbol s = symbol(top);
    if (s.band() < top) throw ResolutionError("diagonal symbol builder returned band below " + std::to_string(top));
    s = s.truncated(top);
    for (int L = 0; L <= top; ++L)
      for (auto& v : s.diagonal(L)) v *= p[static_cast<std::size_t>(L)];
    for (int k = 0; k < rep.m; ++k) s = laplace_difference_diagonal(s);
    rep.ladder.values.push_back(diagonal_l2(s));
  }
  cz_finish(rep);
  return rep;
}

CzProbeReport cz_probe(const MatrixSymbol& sigma, const std::vector<double>& ladder, int probe_band_override) {
  if (!sigma.model().is_su2()) throw MathInputError("cz_probe runs on SU(2)");
  CzProbeReport rep = cz_report_base(ladder);
  for (double r : ladder) {
    const int J = probe_band_override > 0 ? probe_band_override : probe_band(0.5 * r);
    const int top = J + 2 * rep.m;
    if (sigma.band() < top)
      throw ResolutionError("band overflow: probe at r = " + format_double(r) + " needs symbol band >= " +
                            std::to_string(top) + " (have " + std::to_string(sigma.band()) + ")");
    const auto p = psi_hat(r, top);
    MatrixSymbol s = sigma.truncated(top);
    for (int L = 0; L <= top; ++L) s.su2(L) *= p[static_cast<std::size_t>(L)];
    for (int k = 0; k < rep.m; ++k) s = laplace_difference_by_generators(s);
    rep.ladder.values.push_back(plancherel_norm(s));
  }
  cz_finish(rep);
  return rep;
}

double leibniz_bound_excess(const MatrixSymbol& sigma, const MatrixSymbol& tau) {
  const int gb = generator_band(sigma.model());
  const int band = std::min(sigma.band(), tau.band());
  const MatrixSymbol s = sigma.truncated(band), t = tau.truncated(band);
  const MatrixSymbol lhs = laplace_difference_by_generators(symbol_product(s, t));
  const MatrixSymbol As = laplace_difference_by_generators(s), At = laplace_difference_by_generators(t);
  std::vector<MatrixSymbol> ds, dt;
  const auto gens = generators(sigma.model());
  for (const auto& g : gens) {
    ds.push_back(apply_difference(g, s));
    dt.push_back(apply_difference(DifferenceFactor{g.xi0, g.j, g.i}, t));
  }
  double worst = -kInf;
  for (std::size_t idx = 0; idx < lhs.label_count(); ++idx) {
    if (lhs.band_at(idx) > band - gb) continue;
    double bound = op_norm(As.block(idx)) * t.block(idx).norm() + op_norm(s.block(idx)) * At.block(idx).norm();
    for (std::size_t g = 0; g < gens.size(); ++g) bound += op_norm(ds[g].block(idx)) * dt[g].block(idx).norm();
    worst = std::max(worst, lhs.block(idx).norm() - bound);
  }
  return worst;
}

}  // namespace lpmult
