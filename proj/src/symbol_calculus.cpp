#include "lpmult/symbol_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "lpmult/errors.hpp"

namespace lpmult {

int DifferenceWord::band_cost() const {
  int c = 0;
  for (const auto& f : factors) c += label_band(f.xi0);
  return c;
}

std::vector<DifferenceFactor> generators(const GroupModel& model) {
  std::vector<DifferenceFactor> out;
  if (model.is_su2()) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.push_back({IrrepLabel::su2(2), i, j});
    return out;
  }
  const int n = model.torus_dim();
  for (int j = 0; j < n; ++j)
    for (int sign : {1, -1}) {
      std::vector<int> k(static_cast<std::size_t>(n), 0);
      k[static_cast<std::size_t>(j)] = sign;
      out.push_back({IrrepLabel::torus(std::move(k)), 0, 0});
    }
  return out;
}

int generator_band(const GroupModel& model) { return model.is_su2() ? 2 : 1; }

CouplingTable::CouplingTable(int s, int max_band) : s_(s), max_band_(max_band) {
  if (s < 1 || max_band < 0) throw ResolutionError("invalid coupling table request");
  const int S = s + 1;
  tables_.resize(static_cast<std::size_t>(max_band + 1) * S * S * S);
  for (int L = 0; L <= max_band; ++L)
    for (int e = 0; e < S; ++e)
      for (int ij = 0; ij < S * S; ++ij)
        tables_[((static_cast<std::size_t>(L) * S + e) * S * S) + ij] = Eigen::MatrixXd::Zero(L + 1, L + 1);

  // Polynomial degree in cos(theta) of the integrand is at most max_band + s.
  const int nodes = max_band + s + 2;
  std::vector<double> x, w;
  gauss_legendre(nodes, x, w);
  for (int k = 0; k < nodes; ++k) {
    const auto d = small_d_ladder(max_band + s, std::acos(x[static_cast<std::size_t>(k)]));
    const Eigen::MatrixXd& ds = d[static_cast<std::size_t>(s)];
    for (int L = 0; L <= max_band; ++L) {
      const Eigen::MatrixXd& dL = d[static_cast<std::size_t>(L)];
      for (int e = 0; e < S; ++e) {
        const int eta = L - s + 2 * e;
        if (eta < 0) continue;
        const Eigen::MatrixXd& de = d[static_cast<std::size_t>(eta)];
        for (int i = 0; i < S; ++i)
          for (int j = 0; j < S; ++j) {
            const double g = 0.5 * w[static_cast<std::size_t>(k)] * ds(i, j);
            if (g == 0.0) continue;
            const int mi2 = -s + 2 * i, mj2 = -s + 2 * j;
            Eigen::MatrixXd& T = tables_[((static_cast<std::size_t>(L) * S + e) * S + i) * S + j];
            for (int r = 0; r <= L; ++r) {
              const int d2 = (-L + 2 * r) - mj2;
              if (std::abs(d2) > eta) continue;
              const int dr = (d2 + eta) / 2;
              for (int c = 0; c <= L; ++c) {
                const int c2 = (-L + 2 * c) - mi2;
                if (std::abs(c2) > eta) continue;
                T(r, c) += g * de((c2 + eta) / 2, dr) * dL(c, r);
              }
            }
          }
      }
    }
  }
}

const Eigen::MatrixXd& CouplingTable::theta(int L, int e, int i, int j) const {
  const int S = s_ + 1;
  return tables_[((static_cast<std::size_t>(L) * S + e) * S + i) * S + j];
}

MatrixSymbol CouplingTable::apply(int i, int j, const MatrixSymbol& sigma) const {
  const int s = s_;
  if (i < 0 || j < 0 || i > s || j > s) throw MathInputError("difference index out of range");
  const int out_band = std::min(sigma.band() - s, max_band_);
  if (out_band < 0)
    throw ResolutionError("symbol band " + std::to_string(sigma.band()) + " too small for a difference of band " +
                          std::to_string(s));
  MatrixSymbol out(sigma.model(), out_band);
  const int mi2 = -s + 2 * i, mj2 = -s + 2 * j;
  for (int L = 0; L <= out_band; ++L) {
    auto o = out.su2(L);
    for (int e = 0; e <= s; ++e) {
      const int eta = L - s + 2 * e;
      if (eta < 0) continue;
      const auto src = sigma.su2(eta);
      const Eigen::MatrixXd& T = theta(L, e, i, j);
      const double de = eta + 1.0;
      for (int r = 0; r <= L; ++r) {
        const int d2 = (-L + 2 * r) - mj2;
        if (std::abs(d2) > eta) continue;
        const int dr = (d2 + eta) / 2;
        for (int c = 0; c <= L; ++c) {
          const int c2 = (-L + 2 * c) - mi2;
          if (std::abs(c2) > eta) continue;
          o(r, c) += de * T(r, c) * src(dr, (c2 + eta) / 2);
        }
      }
    }
    if (i == j) o -= sigma.su2(L);
  }
  return out;
}

std::shared_ptr<const CouplingTable> coupling_table(int s, int band) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CouplingTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it != cache.end() && it->second->max_band() >= band) return it->second;
  const int rounded = ((std::max(band, 0) + 7) / 8) * 8;
  auto t = std::make_shared<const CouplingTable>(s, rounded);
  cache[s] = t;
  return t;
}

MatrixSymbol apply_difference(const DifferenceFactor& f, const MatrixSymbol& sigma) {
  const GroupModel& model = sigma.model();
  if (model.is_su2()) {
    if (f.xi0.is_torus()) throw MathInputError("torus difference applied to an SU(2) symbol");
    const int s = f.xi0.twice_spin;
    if (s == 0) return MatrixSymbol(model, sigma.band());  // trivial rep: q = 1 - 1
    return coupling_table(s, sigma.band() - s)->apply(f.i, f.j, sigma);
  }
  if (!f.xi0.is_torus() || static_cast<int>(f.xi0.freq.size()) != model.torus_dim())
    throw MathInputError("difference factor does not match the torus dimension");
  const int b = label_band(f.xi0);
  const int out_band = sigma.band() - b;
  if (out_band < 0) throw ResolutionError("symbol band too small for the difference factor");
  MatrixSymbol out(model, out_band);
  const int n = model.torus_dim();
  std::vector<int> k(static_cast<std::size_t>(n)), km(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < out.label_count(); ++idx) {
    out.torus_freq(idx, k.data());
    for (int j = 0; j < n; ++j)
      km[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j)] - f.xi0.freq[static_cast<std::size_t>(j)];
    out.data()[idx] = sigma.at(km.data()) - sigma.at(k.data());
  }
  return out;
}

MatrixSymbol apply_difference(const DifferenceWord& word, const MatrixSymbol& sigma) {
  MatrixSymbol cur = sigma;
  for (const auto& f : word.factors) cur = apply_difference(f, cur);
  return cur;
}

MatrixSymbol apply_difference_on_grid(const DifferenceWord& word, const MatrixSymbol& sigma,
                                      std::shared_ptr<const GroupGrid> grid) {
  if (grid->kind() == GridKind::su2_class) throw ResolutionError("class grids cannot carry general differences");
  if (grid->band() < sigma.band())
    throw ResolutionError("grid band " + std::to_string(grid->band()) + " too small for symbol band " +
                          std::to_string(sigma.band()));
  const int out_band = sigma.band() - word.band_cost();
  if (out_band < 0) throw ResolutionError("symbol band too small for the difference word");
  GroupFunction k = fourier_inverse(sigma, grid);
  for (std::size_t n = 0; n < grid->size(); ++n) {
    Complex q = 1.0;
    if (grid->model().is_su2()) {
      const Su2Element g = grid->element(n);
      for (const auto& f : word.factors) {
        const auto lad = wigner_ladder(f.xi0.twice_spin, g);
        q *= lad.back()(f.i, f.j) - (f.i == f.j ? 1.0 : 0.0);
      }
    } else {
      const auto x = grid->torus_point(n);
      for (const auto& f : word.factors) {
        double ph = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) ph += f.xi0.freq[j] * x[j];
        q *= std::polar(1.0, 2.0 * kPi * ph) - 1.0;
      }
    }
    k.samples[n] *= q;
  }
  return fourier_forward(k, out_band);
}

MatrixSymbol laplace_difference(const MatrixSymbol& sigma) {
  const GroupModel& model = sigma.model();
  if (model.is_torus()) return laplace_difference_by_generators(sigma);
  if (sigma.band() < 2) throw ResolutionError("symbol band too small for A (needs 2)");
  auto grid = build_grid(model, std::max(1, sigma.band()));
  GroupFunction k = fourier_inverse(sigma, grid);
  for (std::size_t n = 0; n < grid->size(); ++n) k.samples[n] *= su2_rho_squared(grid->element(n));
  return fourier_forward(k, sigma.band() - 2);
}

MatrixSymbol laplace_difference_by_generators(const MatrixSymbol& sigma) {
  const GroupModel& model = sigma.model();
  const int b = generator_band(model);
  MatrixSymbol out(model, sigma.band() - b);
  for (const auto& g : generators(model))
    if (g.i == g.j) out -= apply_difference(g, sigma);
  return out;
}

MatrixSymbol symbol_product(const MatrixSymbol& sigma, const MatrixSymbol& tau) {
  if (sigma.model() != tau.model()) throw MathInputError("symbol models differ");
  const int b = std::min(sigma.band(), tau.band());
  MatrixSymbol out(sigma.model(), b);
  const MatrixSymbol s = sigma.band() == b ? sigma : sigma.truncated(b);
  const MatrixSymbol t = tau.band() == b ? tau : tau.truncated(b);
  if (out.model().is_torus()) {
    for (std::size_t i = 0; i < out.label_count(); ++i) out.data()[i] = s.data()[i] * t.data()[i];
    return out;
  }
  for (std::size_t i = 0; i < out.label_count(); ++i) out.block(i).noalias() = s.block(i) * t.block(i);
  return out;
}

GroupFunction quantize_apply(const MatrixSymbol& sigma, const GroupFunction& f) {
  if (f.declared_band && *f.declared_band > f.grid->band())
    throw ResolutionError("function band exceeds grid band");
  const int b = std::min(sigma.band(), f.grid->band());
  const MatrixSymbol fh = fourier_forward(f, b);
  return fourier_inverse(symbol_product(sigma, fh), f.grid);
}

GroupFunction symbol_to_kernel(const MatrixSymbol& sigma, std::shared_ptr<const GroupGrid> grid) {
  return fourier_inverse(sigma, std::move(grid));
}

Complex evaluate_su2(const MatrixSymbol& c, const Su2Element& g) {
  const auto lad = wigner_ladder(c.band(), g);
  Complex s = 0.0;
  for (int L = 0; L <= c.band(); ++L)
    s += static_cast<double>(L + 1) * (lad[static_cast<std::size_t>(L)] * c.su2(L)).trace();
  return s;
}

Complex evaluate_torus(const MatrixSymbol& c, const std::vector<double>& x) {
  std::vector<int> k(x.size());
  Complex s = 0.0;
  for (std::size_t i = 0; i < c.label_count(); ++i) {
    c.torus_freq(i, k.data());
    double ph = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) ph += k[j] * x[j];
    s += c.data()[i] * std::polar(1.0, 2.0 * kPi * ph);
  }
  return s;
}

MatrixSymbol vector_field_symbol(const GroupModel& model, const std::vector<double>& X, int band) {
  const double h = 1e-4;
  if (model.is_su2()) {
    if (X.size() != 3) throw MathInputError("SU(2) vector fields need 3 frame coefficients");
    auto lad = [&](double t) { return wigner_ladder(band, Su2Element::exp_frame(X.data(), t)); };
    const auto p1 = lad(h), m1 = lad(-h), p2 = lad(0.5 * h), m2 = lad(-0.5 * h);
    MatrixSymbol out(model, band);
    for (int L = 0; L <= band; ++L) {
      const auto u = static_cast<std::size_t>(L);
      const CMatrix coarse = (p1[u] - m1[u]) / (2.0 * h);
      const CMatrix fine = (p2[u] - m2[u]) / h;
      out.su2(L) = (4.0 * fine - coarse) / 3.0;
    }
    return out;
  }
  if (static_cast<int>(X.size()) != model.torus_dim()) throw MathInputError("vector field dimension mismatch");
  return MatrixSymbol::scalar(model, band, [&](const IrrepLabel& l) {
    double kx = 0.0;
    for (std::size_t j = 0; j < X.size(); ++j) kx += l.freq[j] * X[j];
    auto e = [&](double t) { return std::polar(1.0, 2.0 * kPi * kx * t); };
    const Complex coarse = (e(h) - e(-h)) / (2.0 * h), fine = (e(0.5 * h) - e(-0.5 * h)) / h;
    return (4.0 * fine - coarse) / 3.0;
  });
}

MatrixSymbol vector_field_symbol_exact(const GroupModel& model, const std::vector<double>& X, int band) {
  if (model.is_su2()) {
    if (X.size() != 3) throw MathInputError("SU(2) vector fields need 3 frame coefficients");
    MatrixSymbol out(model, band);
    for (int L = 0; L <= band; ++L) {
      auto b = out.su2(L);
      for (int a = 0; a <= L; ++a) {
        const double m = a - 0.5 * L, l = 0.5 * L;
        b(a, a) = Complex(0.0, -m * X[2]);
        if (a < L) {
          const double c = 0.5 * std::sqrt((l - m) * (l + m + 1.0));
          b(a, a + 1) = c * Complex(X[1], X[0]);
          b(a + 1, a) = c * Complex(-X[1], X[0]);
        }
      }
    }
    return out;
  }
  if (static_cast<int>(X.size()) != model.torus_dim()) throw MathInputError("vector field dimension mismatch");
  return MatrixSymbol::scalar(model, band, [&](const IrrepLabel& l) {
    double kx = 0.0;
    for (std::size_t j = 0; j < X.size(); ++j) kx += l.freq[j] * X[j];
    return Complex(0.0, 2.0 * kPi * kx);
  });
}

double su2_rho_squared(const Su2Element& g) {
  const double tr = g.trace();
  return 4.0 - tr * tr;
}

double torus_rho_squared(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) {
    const double sv = std::sin(kPi * v);
    s += 4.0 * sv * sv;
  }
  return s;
}

double DistanceFunction::at(const Su2Element& g) const { return su2_rho_squared(g); }
double DistanceFunction::at(const std::vector<double>& x) const { return torus_rho_squared(x); }

DistanceFunction rho_squared(const GroupModel& model, const std::shared_ptr<const GroupGrid>& grid) {
  DistanceFunction d;
  d.model = model;
  if (!grid) return d;
  d.node_values.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i)
    d.node_values[i] = model.is_su2() ? su2_rho_squared(grid->element(i)) : torus_rho_squared(grid->torus_point(i));
  return d;
}

namespace {

// Right-hand side of the iterated Leibniz rule: D_w(st) expanded into products
// of differences of s and t. The kernel of st is k_t * k_s, so the cross term
// of D_ij(st) is sum_k (D_kj s)(D_ik t).
MatrixSymbol leibniz_rhs(const std::vector<DifferenceFactor>& word, std::size_t pos, const MatrixSymbol& s,
                         const MatrixSymbol& t) {
  if (pos == word.size()) return symbol_product(s, t);
  const DifferenceFactor& f = word[pos];
  const int d = irrep_dimension(f.xi0);
  std::vector<MatrixSymbol> terms;
  terms.push_back(leibniz_rhs(word, pos + 1, apply_difference(f, s), t));
  terms.push_back(leibniz_rhs(word, pos + 1, s, apply_difference(f, t)));
  for (int k = 0; k < d; ++k)
    terms.push_back(leibniz_rhs(word, pos + 1, apply_difference({f.xi0, k, f.j}, s),
                                apply_difference({f.xi0, f.i, k}, t)));
  int b = terms.front().band();
  for (const auto& m : terms) b = std::min(b, m.band());
  MatrixSymbol sum(s.model(), b);
  for (const auto& m : terms) sum += m.truncated(b);
  return sum;
}

int padding_for(const GroupModel& model, int extra) { return extra + 2 * generator_band(model); }

}  // namespace

double leibniz_residual(const DifferenceWord& word, const MatrixSymbol& sigma, const MatrixSymbol& tau) {
  if (sigma.model() != tau.model()) throw MathInputError("symbol models differ");
  const int P = std::max(sigma.band(), tau.band()) + padding_for(sigma.model(), word.band_cost());
  const MatrixSymbol s = sigma.padded(P), t = tau.padded(P);
  const MatrixSymbol lhs = apply_difference(word, symbol_product(s, t));
  const MatrixSymbol rhs = leibniz_rhs(word.factors, 0, s, t);
  const double r = lhs.max_hs_diff(rhs, std::min(lhs.band(), rhs.band()));
  return std::max(r, laplace_rule_residual(sigma, tau));
}

double laplace_rule_residual(const MatrixSymbol& sigma, const MatrixSymbol& tau) {
  if (sigma.model() != tau.model()) throw MathInputError("symbol models differ");
  const GroupModel& model = sigma.model();
  const int P = std::max(sigma.band(), tau.band()) + padding_for(model, 0);
  const MatrixSymbol s = sigma.padded(P), t = tau.padded(P);
  const MatrixSymbol lhs = laplace_difference(symbol_product(s, t));
  MatrixSymbol rhs = symbol_product(laplace_difference(s), t) + symbol_product(s, laplace_difference(t));
  const auto gens = generators(model);
  for (const auto& g : gens) {
    // partner D_ji (same representation); on the torus the partner of a
    // character's difference is the same difference.
    DifferenceFactor partner{g.xi0, g.j, g.i};
    rhs -= symbol_product(apply_difference(g, s), apply_difference(partner, t)).truncated(rhs.band());
  }
  return lhs.max_hs_diff(rhs, std::min(lhs.band(), rhs.band()));
}

}  // namespace lpmult
