#include "lpmult/harmonic_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpmult/errors.hpp"

namespace lpmult {

GroupModel GroupModel::torus(int n) {
  if (n < 1) throw MathInputError("torus dimension must be positive");
  return GroupModel(GroupKind::torus, n);
}

GroupModel GroupModel::su2() { return GroupModel(GroupKind::su2, 0); }

GroupModel GroupModel::parse(std::string_view text) {
  if (text == "su2" || text == "SU2" || text == "su(2)") return su2();
  std::string_view rest;
  if (text.rfind("torus-", 0) == 0) {
    rest = text.substr(6);
  } else if (text.rfind("torus", 0) == 0) {
    rest = text.substr(5);
  } else {
    throw ResolutionError("unknown group '" + std::string(text) + "' (expected su2 or torus-N)");
  }
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos)
    throw ResolutionError("malformed torus dimension in '" + std::string(text) + "'");
  return torus(std::stoi(std::string(rest)));
}

int GroupModel::kappa() const { return 2 * (dimension() / 4) + 2; }

std::string GroupModel::name() const {
  return is_su2() ? std::string("su2") : "torus-" + std::to_string(n_);
}

std::string GroupModel::delta0_description() const {
  if (is_su2()) return "adjoint representation (twice_spin 2), 9 coefficient differences";
  return std::to_string(2 * n_) + " characters exp(+-2 pi i x_j)";
}

IrrepLabel IrrepLabel::su2(int twice_spin) {
  if (twice_spin < 0) throw MathInputError("twice_spin must be nonnegative");
  IrrepLabel l;
  l.twice_spin = twice_spin;
  return l;
}

IrrepLabel IrrepLabel::torus(std::vector<int> k) {
  if (k.empty()) throw MathInputError("torus label needs at least one coordinate");
  IrrepLabel l;
  l.freq = std::move(k);
  return l;
}

std::string IrrepLabel::to_string() const {
  if (!is_torus()) return std::to_string(twice_spin);
  std::ostringstream os;
  for (std::size_t i = 0; i < freq.size(); ++i) os << (i ? "," : "") << freq[i];
  return os.str();
}

int irrep_dimension(const IrrepLabel& label) { return label.is_torus() ? 1 : label.twice_spin + 1; }

int label_band(const IrrepLabel& label) {
  if (!label.is_torus()) return label.twice_spin;
  int b = 0;
  for (int k : label.freq) b = std::max(b, std::abs(k));
  return b;
}

double su2_casimir(int twice_spin) {
  // ||xi + rho||^2 - ||rho||^2 with rho = 1/2
  const double l = 0.5 * twice_spin;
  return std::sqrt(l * (l + 1.0));
}

double su2_bracket(int twice_spin) { return std::max(1.0, su2_casimir(twice_spin)); }

double torus_casimir(const std::vector<int>& k) {
  double s = 0.0;
  for (int v : k) s += static_cast<double>(v) * v;
  return 2.0 * kPi * std::sqrt(s);
}

double casimir_lambda(const IrrepLabel& label) {
  return label.is_torus() ? torus_casimir(label.freq) : su2_casimir(label.twice_spin);
}

double bracket(const IrrepLabel& label) { return std::max(1.0, casimir_lambda(label)); }

Su2Element Su2Element::from_euler(const EulerAngles& e) {
  const double c = std::cos(0.5 * e.theta), s = std::sin(0.5 * e.theta);
  return {std::polar(c, 0.5 * (e.phi + e.psi)), std::polar(s, 0.5 * (e.phi - e.psi))};
}

Su2Element Su2Element::exp_frame(const double x[3], double t) {
  const double norm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (norm == 0.0) return identity();
  const double c = std::cos(0.5 * t * norm), s = std::sin(0.5 * t * norm) / norm;
  return {Complex(c, s * x[2]), Complex(s * x[1], s * x[0])};
}

EulerAngles Su2Element::to_euler() const {
  const double aa = std::abs(a), ab = std::abs(b);
  EulerAngles e;
  e.theta = 2.0 * std::atan2(ab, aa);
  const double arg_a = aa > 0.0 ? std::arg(a) : 0.0;
  const double arg_b = ab > 0.0 ? std::arg(b) : 0.0;
  double phi = arg_a + arg_b, psi = arg_a - arg_b;
  const double shift = std::floor(phi / (2.0 * kPi)) * 2.0 * kPi;
  phi -= shift;
  psi -= shift;
  if (phi >= 2.0 * kPi) phi = 0.0;
  psi = std::fmod(psi, 4.0 * kPi);
  if (psi < 0.0) psi += 4.0 * kPi;
  if (psi >= 4.0 * kPi) psi = 0.0;
  e.phi = phi;
  e.psi = psi;
  return e;
}

Su2Element Su2Element::operator*(const Su2Element& o) const {
  // [[a, b], [-b*, a*]] [[c, d], [-d*, c*]]
  return {a * o.a - b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
}

Eigen::Matrix2cd Su2Element::matrix() const {
  Eigen::Matrix2cd m;
  m << a, b, -std::conj(b), std::conj(a);
  return m;
}

double wigner_small_d(int L, int m2, int n2, double theta) {
  if (L < 0 || std::abs(m2) > L || std::abs(n2) > L || ((L + m2) & 1) || ((L + n2) & 1))
    throw MathInputError("invalid little-d indices");
  auto lf = [](int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); };
  const int jpm1 = (L + m2) / 2, jmm1 = (L - m2) / 2, jpm = (L + n2) / 2, jmm = (L - n2) / 2;
  const int diff = (m2 - n2) / 2;  // m' - m
  const long double pre = 0.5L * (lf(jpm1) + lf(jmm1) + lf(jpm) + lf(jmm));
  const long double c = std::cos(0.5L * theta), s = std::sin(0.5L * theta);
  long double sum = 0.0L;
  for (int k = std::max(0, -diff); k <= std::min(jpm, jmm1); ++k) {
    const long double mag = std::exp(pre - lf(jpm - k) - lf(k) - lf(jmm1 - k) - lf(k + diff));
    const int pc = L - diff - 2 * k, ps = diff + 2 * k;
    long double term = mag * std::pow(c, static_cast<long double>(pc)) * std::pow(s, static_cast<long double>(ps));
    if ((k + diff) & 1) term = -term;
    sum += term;
  }
  return static_cast<double>(sum);
}

CMatrix wigner_matrix(int twice_spin, const EulerAngles& e) {
  if (twice_spin < 0) throw MathInputError("twice_spin must be nonnegative");
  const double tol = 1e-12;
  if (e.phi < -tol || e.phi >= 2.0 * kPi + tol || e.theta < -tol || e.theta > kPi + tol ||
      e.psi < -tol || e.psi >= 4.0 * kPi + tol)
    throw MathInputError("Euler angles out of range (phi in [0,2pi), theta in [0,pi], psi in [0,4pi))");
  const int d = twice_spin + 1;
  CMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const int m2 = -twice_spin + 2 * r;
    for (int c = 0; c < d; ++c) {
      const int n2 = -twice_spin + 2 * c;
      const double phase = -0.5 * (m2 * e.phi + n2 * e.psi);
      out(r, c) = std::polar(wigner_small_d(twice_spin, m2, n2, e.theta), phase);
    }
  }
  return out;
}

namespace {

// D^{J+1} from D^J through the symmetric tensor power of the fundamental
// representation U = [[u00, u01], [u10, u11]].
template <class Mat, class T>
std::vector<Mat> ladder(int max_twice_spin, T u00, T u01, T u10, T u11) {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(max_twice_spin) + 1);
  Mat d0(1, 1);
  d0(0, 0) = T(1);
  out.push_back(d0);
  for (int J = 0; J < max_twice_spin; ++J) {
    const Mat& p = out.back();
    Mat n(J + 2, J + 2);
    for (int l = 0; l <= J + 1; ++l) {
      const double wl = std::sqrt(static_cast<double>(J + 1 - l)), wm = std::sqrt(static_cast<double>(l));
      for (int k = 0; k <= J; ++k) {
        T v = T(0);
        if (l <= J) v += u00 * wl * p(l, k);
        if (l >= 1) v += u10 * wm * p(l - 1, k);
        n(l, k) = v / std::sqrt(static_cast<double>(J + 1 - k));
      }
      T v = T(0);
      if (l <= J) v += u01 * wl * p(l, J);
      if (l >= 1) v += u11 * wm * p(l - 1, J);
      n(l, J + 1) = v / std::sqrt(static_cast<double>(J + 1));
    }
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

std::vector<CMatrix> wigner_ladder(int max_twice_spin, const Su2Element& g) {
  return ladder<CMatrix, Complex>(max_twice_spin, g.a, g.b, -std::conj(g.b), std::conj(g.a));
}

std::vector<Eigen::MatrixXd> small_d_ladder(int max_twice_spin, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  return ladder<Eigen::MatrixXd, double>(max_twice_spin, c, s, -s, c);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    nodes[static_cast<std::size_t>(i)] = -z;
    nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

std::vector<double> GroupGrid::torus_point(std::size_t i) const {
  const int n = model_.torus_dim();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    x[static_cast<std::size_t>(j)] = static_cast<double>(i % axis_points_) / axis_points_;
    i /= static_cast<std::size_t>(axis_points_);
  }
  return x;
}

EulerAngles GroupGrid::euler(std::size_t i) const {
  const std::size_t q = i % psi_.size();
  const std::size_t k = (i / psi_.size()) % theta_.size();
  const std::size_t p = i / (psi_.size() * theta_.size());
  return {phi_[p], theta_[k], psi_[q]};
}

Su2Element GroupGrid::element(std::size_t i) const {
  if (kind_ == GridKind::su2_class) return {std::polar(1.0, 0.5 * class_t_[i]), Complex(0.0, 0.0)};
  if (kind_ != GridKind::su2_euler) throw MathInputError("element() requires an SU(2) grid");
  return Su2Element::from_euler(euler(i));
}

std::shared_ptr<const GroupGrid> build_grid(const GroupModel& model, int band) {
  if (band < 1) throw ResolutionError("grid band must be at least 1");
  auto g = std::make_shared<GroupGrid>();
  g->model_ = model;
  g->band_ = band;
  if (model.is_torus()) {
    g->kind_ = GridKind::torus_lattice;
    g->axis_points_ = 2 * band + 1;
    std::size_t count = 1;
    for (int j = 0; j < model.torus_dim(); ++j) count *= static_cast<std::size_t>(g->axis_points_);
    g->weights_.assign(count, 1.0 / static_cast<double>(count));
    return g;
  }
  g->kind_ = GridKind::su2_euler;
  const int nphi = 2 * band + 1, npsi = 2 * (2 * band + 1), ntheta = band + 1;
  for (int p = 0; p < nphi; ++p) g->phi_.push_back(2.0 * kPi * p / nphi);
  for (int q = 0; q < npsi; ++q) g->psi_.push_back(4.0 * kPi * q / npsi);
  std::vector<double> x, w;
  gauss_legendre(ntheta, x, w);
  // ascending theta
  for (int k = ntheta - 1; k >= 0; --k) {
    g->theta_.push_back(std::acos(x[static_cast<std::size_t>(k)]));
    g->theta_w_.push_back(0.5 * w[static_cast<std::size_t>(k)]);
  }
  g->weights_.reserve(static_cast<std::size_t>(nphi) * ntheta * npsi);
  for (int p = 0; p < nphi; ++p)
    for (int k = 0; k < ntheta; ++k)
      for (int q = 0; q < npsi; ++q)
        g->weights_.push_back(g->theta_w_[static_cast<std::size_t>(k)] / (static_cast<double>(nphi) * npsi));
  return g;
}

std::shared_ptr<const GroupGrid> build_class_grid(int band, int nodes) {
  if (band < 0) throw ResolutionError("class grid band must be nonnegative");
  if (nodes == 0) nodes = band + 1;
  if (nodes < band + 1) throw ResolutionError("class grid needs at least band + 1 nodes");
  auto g = std::make_shared<GroupGrid>();
  g->model_ = GroupModel::su2();
  g->kind_ = GridKind::su2_class;
  g->band_ = band;
  g->weights_.reserve(static_cast<std::size_t>(nodes));
  for (int k = 1; k <= nodes; ++k) {
    const double u = k * kPi / (nodes + 1);
    const double su = std::sin(u);
    g->class_t_.push_back(2.0 * u);
    g->weights_.push_back(2.0 / (nodes + 1) * su * su);
  }
  return g;
}

Complex integrate(const GroupFunction& f) {
  const auto& w = f.grid->weights();
  Complex s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.samples[i];
  return s;
}

double integrate_abs_power(const GroupFunction& f, double p) {
  const auto& w = f.grid->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::pow(std::abs(f.samples[i]), p);
  return s;
}

double lp_norm(const GroupFunction& f, double p) { return std::pow(integrate_abs_power(f, p), 1.0 / p); }

double l2_norm(const GroupFunction& f) {
  const auto& w = f.grid->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::norm(f.samples[i]);
  return std::sqrt(s);
}

}  // namespace lpmult
