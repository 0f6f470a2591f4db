#include "lpmult/central_weyl.hpp"

#include <cmath>

#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/symbol_calculus.hpp"

namespace lpmult {

double weyl_dimension(const WeightLatticePoint& w) { return w.twice_weight + 1.0; }

double weyl_character(const WeightLatticePoint& w, double t) {
  const double n = w.twice_weight + 1.0;
  const double den = std::sin(0.5 * t);
  if (std::abs(den) >= 1e-8) return std::sin(0.5 * n * t) / den;
  // Limit at t = 2 pi k: n cos(n pi k) / cos(pi k).
  const double k = std::round(t / (2.0 * kPi));
  return n * std::cos(n * kPi * k) / std::cos(kPi * k);
}

CentralSequence::CentralSequence(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw MathInputError("central sequence needs at least the trivial label");
}

CentralSequence CentralSequence::from_function(int max_twice_spin, const std::function<Complex(int)>& f) {
  if (max_twice_spin < 0) throw MathInputError("max twice_spin must be nonnegative");
  std::vector<Complex> v(static_cast<std::size_t>(max_twice_spin) + 1);
  for (int L = 0; L <= max_twice_spin; ++L) v[static_cast<std::size_t>(L)] = f(L);
  return CentralSequence(std::move(v));
}

CentralSequence CentralSequence::from_symbol(const MatrixSymbol& sigma, double tol) {
  if (!sigma.model().is_su2()) throw MathInputError("central sequences live on SU(2)");
  std::vector<Complex> v(static_cast<std::size_t>(sigma.band()) + 1);
  for (int L = 0; L <= sigma.band(); ++L) {
    const auto b = sigma.su2(L);
    const Complex s = b.trace() / static_cast<double>(L + 1);
    const double off = (b - s * CMatrix::Identity(L + 1, L + 1)).norm();
    if (off > tol * std::max(1.0, std::abs(s)))
      throw MathInputError("symbol is not central at twice_spin " + std::to_string(L));
    v[static_cast<std::size_t>(L)] = s;
  }
  return CentralSequence(std::move(v));
}

Complex CentralSequence::value(int w) const {
  if (w == -1) return 0.0;
  const int dom = w < -1 ? -w - 2 : w;
  if (dom > max_twice_spin())
    throw MathInputError("central sequence has no value at twice_weight " + std::to_string(w));
  return values_[static_cast<std::size_t>(dom)];
}

Complex CentralSequence::weighted(int w) const { return weyl_dimension({w}) * value(w); }

MatrixSymbol CentralSequence::as_symbol() const {
  MatrixSymbol out(GroupModel::su2(), max_twice_spin());
  for (int L = 0; L <= max_twice_spin(); ++L)
    out.su2(L) = values_[static_cast<std::size_t>(L)] * CMatrix::Identity(L + 1, L + 1);
  return out;
}

double CentralSequence::max_abs_diff(const CentralSequence& o) const {
  const int n = std::min(max_twice_spin(), o.max_twice_spin());
  double m = 0.0;
  for (int L = 0; L <= n; ++L) m = std::max(m, std::abs(value(L) - o.value(L)));
  return m;
}

namespace {

Complex signed_tau(const std::vector<Complex>& tau, int w) {
  if (w == -1) return 0.0;
  if (w < -1) return -tau.at(static_cast<std::size_t>(-w - 2));
  return tau.at(static_cast<std::size_t>(w));
}

std::vector<Complex> tau_of(const CentralSequence& s) {
  std::vector<Complex> t(s.values().size());
  for (int L = 0; L <= s.max_twice_spin(); ++L) t[static_cast<std::size_t>(L)] = s.weighted(L);
  return t;
}

CentralSequence untau(const std::vector<Complex>& t) {
  std::vector<Complex> v(t.size());
  for (std::size_t L = 0; L < t.size(); ++L) v[L] = t[L] / static_cast<double>(L + 1);
  return CentralSequence(std::move(v));
}

CentralSequence multiply_kernel(const CentralSequence& s, int out_max, const std::function<double(double)>& factor) {
  const int band = s.max_twice_spin() + 2;
  auto grid = build_class_grid(band);
  GroupFunction k = fourier_inverse(s.as_symbol(), grid);
  for (std::size_t i = 0; i < k.samples.size(); ++i) k.samples[i] *= factor(grid->class_angle(i));
  return CentralSequence::from_symbol(fourier_forward(k, out_max));
}

}  // namespace

std::vector<Complex> delta2_lattice(const std::vector<Complex>& tau) {
  if (tau.size() < 3) throw MathInputError("delta2 needs neighbours at twice_spin +- 2");
  std::vector<Complex> out(tau.size() - 2);
  for (int L = 0; L < static_cast<int>(out.size()); ++L)
    out[static_cast<std::size_t>(L)] = 2.0 * tau[static_cast<std::size_t>(L)] - signed_tau(tau, L - 2) - signed_tau(tau, L + 2);
  return out;
}

std::vector<Complex> nweiss_lattice(const std::vector<Complex>& tau) {
  if (tau.size() < 2) throw MathInputError("nweiss_delta needs neighbours at twice_spin +- 1");
  std::vector<Complex> out(tau.size() - 1);
  for (int L = 0; L < static_cast<int>(out.size()); ++L)
    out[static_cast<std::size_t>(L)] = signed_tau(tau, L + 1) + signed_tau(tau, L - 1) - 2.0 * tau[static_cast<std::size_t>(L)];
  return out;
}

CentralSequence delta2(const CentralSequence& s) { return untau(delta2_lattice(tau_of(s))); }
CentralSequence nweiss_delta(const CentralSequence& s) { return untau(nweiss_lattice(tau_of(s))); }

CentralSequence delta2_by_quadrature(const CentralSequence& s) {
  if (s.max_twice_spin() < 2) throw MathInputError("delta2 needs neighbours at twice_spin +- 2");
  return multiply_kernel(s, s.max_twice_spin() - 2, [](double t) { return 3.0 - weyl_character({2}, t); });
}

CentralSequence nweiss_by_quadrature(const CentralSequence& s) {
  if (s.max_twice_spin() < 1) throw MathInputError("nweiss_delta needs neighbours at twice_spin +- 1");
  return multiply_kernel(s, s.max_twice_spin() - 1, [](double t) { return 2.0 * std::cos(0.5 * t) - 2.0; });
}

HypoellipticityReport hypoellipticity_ratio(int order, int range) {
  if (order < 0) throw MathInputError("difference order must be nonnegative");
  if (range < 1) throw MathInputError("range must be positive");
  HypoellipticityReport r;
  r.order = order;
  r.range = range;
  for (int L = 0; L <= range; ++L) {
    // k-th forward difference of the affine d is binomial-weighted.
    double diff = 0.0, binom = 1.0;
    for (int j = 0; j <= order; ++j) {
      diff += ((order - j) % 2 ? -1.0 : 1.0) * binom * weyl_dimension({L + j});
      binom = binom * (order - j) / (j + 1);
    }
    const double d = weyl_dimension({L});
    const double ratio = std::abs(diff) / d * std::pow(su2_bracket(L), order);
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax_twice_spin = L;
    }
    if (L <= range / 2) r.max_ratio_half = std::max(r.max_ratio_half, ratio);
    r.dimension_bound = std::max(r.dimension_bound, d / su2_bracket(L));
  }
  return r;
}

MatrixSymbol riesz_symbol(const GroupModel& model, const std::vector<double>& Z, int band) {
  double n2 = 0.0;
  for (double z : Z) n2 += z * z;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) throw MathInputError("Riesz vector field must be normalised (|Z| = 1)");
  MatrixSymbol s = vector_field_symbol_exact(model, Z, band);
  for (std::size_t i = 0; i < s.label_count(); ++i) {
    const double lam = casimir_lambda(s.label_at(i));
    if (lam == 0.0)
      s.block(i).setZero();
    else
      s.block(i) /= lam;
  }
  return s;
}

CentralSequence function_of_laplacian(const std::function<Complex(double)>& f, int max_twice_spin,
                                      std::optional<Complex> trivial_value) {
  return CentralSequence::from_function(max_twice_spin, [&](int L) {
    if (L == 0 && trivial_value) return *trivial_value;
    const Complex v = f(0.25 * L * (L + 2));
    if (L == 0 && !(std::isfinite(v.real()) && std::isfinite(v.imag())))
      throw MathInputError("f is singular at 0; supply the value at the trivial representation");
    return v;
  });
}

}  // namespace lpmult
