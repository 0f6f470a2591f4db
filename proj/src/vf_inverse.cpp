#include "lpmult/vf_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

bool spectral_less(Complex a, Complex b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

VectorFieldSpec::VectorFieldSpec(std::vector<double> X, int band) : X_(std::move(X)) {
  if (X_.size() != 3) throw MathInputError("SU(2) vector fields need 3 frame coefficients");
  double n2 = 0.0;
  for (double x : X_) {
    if (!std::isfinite(x)) throw MathInputError("vector field coefficients must be finite");
    n2 += x * x;
  }
  if (n2 == 0.0) throw MathInputError("vector field must be nonzero");
  extend(std::max(band, 1));
  // Fundamental representation: D'_jj sigma_X = -eig_j(1) I.
  tau_ = {-eig_[1][0], -eig_[1][1]};
}

void VectorFieldSpec::ensure_band(int band) {
  if (band > band_) extend(band);
}

void VectorFieldSpec::extend(int band) {
  const MatrixSymbol s = vector_field_symbol_exact(GroupModel::su2(), X_, band);
  for (int L = band_ + 1; L <= band; ++L) {
    // sigma_X is skew-Hermitian: i sigma_X = V diag(h) V^*, eig = -i h.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0, 1) * CMatrix(s.su2(L)));
    const int d = L + 1;
    std::vector<int> order(static_cast<std::size_t>(d));
    std::vector<Complex> ev(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      order[static_cast<std::size_t>(a)] = a;
      ev[static_cast<std::size_t>(a)] = Complex(0.0, -es.eigenvalues()(a));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return spectral_less(ev[static_cast<std::size_t>(x)], ev[static_cast<std::size_t>(y)]); });
    CMatrix V(d, d);
    std::vector<Complex> sorted(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      V.col(a) = es.eigenvectors().col(order[static_cast<std::size_t>(a)]);
      sorted[static_cast<std::size_t>(a)] = ev[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])];
    }
    eig_.push_back(std::move(sorted));
    basis_.push_back(std::move(V));
  }
  band_ = band;
}

const std::vector<Complex>& VectorFieldSpec::eigenvalues(int L) const {
  if (L < 0 || L > band_) throw ResolutionError("label outside the diagonalised band");
  return eig_[static_cast<std::size_t>(L)];
}

const CMatrix& VectorFieldSpec::basis(int L) const {
  if (L < 0 || L > band_) throw ResolutionError("label outside the diagonalised band");
  return basis_[static_cast<std::size_t>(L)];
}

MatrixSymbol VectorFieldSpec::rotated_difference(int i, int j, const MatrixSymbol& sigma) const {
  const CMatrix& V = basis_[1];
  MatrixSymbol out(sigma.model(), sigma.band() - 1);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const Complex w = std::conj(V(k, i)) * V(l, j);
      if (std::abs(w) < 1e-15) continue;
      MatrixSymbol d = apply_difference(DifferenceFactor{IrrepLabel::su2(1), k, l}, sigma);
      d *= w;
      out += d;
    }
  return out;
}

std::vector<Complex> exceptional_set(VectorFieldSpec& X, double bound) {
  if (!(bound > 0.0)) throw MathInputError("bound must be positive");
  // |eig| >= |X| m over the label; labels beyond this cannot reach the disk
  // except through tau shifts, which already step by |X|/2.
  double nx = 0.0;
  for (double x : X.coefficients()) nx += x * x;
  nx = std::sqrt(nx);
  const int max_label = static_cast<int>(std::ceil(2.0 * bound / nx)) + 2;
  X.ensure_band(max_label);
  const Complex t = X.tau()[0];
  const int nmax = static_cast<int>(std::ceil(2.0 * bound / std::max(std::abs(t), 1e-300))) + 2;
  std::vector<Complex> out;
  for (int L = 0; L <= max_label; ++L)
    for (Complex e : X.eigenvalues(L))
      for (int n = -nmax; n <= nmax; ++n) {
        const Complex z = -e - static_cast<double>(n) * t;
        if (std::abs(z) > bound) continue;
        if (std::none_of(out.begin(), out.end(), [&](Complex o) { return std::abs(o - z) < 1e-9; })) out.push_back(z);
      }
  std::sort(out.begin(), out.end(), spectral_less);
  return out;
}

double spectral_distance(VectorFieldSpec& X, Complex c, int band) {
  X.ensure_band(band);
  double d = std::numeric_limits<double>::infinity();
  for (int L = 0; L <= band; ++L)
    for (Complex e : X.eigenvalues(L)) d = std::min(d, std::abs(e + c));
  return d;
}

std::vector<Complex> inverse_diagonal(VectorFieldSpec& X, Complex c, int L, double margin) {
  X.ensure_band(L);
  std::vector<Complex> out;
  for (Complex e : X.eigenvalues(L)) {
    if (std::abs(e + c) < margin)
      throw ExceptionalParameterError("c = " + format_complex(c) + " is exceptional: sigma_X + c is singular at twice_spin " +
                                      std::to_string(L) + " (eigenvalue " + format_complex(e) + ")");
    out.push_back(1.0 / (e + c));
  }
  return out;
}

MatrixSymbol invert_vf_symbol(VectorFieldSpec& X, Complex c, int band, double margin) {
  if (band < 0) throw ResolutionError("band must be nonnegative");
  X.ensure_band(band);
  MatrixSymbol out(GroupModel::su2(), band);
  for (int L = 0; L <= band; ++L) {
    const auto inv = inverse_diagonal(X, c, L, margin);
    const CMatrix& V = X.basis(L);
    CMatrix D = CMatrix::Zero(L + 1, L + 1);
    for (int a = 0; a <= L; ++a) D(a, a) = inv[static_cast<std::size_t>(a)];
    out.su2(L) = V * D * V.adjoint();
  }
  return out;
}

RecursionResidual recursion_residual(VectorFieldSpec& X, Complex c, int j, int band) {
  if (j < 0 || j > 1) throw MathInputError("j must be 0 or 1 (fundamental representation)");
  if (band < 1) throw ResolutionError("band must be at least 1");
  const Complex t = X.tau()[static_cast<std::size_t>(j)];
  const MatrixSymbol s = invert_vf_symbol(X, c, band);
  const MatrixSymbol s_shift = invert_vf_symbol(X, c + t, band - 1);
  RecursionResidual r;
  const MatrixSymbol lhs = X.rotated_difference(j, j, s);
  for (int L = 0; L <= lhs.band(); ++L) {
    const CMatrix rhs = -t * CMatrix(s.su2(L)) * CMatrix(s_shift.su2(L));
    r.diagonal = std::max(r.diagonal, (CMatrix(lhs.su2(L)) - rhs).norm());
  }
  const MatrixSymbol off = X.rotated_difference(j, 1 - j, s);
  for (int L = 0; L <= off.band(); ++L) r.off_diagonal = std::max(r.off_diagonal, off.su2(L).norm());
  return r;
}

MultiplierReport verify_s00(VectorFieldSpec& X, Complex c, int range, const CheckOptions& opt) {
  const GroupModel model = GroupModel::su2();
  const int kappa = model.kappa();
  const int band = required_band(model, "symbol-class", range, kappa);
  const MatrixSymbol inv = invert_vf_symbol(X, c, band);
  MultiplierReport r = check_symbol_class(inv, {0.0, 0.0, kappa}, range, opt);
  r.checker = "s00";
  return r;
}

}  // namespace lpmult
