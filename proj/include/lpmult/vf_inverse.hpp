#pragma once

#include <vector>

#include "lpmult/matrix_symbol.hpp"
#include "lpmult/multiplier_check.hpp"
#include "lpmult/symbol_calculus.hpp"

namespace lpmult {

// Default spectral safety margin for non-exceptional parameters.
inline constexpr double kExceptionalMargin = 1e-8;

// A real left-invariant vector field on SU(2) with its per-label
// diagonalisation sigma_X(L) = V_L diag(eig_L) V_L^*, eigenvalues sorted by
// imaginary part, then real part.
class VectorFieldSpec {
 public:
  VectorFieldSpec(std::vector<double> X, int band);
  const std::vector<double>& coefficients() const { return X_; }
  int band() const { return band_; }
  // Extends the cached diagonalisations to at least `band`.
  void ensure_band(int band);
  const std::vector<Complex>& eigenvalues(int twice_spin) const;
  const CMatrix& basis(int twice_spin) const;
  // tau_jj with D'_jj sigma_X = tau_jj I for the differences of the
  // fundamental representation rotated into the eigenbasis of sigma_X(1).
  const std::vector<Complex>& tau() const { return tau_; }
  // Differences D'_ij = sum_kl conj(V)_ki V_lj (D_kl + delta_kl) - delta_ij.
  MatrixSymbol rotated_difference(int i, int j, const MatrixSymbol& sigma) const;

 private:
  void extend(int band);
  std::vector<double> X_;
  int band_ = -1;
  std::vector<std::vector<Complex>> eig_;
  std::vector<CMatrix> basis_;
  std::vector<Complex> tau_;
};

// Points of spec(-X) - Z[tau] within |c| <= bound, sorted by Im then Re.
std::vector<Complex> exceptional_set(VectorFieldSpec& X, double bound);
// Distance from -c to the eigenvalues of sigma_X over labels <= band.
double spectral_distance(VectorFieldSpec& X, Complex c, int band);

// (sigma_X + c I)^{-1} on labels <= band, returned in the standard basis.
// Throws ExceptionalParameterError when some label is within `margin` of
// singular.
MatrixSymbol invert_vf_symbol(VectorFieldSpec& X, Complex c, int band, double margin = kExceptionalMargin);
// Diagonal entries 1/(eig_m + c) in the sorted eigenbasis.
std::vector<Complex> inverse_diagonal(VectorFieldSpec& X, Complex c, int twice_spin,
                                      double margin = kExceptionalMargin);

struct RecursionResidual {
  double diagonal = 0.0;
  double off_diagonal = 0.0;
  double max() const { return diagonal > off_diagonal ? diagonal : off_diagonal; }
};

// max over exact labels of |D'_jj s + tau_jj (sigma_X + c)^{-1} (sigma_X + c + tau_jj)^{-1}|_HS,
// s = (sigma_X + c)^{-1}, together with max |D'_ij s|_HS over i != j.
RecursionResidual recursion_residual(VectorFieldSpec& X, Complex c, int j, int band);

// check_symbol_class with rho = 0, m = 0 and max_order = kappa.
MultiplierReport verify_s00(VectorFieldSpec& X, Complex c, int range, const CheckOptions& opt = {});

}  // namespace lpmult
