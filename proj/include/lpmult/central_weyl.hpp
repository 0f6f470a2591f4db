#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lpmult/harmonic_core.hpp"
#include "lpmult/matrix_symbol.hpp"

namespace lpmult {

// SU(2) weight lattice in twice-weight units; the Weyl vector is 1/2.
struct WeightLatticePoint {
  int twice_weight = 0;
  static constexpr int twice_rho = 1;
  // Image under the nontrivial Weyl reflection about -rho.
  WeightLatticePoint reflected() const { return {-twice_weight - 2 * twice_rho}; }
};

// Signed dimension: d_{w} = w + 1, odd under reflection, 0 on the wall w = -1.
double weyl_dimension(const WeightLatticePoint& w);
// sin((w + 1) t / 2) / sin(t / 2) for the class of exp(t Y3); limits at singular t.
double weyl_character(const WeightLatticePoint& w, double t);

// Scalar sequence on dominant labels, extended evenly to the full lattice.
// The wall value (twice_weight -1) never enters because d vanishes there.
class CentralSequence {
 public:
  CentralSequence() = default;
  explicit CentralSequence(std::vector<Complex> values);
  static CentralSequence from_function(int max_twice_spin, const std::function<Complex(int)>& f);
  // Reads sigma(L) = s_L I; rejects non-scalar blocks beyond tol.
  static CentralSequence from_symbol(const MatrixSymbol& sigma, double tol = 1e-9);

  int max_twice_spin() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<Complex>& values() const { return values_; }
  // Extended value; throws MathInputError outside the stored range.
  Complex value(int twice_weight) const;
  // d_w s_w with the signed extension.
  Complex weighted(int twice_weight) const;
  MatrixSymbol as_symbol() const;
  double max_abs_diff(const CentralSequence& o) const;

 private:
  std::vector<Complex> values_;
};

// Symbol-level Delta_2: returns s' with d s' = Delta_2(d s), spin-one steps.
// Output covers twice_spin <= max - 2.
CentralSequence delta2(const CentralSequence& s);
// Symbol-level N. Weiss difference: d s' = delta(d s) with
// delta(tau)_w = tau_{w+1} + tau_{w-1} - 2 tau_w. Output covers max - 1.
CentralSequence nweiss_delta(const CentralSequence& s);
// The lattice operators on raw tau sequences (index = twice weight >= 0,
// signed extension below).
std::vector<Complex> delta2_lattice(const std::vector<Complex>& tau);
std::vector<Complex> nweiss_lattice(const std::vector<Complex>& tau);

// Quadrature oracles on the class grid: multiply the central kernel by
// rho^2 = 3 - chi_1 (resp. gamma = 2 cos(t/2) - 2) and transform back.
CentralSequence delta2_by_quadrature(const CentralSequence& s);
CentralSequence nweiss_by_quadrature(const CentralSequence& s);

struct HypoellipticityReport {
  int order = 0;
  int range = 0;
  double max_ratio = 0.0;
  double max_ratio_half = 0.0;
  int argmax_twice_spin = 0;
  // max d / <xi> over the range (polynomial bound with exponent 1).
  double dimension_bound = 0.0;
};

// max over 0 <= L <= range of |Delta^k d_L| / d_L * <xi_L>^k, forward
// differences in unit twice-spin steps.
HypoellipticityReport hypoellipticity_ratio(int order, int range);

// (lambda)^{-1} sigma_Z with value 0 at the trivial label. Z is a unit vector
// of frame coefficients (Killing-normalised on SU(2)).
MatrixSymbol riesz_symbol(const GroupModel& model, const std::vector<double>& Z, int band);

// s_L = f(lambda_L^2) with lambda_L^2 = l (l + 1). trivial_value replaces
// f(0); a non-finite f(0) without it is rejected.
CentralSequence function_of_laplacian(const std::function<Complex(double)>& f, int max_twice_spin,
                                      std::optional<Complex> trivial_value = std::nullopt);

}  // namespace lpmult
