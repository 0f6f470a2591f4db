#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpmult/harmonic_core.hpp"
#include "lpmult/matrix_symbol.hpp"

namespace lpmult {

// Plateau bump: 1 on [0, 1/2], smooth exponential splice down to 0 at 1,
// 0 beyond. All derivatives vanish at 0.
double bump(double x);

// Distance rho(g) used by the mollifiers. On SU(2) rho^2 = 4 - tr^2 also
// vanishes at -1, so the mollifier is restricted to the identity sheet
// tr g > 0, where rho is a distance near 1.
double mollifier_rho(const GroupGrid& grid, std::size_t node);

struct Mollifier {
  GroupFunction phi;
  double r = 0.0;
  double c_r = 0.0;
  // r^{1/n}: phi vanishes for rho >= support_radius.
  double support_radius = 0.0;
};

// Smallest r whose support radius spans at least 8 grid spacings in rho.
double smallest_resolved_r(const GroupGrid& grid);
// phi_r = c_r bump(r^{-1/n} rho), normalised by quadrature on `grid`.
// Throws ResolutionError (naming the smallest usable r) when under-resolved.
Mollifier build_phi_r(std::shared_ptr<const GroupGrid> grid, double r);
GroupFunction build_psi_r(std::shared_ptr<const GroupGrid> grid, double r);

// Quadrature of phi_r over {rho >= t^{1/n}}.
double mollifier_tail(std::shared_ptr<const GroupGrid> grid, double r, double t);
// int |phi_r(g h^{-1}) - phi_r(g)| dg on an SU(2) Euler grid or torus grid.
double l1_modulus(std::shared_ptr<const GroupGrid> grid, double r, const Su2Element& h);
double l1_modulus(std::shared_ptr<const GroupGrid> grid, double r, const std::vector<double>& h);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
// Least squares of log(values) against log(rs); all values must be positive.
SlopeFit fit_loglog(const std::vector<double>& rs, const std::vector<double>& values);

struct LadderReport {
  std::string name;
  std::vector<double> rs;
  std::vector<double> values;
  std::optional<SlopeFit> fit;  // empty when the values vanish identically
  double target = 0.0;
  double tolerance = 0.0;
  double min_r2 = 0.0;
  bool pass = false;
};

// Default ladder {2^-4, ..., 2^-9}.
std::vector<double> default_ladder();

// Mollifier scaling probes on SU(2). Each ladder point uses a class grid
// resolving the mollifier; `tolerance` is the allowed |slope - target|.
LadderReport mollifier_constant_slope(const std::vector<double>& ladder, double tolerance = 0.15);
LadderReport mollifier_l2_slope(const std::vector<double>& ladder, double tolerance = 0.15);
LadderReport psi_l2_slope(const std::vector<double>& ladder, double tolerance = 0.15);

enum class VanishingFactor { one, rho_squared, xi12 };
VanishingFactor parse_vanishing_factor(const std::string& name);
std::string to_string(VanishingFactor q);
int vanishing_order(VanishingFactor q);

// ||q psi_r||_{H^{-s}} on SU(2) over the ladder, fitted against
// (t + s)/n - 1/2. xi12 is the off-diagonal entry of the fundamental
// representation.
LadderReport negative_sobolev_decay(VanishingFactor q, double s, const std::vector<double>& ladder,
                                    double tolerance = 0.1);

// Symbol with diagonal blocks on SU(2), stored per label; lets the probe run
// far beyond the bands where full matrices are affordable.
class DiagonalSymbol {
 public:
  DiagonalSymbol() = default;
  static DiagonalSymbol from_function(int band, const std::function<Complex(int twice_spin, int index)>& f);
  // Rejects blocks with off-diagonal mass beyond tol.
  static DiagonalSymbol from_matrix_symbol(const MatrixSymbol& sigma, double tol = 1e-12);
  int band() const { return static_cast<int>(diag_.size()) - 1; }
  const std::vector<Complex>& diagonal(int twice_spin) const { return diag_.at(static_cast<std::size_t>(twice_spin)); }
  std::vector<Complex>& diagonal(int twice_spin) { return diag_.at(static_cast<std::size_t>(twice_spin)); }
  MatrixSymbol to_matrix_symbol(int band) const;
  DiagonalSymbol truncated(int band) const;

 private:
  std::vector<std::vector<Complex>> diag_;
};

// Multiplication of the kernel by chi_{1/2} (mu = 0: both weights; mu = +-1:
// one fundamental diagonal entry only).
DiagonalSymbol multiply_by_fundamental(const DiagonalSymbol& s, int twice_mu = 0);
// A = 4 - chi_{1/2}^2 on diagonal symbols; output band = band - 2.
DiagonalSymbol laplace_difference_diagonal(const DiagonalSymbol& s);

// Closed-form diagonal builders used by the probe.
DiagonalSymbol diagonal_identity(int band);
// Riesz symbol of Y3: -i m / lambda, 0 at the trivial label.
DiagonalSymbol diagonal_riesz_d3(int band);
// 1 / (-i m |X| + c) for X = |X| Y3.
DiagonalSymbol diagonal_vf_inverse_d3(int band, Complex c, double scale = 1.0);

// Twice-spin cutoff used to resolve psi_r at scale r.
int probe_band(double r);

struct CzProbeReport {
  LadderReport ladder;
  int m = 1;
  double epsilon = 0.0;
};

// ||A^m(sigma psi_r^)||_{l^2} over the ladder; passes iff slope >= 2m/n - 1/2 - 0.1
// and R^2 >= 0.95 (or the values vanish identically).
// `symbol(band)` returns the diagonal symbol on labels <= band.
CzProbeReport cz_probe(const std::function<DiagonalSymbol(int)>& symbol, const std::vector<double>& ladder);
// General route for full matrix symbols. Needs sigma.band() >= probe_band(r / 2) + 2m
// for every ladder point, else ResolutionError.
CzProbeReport cz_probe(const MatrixSymbol& sigma, const std::vector<double>& ladder, int probe_band_override = 0);

// Coefficients of psi_r (scalar per label) up to `band`.
std::vector<double> psi_hat(double r, int band);

// Per-label check of the A-Leibniz bound: max over labels of
// |A(sigma tau)|_HS - (|A sigma|_op |tau|_HS + |sigma|_op |A tau|_HS
//   + sum |D_ij sigma|_op |D_ji tau|_HS); nonpositive when the bound holds.
double leibniz_bound_excess(const MatrixSymbol& sigma, const MatrixSymbol& tau);

}  // namespace lpmult
