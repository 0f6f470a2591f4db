#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lpmult/fourier.hpp"
#include "lpmult/harmonic_core.hpp"
#include "lpmult/matrix_symbol.hpp"

namespace lpmult {

// One elementary difference: multiplication by xi0(g)_{ij} - delta_ij on the
// kernel side. Indices are 0-based. Torus factors use a 1-dim label with
// i = j = 0.
struct DifferenceFactor {
  IrrepLabel xi0;
  int i = 0;
  int j = 0;
};

struct DifferenceWord {
  std::vector<DifferenceFactor> factors;
  int order() const { return static_cast<int>(factors.size()); }
  // Total band consumed by the word (sum of factor bands).
  int band_cost() const;
};

// The generating family Delta_0: 2n characters on T^n, the 9 adjoint entries on SU(2).
std::vector<DifferenceFactor> generators(const GroupModel& model);
int generator_band(const GroupModel& model);

// Exact coupling tables for differences built from one SU(2) representation.
// Entry-wise it is the quadrature definition with the phi and psi integrals
// resolved as selection rules and the theta integral done by Gauss-Legendre.
class CouplingTable {
 public:
  CouplingTable(int generator_twice_spin, int max_band);
  int generator_twice_spin() const { return s_; }
  int max_band() const { return max_band_; }
  // Output has band min(sigma.band() - s, max_band()).
  MatrixSymbol apply(int i, int j, const MatrixSymbol& sigma) const;

 private:
  const Eigen::MatrixXd& theta(int L, int e, int i, int j) const;
  int s_;
  int max_band_;
  std::vector<Eigen::MatrixXd> tables_;
};

// Cached table covering at least the requested band.
std::shared_ptr<const CouplingTable> coupling_table(int generator_twice_spin, int band);

// Output labels are those where the result is exact for a truncated input:
// band(sigma) - band_cost.
MatrixSymbol apply_difference(const DifferenceFactor& factor, const MatrixSymbol& sigma);
MatrixSymbol apply_difference(const DifferenceWord& word, const MatrixSymbol& sigma);
// Reference route: inverse transform, multiply by q on the grid, forward transform.
MatrixSymbol apply_difference_on_grid(const DifferenceWord& word, const MatrixSymbol& sigma,
                                      std::shared_ptr<const GroupGrid> grid);

// A = F rho^2 F^{-1}. Torus: shift stencil. SU(2): grid quadrature route.
MatrixSymbol laplace_difference(const MatrixSymbol& sigma);
// A = -sum_i D_ii over Delta_0 (fast route used by the checkers).
MatrixSymbol laplace_difference_by_generators(const MatrixSymbol& sigma);

MatrixSymbol symbol_product(const MatrixSymbol& sigma, const MatrixSymbol& tau);

GroupFunction quantize_apply(const MatrixSymbol& sigma, const GroupFunction& f);
GroupFunction symbol_to_kernel(const MatrixSymbol& sigma, std::shared_ptr<const GroupGrid> grid);
// Peter-Weyl sum at one point.
Complex evaluate_su2(const MatrixSymbol& coeffs, const Su2Element& g);
Complex evaluate_torus(const MatrixSymbol& coeffs, const std::vector<double>& x);

// (X xi)(1) by centered differences of xi(exp(tX)) with one Richardson step.
// X holds frame coefficients: Y_k = (i/2) sigma_k on SU(2), d/dx_k on T^n.
MatrixSymbol vector_field_symbol(const GroupModel& model, const std::vector<double>& X, int band);
// Same symbol in closed form: -i m on the diagonal for Y3, ladder entries
// (1/2) sqrt((l - m)(l + m + 1)) for Y1 and Y2.
MatrixSymbol vector_field_symbol_exact(const GroupModel& model, const std::vector<double>& X, int band);

struct DistanceFunction {
  GroupModel model = GroupModel::su2();
  std::vector<double> node_values;
  double at(const Su2Element& g) const;
  double at(const std::vector<double>& x) const;
};

// rho^2 = 3 - tr Ad(g) on SU(2), 2n - sum 2 cos(2 pi x_j) on T^n.
double su2_rho_squared(const Su2Element& g);
double torus_rho_squared(const std::vector<double>& x);
DistanceFunction rho_squared(const GroupModel& model, const std::shared_ptr<const GroupGrid>& grid);

// Max over labels of the Hilbert-Schmidt residual of the expanded Leibniz
// rule for `word` and of the A-rule, for finitely supported sigma, tau.
double leibniz_residual(const DifferenceWord& word, const MatrixSymbol& sigma, const MatrixSymbol& tau);
double laplace_rule_residual(const MatrixSymbol& sigma, const MatrixSymbol& tau);

}  // namespace lpmult
