#pragma once

#include <functional>

#include "lpmult/harmonic_core.hpp"
#include "lpmult/matrix_symbol.hpp"

namespace lpmult {

// Coefficients f^(xi) = integral f(g) xi(g)* dg for all labels of band <= band.
// On a class grid the function is taken to be central and coefficients are
// scalar matrices.
MatrixSymbol fourier_forward(const GroupFunction& f, int band);
// Peter-Weyl sum f(g) = sum d_xi tr(xi(g) c(xi)) at every node of the grid.
GroupFunction fourier_inverse(const MatrixSymbol& coeffs, std::shared_ptr<const GroupGrid> grid);

// Class grid only: c_L with f^(L) = c_L I, without forming matrix blocks.
std::vector<Complex> central_coefficients(const GroupFunction& f, int band);

double plancherel_norm(const MatrixSymbol& coeffs);
double sobolev_norm(const MatrixSymbol& coeffs, double s);

GroupFunction sample_torus(std::shared_ptr<const GroupGrid> grid,
                           const std::function<Complex(const std::vector<double>&)>& f);
GroupFunction sample_su2(std::shared_ptr<const GroupGrid> grid,
                         const std::function<Complex(const Su2Element&)>& f);

}  // namespace lpmult
