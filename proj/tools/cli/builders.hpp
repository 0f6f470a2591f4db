#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "lpmult/matrix_symbol.hpp"

namespace lpmult::cli {

// Bad command-line configuration: unknown builder, malformed symbol file or
// expression. Mapped to exit code 3 like resolution failures.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Memory guard for symbols built by the command line (about 400 MB).
inline constexpr double kMaxSymbolEntries = 2.5e7;
// Number of complex entries a symbol of this band holds.
double symbol_entries(const GroupModel& model, int band);

// Parses "1", "-0.5i", "1+2i", "pi/2*i" and similar constants.
Complex parse_complex(const std::string& text);

// Builds a symbol on labels of band <= band from a specification:
//   identity
//   riesz:D1|D2|D3|Dj          normalised frame vector field over sqrt(Laplacian)
//   laplacian-function:NAME[:P] heat:t, bessel:s, imaginary-power:a, wave:t
//   vf-inverse:Dj:c            (sigma_{D_j} + c)^{-1} on SU(2)
//   file:PATH                  symbol file (band taken from the file, truncated)
//   anything else on a torus   scalar expression in k1..kn
MatrixSymbol build_symbol(const GroupModel& model, const std::string& spec, int band);

// f(lambda) for laplacian-function:NAME[:P], lambda = sqrt of the Laplacian
// eigenvalue: heat e^{-P lambda^2}, bessel (1 + lambda^2)^{-P/2},
// imaginary-power lambda^{2iP} (1 at lambda = 0), wave e^{iP lambda}.
std::function<Complex(double)> laplacian_function_profile(const std::string& spec);

// Text format: "group NAME" and "band B" header lines, then one record per
// label: "<label> <d> re im re im ..." with the block in row-major order.
// SU(2) labels are twice-spins, torus labels comma-separated frequencies.
// Missing labels are zero. Lines starting with '#' are comments.
MatrixSymbol read_symbol_file(const std::string& path);
void write_symbol_file(const MatrixSymbol& sigma, const std::string& path);

}  // namespace lpmult::cli
