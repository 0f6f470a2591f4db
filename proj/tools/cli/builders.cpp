#include "builders.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "expression.hpp"
#include "lpmult/central_weyl.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/vf_inverse.hpp"

namespace lpmult::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  const Complex z = parse_complex(s);
  if (z.imag() != 0.0) throw ConfigError(what + " must be real, got '" + s + "'");
  return z.real();
}

std::vector<double> frame_direction(const GroupModel& model, const std::string& name) {
  if (name.size() < 2 || name[0] != 'D' || name.find_first_not_of("0123456789", 1) != std::string::npos)
    throw ConfigError("expected a frame direction D1..Dn, got '" + name + "'");
  const int j = std::stoi(name.substr(1));
  const int n = model.is_su2() ? 3 : model.torus_dim();
  if (j < 1 || j > n) throw ConfigError("frame direction " + name + " out of range for " + model.name());
  std::vector<double> X(static_cast<std::size_t>(n), 0.0);
  X[static_cast<std::size_t>(j - 1)] = 1.0;
  return X;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

MatrixSymbol torus_expression(const GroupModel& model, const std::string& text, int band) {
  std::unique_ptr<TorusExpression> e;
  try {
    e = std::make_unique<TorusExpression>(text, model.torus_dim());
  } catch (const MathInputError& err) {
    throw ConfigError(err.what());
  }
  return MatrixSymbol::scalar(model, band, [&](const IrrepLabel& l) {
    const Complex v = (*e)(l.freq);
    if (finite(v)) return v;
    bool zero = true;
    for (int k : l.freq) zero = zero && k == 0;
    // Homogeneous symbols are undefined at k = 0; the trivial label carries 0.
    if (zero) return Complex(0.0);
    throw MathInputError("symbol '" + text + "' is not finite at k = " + l.to_string());
  });
}

}  // namespace

double symbol_entries(const GroupModel& model, int band) {
  if (model.is_su2()) {
    double n = 0.0;
    for (int L = 0; L <= band; ++L) n += double(L + 1) * (L + 1);
    return n;
  }
  return std::pow(2.0 * band + 1.0, model.torus_dim());
}

std::function<Complex(double)> laplacian_function_profile(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3 || parts[0] != "laplacian-function")
    throw ConfigError("expected laplacian-function:NAME[:P]");
  const std::string& name = parts[1];
  const double p = parts.size() == 3 ? parse_real(parts[2], "laplacian-function parameter") : 1.0;
  if (name == "heat") return [p](double lam) { return Complex(std::exp(-p * lam * lam)); };
  if (name == "bessel") return [p](double lam) { return Complex(std::pow(1.0 + lam * lam, -0.5 * p)); };
  if (name == "imaginary-power")
    return [p](double lam) { return lam == 0.0 ? Complex(1.0) : std::exp(Complex(0.0, 2.0 * p * std::log(lam))); };
  if (name == "wave") return [p](double lam) { return std::exp(Complex(0.0, p * lam)); };
  throw ConfigError("unknown laplacian-function '" + name + "' (heat, bessel, imaginary-power, wave)");
}

Complex parse_complex(const std::string& text) {
  try {
    const Complex z = TorusExpression(text, 1)({0});
    if (!finite(z)) throw ConfigError("'" + text + "' is not a finite number");
    return z;
  } catch (const MathInputError& e) {
    throw ConfigError(std::string("malformed number: ") + e.what());
  }
}

MatrixSymbol build_symbol(const GroupModel& model, const std::string& spec, int band) {
  if (band < 0) throw ConfigError("band must be nonnegative");
  const double entries = symbol_entries(model, band);
  if (entries > kMaxSymbolEntries) {
    std::ostringstream os;
    os << "symbol on " << model.name() << " at band " << band << " needs " << entries
       << " matrix entries (limit " << kMaxSymbolEntries << "); lower --band or --range";
    throw ResolutionError(os.str());
  }
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  if (spec == "identity") return MatrixSymbol::identity(model, band);
  if (kind == "file") {
    const MatrixSymbol s = read_symbol_file(spec.substr(5));
    if (s.model() != model)
      throw ConfigError("symbol file is for " + s.model().name() + ", requested group " + model.name());
    return s.band() > band ? s.truncated(band) : s;
  }
  if (kind == "riesz") {
    if (parts.size() != 2) throw ConfigError("expected riesz:Dj");
    return riesz_symbol(model, frame_direction(model, parts[1]), band);
  }
  if (kind == "laplacian-function") {
    const auto f = laplacian_function_profile(spec);
    return MatrixSymbol::scalar(model, band, [&](const IrrepLabel& l) { return f(casimir_lambda(l)); });
  }
  if (kind == "vf-inverse") {
    if (!model.is_su2()) throw ConfigError("vf-inverse is available on su2 only");
    if (parts.size() != 3) throw ConfigError("expected vf-inverse:Dj:c");
    VectorFieldSpec X(frame_direction(model, parts[1]), band);
    return invert_vf_symbol(X, parse_complex(parts[2]), band);
  }
  if (model.is_torus()) return torus_expression(model, spec, band);
  throw ConfigError("unknown symbol builder '" + spec +
                    "' (su2 accepts identity, riesz:Dj, laplacian-function:NAME, vf-inverse:Dj:c, file:PATH)");
}

MatrixSymbol read_symbol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file '" + path + "'");
  std::optional<GroupModel> model;
  int band = -1;
  MatrixSymbol out;
  std::vector<bool> seen;
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& what) {
    return ConfigError("symbol file '" + path + "' line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    std::string head;
    is >> head;
    if (head == "group" || head == "band") {
      if (out.band() >= 0) throw bad("header after records");
      std::string v;
      if (!(is >> v)) throw bad("missing value for " + head);
      try {
        if (head == "group") model = GroupModel::parse(v);
        else band = std::stoi(v);
      } catch (const std::exception& e) {
        throw bad(e.what());
      }
      continue;
    }
    if (!model || band < 0) throw bad("records before the group/band header");
    if (out.band() < 0) {
      out = MatrixSymbol(*model, band);
      seen.assign(out.label_count(), false);
    }
    IrrepLabel label;
    try {
      if (model->is_su2()) {
        label = IrrepLabel::su2(std::stoi(head));
      } else {
        std::vector<int> k;
        for (const auto& s : split(head, ',')) k.push_back(std::stoi(s));
        if (static_cast<int>(k.size()) != model->torus_dim()) throw bad("label '" + head + "' has wrong length");
        label = IrrepLabel::torus(k);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw bad("malformed label '" + head + "'");
    }
    if (!out.contains(label)) throw bad("label " + head + " outside band " + std::to_string(band));
    const std::size_t idx = out.index_of(label);
    if (seen[idx]) throw bad("duplicate label " + head);
    seen[idx] = true;
    int d = 0;
    if (!(is >> d) || d != out.dim_at(idx)) throw bad("dimension for label " + head + " must be " + std::to_string(out.dim_at(idx)));
    auto block = out.block(idx);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double re = 0.0, im = 0.0;
        if (!(is >> re >> im)) throw bad("expected " + std::to_string(2 * d * d) + " numbers for label " + head);
        if (!std::isfinite(re) || !std::isfinite(im)) throw bad("non-finite entry for label " + head);
        block(r, c) = Complex(re, im);
      }
    std::string extra;
    if (is >> extra) throw bad("trailing data '" + extra + "'");
  }
  if (!model || band < 0) throw ConfigError("symbol file '" + path + "' lacks the group/band header");
  if (out.band() < 0) out = MatrixSymbol(*model, band);
  return out;
}

void write_symbol_file(const MatrixSymbol& sigma, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write symbol file '" + path + "'");
  out << "group " << sigma.model().name() << "\nband " << sigma.band() << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sigma.label_count(); ++i) {
    const IrrepLabel l = sigma.label_at(i);
    if (sigma.model().is_su2()) {
      out << l.twice_spin;
    } else {
      for (std::size_t j = 0; j < l.freq.size(); ++j) out << (j ? "," : "") << l.freq[j];
    }
    const auto b = sigma.block(i);
    out << ' ' << b.rows();
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) out << ' ' << b(r, c).real() << ' ' << b(r, c).imag();
    out << '\n';
  }
}

}  // namespace lpmult::cli
