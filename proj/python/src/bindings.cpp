#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli/builders.hpp"
#include "cli/commands.hpp"
#include "lpmult/central_weyl.hpp"
#include "lpmult/cz_criterion.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/multiplier_check.hpp"
#include "lpmult/symbol_calculus.hpp"
#include "lpmult/vf_inverse.hpp"

namespace py = pybind11;
using namespace lpmult;

namespace {

// Reports cross the boundary as JSON text; the Python layer decodes them.
std::string dump(const cli::Json& j) { return j.dump(); }

py::array_t<Complex> block_array(const MatrixSymbol& s, std::size_t i) {
  const auto b = s.block(i);
  py::array_t<Complex> a({b.rows(), b.cols()});
  auto r = a.mutable_unchecked<2>();
  for (Eigen::Index x = 0; x < b.rows(); ++x)
    for (Eigen::Index y = 0; y < b.cols(); ++y) r(x, y) = b(x, y);
  return a;
}

cli::RunConfig config_from(const py::dict& d) {
  cli::RunConfig c;
  for (const auto& [key, value] : d) {
    const std::string k = py::cast<std::string>(key);
    if (k == "group") c.group = py::cast<std::string>(value);
    else if (k == "band") c.band = py::cast<int>(value);
    else if (k == "range") c.range = py::cast<int>(value);
    else if (k == "symbol") c.symbol = py::cast<std::string>(value);
    else if (k == "checkers") c.checkers = py::cast<std::vector<std::string>>(value);
    else if (k == "symbol_class") c.symbol_class = py::cast<std::string>(value);
    else if (k == "ladder") c.ladder = py::cast<std::string>(value);
    else if (k == "seed") c.seed = py::cast<std::uint64_t>(value);
    else if (k == "lp_trials") c.lp_trials = py::cast<int>(value);
    else if (k == "field") c.field = py::cast<std::string>(value);
    else if (k == "c") c.c = py::cast<std::string>(value);
    else if (k == "bound") c.bound = py::cast<double>(value);
    else if (k == "recursion_check") c.recursion_check = py::cast<bool>(value);
    else if (k == "q") c.q = py::cast<std::string>(value);
    else if (k == "s") c.s = py::cast<double>(value);
    else throw cli::ConfigError("unknown config key '" + k + "'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier multiplier checks on SU(2) and tori";

  auto base = py::register_exception<MathInputError>(m, "MathInputError", PyExc_ValueError);
  py::register_exception<ExceptionalParameterError>(m, "ExceptionalParameterError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_RuntimeError);

  py::class_<GroupModel>(m, "GroupModel")
      .def_static("su2", &GroupModel::su2)
      .def_static("torus", &GroupModel::torus, py::arg("n"))
      .def_static("parse", [](const std::string& s) { return GroupModel::parse(s); })
      .def_property_readonly("name", &GroupModel::name)
      .def_property_readonly("kappa", &GroupModel::kappa)
      .def_property_readonly("dimension", &GroupModel::dimension)
      .def("__eq__", &GroupModel::operator==)
      .def("__repr__", [](const GroupModel& g) { return "GroupModel('" + g.name() + "')"; });

  py::class_<MatrixSymbol>(m, "MatrixSymbol")
      .def_property_readonly("model", &MatrixSymbol::model)
      .def_property_readonly("band", &MatrixSymbol::band)
      .def("__len__", &MatrixSymbol::label_count)
      .def("labels", [](const MatrixSymbol& s) {
        py::list out;
        for (std::size_t i = 0; i < s.label_count(); ++i) {
          const IrrepLabel l = s.label_at(i);
          if (l.is_torus()) out.append(py::tuple(py::cast(l.freq)));
          else out.append(l.twice_spin);
        }
        return out;
      })
      .def("block", [](const MatrixSymbol& s, std::size_t i) {
        if (i >= s.label_count()) throw py::index_error("label index out of range");
        return block_array(s, i);
      })
      .def("su2_block", [](const MatrixSymbol& s, int L) {
        if (!s.model().is_su2() || L < 0 || L > s.band()) throw py::index_error("twice_spin out of range");
        return block_array(s, static_cast<std::size_t>(L));
      })
      .def("max_op_norm", &MatrixSymbol::max_op_norm, py::arg("upto"))
      .def("max_hs_diff", &MatrixSymbol::max_hs_diff, py::arg("other"), py::arg("upto"));

  m.def("build_symbol", &cli::build_symbol, py::arg("model"), py::arg("spec"), py::arg("band"),
        "Named builder, torus expression or file:PATH");
  m.def("read_symbol_file", &cli::read_symbol_file);
  m.def("write_symbol_file", &cli::write_symbol_file);
  m.def("riesz_symbol", &riesz_symbol, py::arg("model"), py::arg("Z"), py::arg("band"));
  m.def("vector_field_symbol", &vector_field_symbol_exact, py::arg("model"), py::arg("X"), py::arg("band"));
  m.def("laplace_difference", &laplace_difference);
  m.def("symbol_product", &symbol_product);

  m.def("_check", [](const MatrixSymbol& s, const std::string& checker, int range, double m_, double rho, int order) {
    MultiplierReport r;
    if (checker == "mikhlin") r = check_mikhlin(s, range);
    else if (checker == "refined") r = check_refined(s, range);
    else if (checker == "torus3") r = check_torus3(s, range);
    else if (checker == "symbol-class") r = check_symbol_class(s, {m_, rho, order}, range);
    else throw cli::ConfigError("unknown checker '" + checker + "'");
    return dump(cli::to_json(r));
  });
  m.def("required_band", &required_band, py::arg("model"), py::arg("checker"), py::arg("range"),
        py::arg("max_order") = -1);

  m.def("exceptional_set", [](const std::vector<double>& X, double bound) {
    VectorFieldSpec spec(X, 2);
    return exceptional_set(spec, bound);
  });
  m.def("invert_vf_symbol", [](const std::vector<double>& X, Complex c, int band) {
    VectorFieldSpec spec(X, band);
    return invert_vf_symbol(spec, c, band);
  });
  m.def("recursion_residual", [](const std::vector<double>& X, Complex c, int j, int band) {
    VectorFieldSpec spec(X, band);
    return recursion_residual(spec, c, j, band).max();
  });

  m.def("delta2", [](const std::vector<Complex>& s) { return delta2(CentralSequence(s)).values(); });
  m.def("nweiss_delta", [](const std::vector<Complex>& s) { return nweiss_delta(CentralSequence(s)).values(); });
  m.def("delta2_by_quadrature",
        [](const std::vector<Complex>& s) { return delta2_by_quadrature(CentralSequence(s)).values(); });

  m.def("default_ladder", &default_ladder);
  m.def("_ladder", [](const std::string& which, const std::vector<double>& ladder, const std::string& q, double s) {
    LadderReport r;
    if (which == "c_r") r = mollifier_constant_slope(ladder);
    else if (which == "phi_l2") r = mollifier_l2_slope(ladder);
    else if (which == "psi_l2") r = psi_l2_slope(ladder);
    else if (which == "sobolev") r = negative_sobolev_decay(parse_vanishing_factor(q), s, ladder);
    else if (which == "cz_riesz") r = cz_probe(diagonal_riesz_d3, ladder).ladder;
    else throw cli::ConfigError("unknown ladder '" + which + "'");
    return dump(cli::to_json(r));
  });

  m.def("_run_command", [](const std::string& name, const py::dict& cfg) {
    const cli::RunConfig c = config_from(cfg);
    cli::CommandResult r;
    if (name == "check") r = cli::cmd_check(c);
    else if (name == "invert") r = cli::cmd_invert(c);
    else if (name == "probe") r = cli::cmd_probe(c);
    else if (name == "fourier-selftest") r = cli::cmd_fourier_selftest(c);
    else throw cli::ConfigError("unknown command '" + name + "'");
    return dump(cli::envelope(name, c.to_json(name), r, r.pass ? 0 : 1, nullptr, 0.0));
  });
}
