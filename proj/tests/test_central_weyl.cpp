#include <doctest.h>

#include <cmath>
#include <random>

#include "lpmult/central_weyl.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/multiplier_check.hpp"
#include "lpmult/symbol_calculus.hpp"

using namespace lpmult;

namespace {

CentralSequence random_central(int max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  return CentralSequence::from_function(max, [&](int) { return Complex(n(rng), n(rng)); });
}

double interior_diff(const MatrixSymbol& a, const CentralSequence& b) {
  double m = 0.0;
  for (int L = 0; L <= b.max_twice_spin(); ++L)
    m = std::max(m, (a.su2(L) - b.value(L) * CMatrix::Identity(L + 1, L + 1)).norm());
  return m;
}

}  // namespace

TEST_CASE("Weyl dimension on the extended lattice") {
  CHECK(weyl_dimension({0}) == 1.0);
  CHECK(weyl_dimension({4}) == 5.0);
  CHECK(weyl_dimension({-1}) == 0.0);
  for (int w = 0; w < 12; ++w) {
    const WeightLatticePoint p{w};
    CHECK(weyl_dimension(p.reflected()) == -weyl_dimension(p));
  }
}

TEST_CASE("Weyl character formula") {
  for (int w = 0; w <= 8; ++w) CHECK(weyl_character({w}, 1e-12) == doctest::Approx(w + 1.0));
  for (double t : {0.3, 1.7, 3.0, 5.5}) {
    CHECK(weyl_character({1}, t) == doctest::Approx(2.0 * std::cos(0.5 * t)));
    for (int w = 0; w <= 12; ++w) {
      const Complex tr = wigner_matrix(w, {t, 0.0, 0.0}).trace();
      CHECK(std::abs(tr - weyl_character({w}, t)) < 1e-9);
      CHECK(weyl_character(WeightLatticePoint{w}.reflected(), t) == doctest::Approx(-weyl_character({w}, t)));
    }
  }
  // Limits at singular angles t = 2 pi k.
  CHECK(weyl_character({3}, 2 * kPi) == doctest::Approx(-4.0));
  CHECK(weyl_character({4}, 2 * kPi) == doctest::Approx(5.0));
}

TEST_CASE("orbit sums and character orthogonality") {
  const auto chi = [](int w, double t) { return weyl_character({w}, t); };
  for (int k = 0; k < 40; ++k) {
    const double t = 0.05 + k * 0.157;
    for (int w = 0; w <= 10; ++w) {
      // Orbit {w, -w}; {0} for w = 0.
      const double lhs = w == 0 ? chi(0, t) : chi(w, t) + chi(-w, t);
      const double rhs = w == 0 ? 1.0 : 2.0 * std::cos(0.5 * w * t);
      CHECK(std::abs(lhs - rhs) < 1e-9);
      for (int ws = 0; ws <= 10; ++ws) {
        const double l2 = w == 0 ? chi(0, t) * chi(ws, t) : (chi(w, t) + chi(-w, t)) * chi(ws, t);
        const double r2 = w == 0 ? chi(ws, t) : chi(ws + w, t) + chi(ws - w, t);
        CHECK(std::abs(l2 - r2) < 1e-9);
      }
    }
  }
  auto grid = build_class_grid(24);
  for (int a = -12; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b) {
      GroupFunction f{grid, std::vector<Complex>(grid->size()), std::nullopt};
      for (std::size_t i = 0; i < grid->size(); ++i) f.samples[i] = chi(a, grid->class_angle(i)) * chi(b, grid->class_angle(i));
      double expect = 0.0;
      if (a == b) expect = 1.0;
      if (WeightLatticePoint{b}.reflected().twice_weight == a) expect = -1.0;
      CHECK(std::abs(integrate(f) - expect) < 1e-9);
    }
}

TEST_CASE("delta2 bridges to the A difference") {
  const auto s = random_central(24, 3);
  const auto d2 = delta2(s);
  CHECK(d2.max_twice_spin() == 22);
  CHECK(interior_diff(laplace_difference(s.as_symbol()), d2) < 1e-9);
  CHECK(interior_diff(laplace_difference_by_generators(s.as_symbol()), d2) < 1e-9);
  CHECK(delta2_by_quadrature(s).max_abs_diff(d2) < 1e-9);
  // Constants are annihilated everywhere.
  const auto c = CentralSequence::from_function(20, [](int) { return Complex(2.5, -1.0); });
  const auto dc = delta2(c);
  for (auto v : dc.values()) CHECK(std::abs(v) < 1e-12);
  // 1/d has d s = 1, annihilated at interior labels.
  const auto inv = CentralSequence::from_function(20, [](int L) { return Complex(1.0 / (L + 1)); });
  const auto r = delta2(inv);
  for (int L = 2; L <= r.max_twice_spin(); ++L) CHECK(std::abs(r.value(L)) < 1e-12);
  CHECK_THROWS_AS(delta2(CentralSequence({1.0, 2.0})), MathInputError);
}

TEST_CASE("N. Weiss difference") {
  std::vector<Complex> d(41);
  for (int L = 0; L <= 40; ++L) d[static_cast<std::size_t>(L)] = weyl_dimension({L});
  for (auto v : nweiss_lattice(d)) CHECK(std::abs(v) < 1e-10);
  const auto one = CentralSequence::from_function(40, [](int) { return Complex(1.0); });
  const auto n1 = nweiss_delta(one);
  for (auto v : n1.values()) CHECK(std::abs(v) < 1e-10);
  CHECK(nweiss_by_quadrature(one).max_abs_diff(nweiss_delta(one)) < 1e-9);
  const auto sq = CentralSequence::from_function(20, [](int L) { return Complex(0.25 * L * L); });
  const auto q = nweiss_delta(sq);
  CHECK(q.max_abs_diff(nweiss_by_quadrature(sq)) < 1e-9);
  CHECK(std::abs(q.value(6)) > 0.1);
  const auto s = random_central(17, 9);
  CHECK(nweiss_delta(s).max_abs_diff(nweiss_by_quadrature(s)) < 1e-9);
}

TEST_CASE("hypoellipticity of the dimension") {
  const auto r1 = hypoellipticity_ratio(1, 200);
  CHECK(r1.max_ratio <= 1.0 + 1e-12);
  CHECK(r1.max_ratio == doctest::Approx(r1.max_ratio_half));
  const auto r2 = hypoellipticity_ratio(2, 200);
  CHECK(r2.max_ratio == 0.0);
  CHECK(r1.dimension_bound == doctest::Approx(3.0 / std::sqrt(2.0)));
}

TEST_CASE("Riesz symbols") {
  const auto s = riesz_symbol(GroupModel::su2(), {0, 0, 1}, 44);
  CHECK(s.su2(0).norm() == 0.0);
  const double lam = std::sqrt(2.0);
  CHECK(std::abs(s.su2(2)(0, 0) - Complex(0, 1.0 / lam)) < 1e-12);
  CHECK(std::abs(s.su2(2)(2, 2) - Complex(0, -1.0 / lam)) < 1e-12);
  CHECK(op_norm(s.su2(2)) == doctest::Approx(1.0 / lam));
  const auto g = riesz_symbol(GroupModel::su2(), {0.6, 0.0, -0.8}, 44);
  CHECK(g.max_op_norm(44) <= 1.0 + 1e-10);
  CHECK(check_mikhlin(s, 40).pass);
  CHECK(check_mikhlin(g, 40).pass);
  CHECK_THROWS_AS(riesz_symbol(GroupModel::su2(), {0, 0, 2}, 4), MathInputError);
  const auto t = riesz_symbol(GroupModel::torus(2), {1, 0}, 4);
  const int k[2] = {3, 4};
  CHECK(std::abs(t.at(k) - Complex(0, 0.6)) < 1e-12);
}

TEST_CASE("functions of the Laplacian") {
  const auto one = function_of_laplacian([](double) { return Complex(1.0); }, 10);
  for (auto v : one.values()) CHECK(v == Complex(1.0));
  const auto res = function_of_laplacian([](double l) { return Complex(1.0 / (1.0 + l)); }, 10);
  for (int L = 0; L <= 10; ++L) CHECK(std::abs(res.value(L) - 1.0 / (1.0 + 0.25 * L * (L + 2))) < 1e-15);
  const auto imag = [](double l) { return std::exp(Complex(0, 1) * std::log(l)); };
  CHECK_THROWS_AS(function_of_laplacian(imag, 10), MathInputError);
  const auto p = function_of_laplacian(imag, 44, Complex(0.0));
  CHECK(p.value(0) == Complex(0.0));
  CHECK(check_mikhlin(p.as_symbol(), 40).pass);
}
