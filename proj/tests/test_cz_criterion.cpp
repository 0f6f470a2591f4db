#include <doctest.h>

#include <cmath>
#include <random>

#include "lpmult/central_weyl.hpp"
#include "lpmult/cz_criterion.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/symbol_calculus.hpp"
#include "test_util.hpp"

using namespace lpmult;

TEST_CASE("plateau bump") {
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(0.5) == 1.0);
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(1.5) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = bump(0.5 + 0.005 * i);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
  // flat to all orders at the splice points
  CHECK(1.0 - bump(0.51) < 1e-20);
  CHECK(bump(0.99) < 1e-20);
}

TEST_CASE("mollifiers on the class grid") {
  auto grid = build_class_grid(64, 800);
  const Mollifier m = build_phi_r(grid, 0.01);
  CHECK(std::abs(integrate(m.phi) - 1.0) < 1e-12);
  for (auto v : m.phi.samples) CHECK(v.real() >= 0.0);
  const GroupFunction psi = build_psi_r(grid, 0.01);
  CHECK(std::abs(integrate(psi)) < 1e-12);
  // tails: order one inside the support, zero past it
  CHECK(mollifier_tail(grid, 0.01, 0.01 / 8) > 0.1);
  CHECK(mollifier_tail(grid, 0.01, 0.1) == 0.0);
  CHECK(mollifier_tail(grid, 0.01, 0.0101) == 0.0);
  // resolution guard names the smallest usable r
  auto coarse = build_class_grid(16, 200);
  CHECK_THROWS_AS(build_phi_r(coarse, 0.001), ResolutionError);
  CHECK(smallest_resolved_r(*coarse) > 0.001);
  CHECK_NOTHROW(build_phi_r(coarse, smallest_resolved_r(*coarse) * 1.01));
}

TEST_CASE("psi_r is central") {
  // Exact on the class grid by construction; on the Euler grid the
  // off-scalar part is quadrature error of a non-band-limited function and
  // shrinks as the grid is refined.
  auto off_scalar = [](int grid_band) {
    auto grid = build_grid(GroupModel::su2(), grid_band);
    const MatrixSymbol c = fourier_forward(build_psi_r(grid, 0.9), 12);
    double off = 0.0, size = 0.0;
    for (int L = 0; L <= 12; ++L) {
      const CMatrix b = c.su2(L);
      const Complex s = b.trace() / double(L + 1);
      off = std::max(off, (b - s * CMatrix::Identity(L + 1, L + 1)).norm());
      size = std::max(size, b.norm());
    }
    return off / size;
  };
  const double coarse = off_scalar(40), fine = off_scalar(64);
  CHECK(fine < 1e-4);
  CHECK(fine < 0.2 * coarse);
}

TEST_CASE("mollifier scaling") {
  const auto ladder = default_ladder();
  const auto c = mollifier_constant_slope(ladder);
  REQUIRE(c.fit);
  CHECK(c.fit->slope == doctest::Approx(-1.0).epsilon(0.15));
  CHECK(c.fit->r2 >= 0.98);
  CHECK(c.pass);
  CHECK(mollifier_l2_slope(ladder).pass);
  CHECK(psi_l2_slope(ladder).pass);
  CHECK_THROWS_AS(mollifier_constant_slope({0.1, 0.05, 0.02}), ResolutionError);
}

TEST_CASE("l1 modulus of continuity") {
  auto grid = build_grid(GroupModel::su2(), 72);
  const double x3[3] = {0.0, 0.0, 1.0};
  const double x1[3] = {0.6, 0.0, 0.8};
  CHECK(l1_modulus(grid, 0.1, Su2Element{}) == 0.0);
  std::vector<double> ratios;
  for (double r : {0.1, 0.05})
    for (double t : {0.02, 0.05, 0.1}) {
      for (const double* ax : {x3, x1}) {
        const Su2Element h = Su2Element::exp_frame(ax, t);
        const double rho = std::sqrt(su2_rho_squared(h));
        ratios.push_back(l1_modulus(grid, r, h) / (rho / std::cbrt(r)));
      }
    }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 2.0);
  auto tg = build_grid(GroupModel::torus(2), 80);
  CHECK(l1_modulus(tg, 0.1, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(l1_modulus(tg, 0.1, std::vector<double>{0.01, 0.0}) > 0.0);
}

TEST_CASE("negative Sobolev decay") {
  const auto ladder = default_ladder();
  const auto one = negative_sobolev_decay(VanishingFactor::one, 0.0, ladder);
  CHECK(one.pass);
  CHECK(one.target == doctest::Approx(-0.5));
  const auto rho2 = negative_sobolev_decay(VanishingFactor::rho_squared, 0.0, ladder);
  REQUIRE(rho2.fit);
  CHECK(std::abs(rho2.fit->slope - 1.0 / 6.0) < 0.1);
  CHECK(rho2.pass);
  const auto xi = negative_sobolev_decay(VanishingFactor::xi12, 1.0, ladder);
  CHECK(xi.target == doctest::Approx(1.0 / 6.0));
  CHECK(xi.pass);
  CHECK_THROWS_AS(negative_sobolev_decay(VanishingFactor::one, 3.0, ladder), MathInputError);
}

TEST_CASE("xi12 norms by conjugation symmetry match the Euler grid") {
  // Central band-limited G, exact on a grid of band 2 * 7 + 1.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto G = CentralSequence::from_function(7, [&](int) { return Complex(n(rng), 0.0); });
  auto grid = build_grid(GroupModel::su2(), 16);
  GroupFunction g = fourier_inverse(G.as_symbol(), grid);
  GroupFunction bg = g, ag = g;
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    const Su2Element e = grid->element(i);
    bg.samples[i] *= e.b;
    ag.samples[i] *= e.a;
  }
  const MatrixSymbol cb = fourier_forward(bg, 6), ca = fourier_forward(ag, 6);
  const DiagonalSymbol D = DiagonalSymbol::from_function(7, [&](int L, int) { return G.value(L); });
  const DiagonalSymbol aD = multiply_by_fundamental(D, 1), x0D = multiply_by_fundamental(D, 0);
  for (int L = 0; L <= 6; ++L) {
    double pa = 0.0, p0 = 0.0;
    for (Complex v : aD.diagonal(L)) pa += std::norm(v);
    for (Complex v : x0D.diagonal(L)) p0 += 0.25 * std::norm(v);
    CHECK(cb.su2(L).squaredNorm() == doctest::Approx(2.0 * (pa - p0)).epsilon(1e-9));
    CHECK(ca.su2(L).squaredNorm() == doctest::Approx(pa).epsilon(1e-9));
  }
}

TEST_CASE("diagonal route agrees with the generator route") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = DiagonalSymbol::from_function(12, [&](int, int) { return Complex(n(rng), n(rng)); });
  const MatrixSymbol full = d.to_matrix_symbol(12);
  const MatrixSymbol A = laplace_difference_by_generators(full);
  const DiagonalSymbol Ad = laplace_difference_diagonal(d);
  CHECK(A.max_hs_diff(Ad.to_matrix_symbol(Ad.band()), Ad.band()) < 1e-10);
  CHECK(DiagonalSymbol::from_matrix_symbol(riesz_symbol(GroupModel::su2(), {0, 0, 1}, 10))
            .to_matrix_symbol(10)
            .max_hs_diff(diagonal_riesz_d3(10).to_matrix_symbol(10), 10) < 1e-14);
  CHECK_THROWS_AS(DiagonalSymbol::from_matrix_symbol(riesz_symbol(GroupModel::su2(), {1, 0, 0}, 4)), MathInputError);
}

TEST_CASE("CZ probe") {
  const auto ladder = default_ladder();
  const auto id = cz_probe([](int b) { return diagonal_identity(b); }, ladder);
  const auto rho2 = negative_sobolev_decay(VanishingFactor::rho_squared, 0.0, ladder);
  for (std::size_t i = 0; i < ladder.size(); ++i) CHECK(id.ladder.values[i] == doctest::Approx(rho2.values[i]).epsilon(1e-9));
  CHECK(id.m == 1);
  CHECK(id.epsilon == doctest::Approx(1.0 / 3.0));
  const auto riesz = cz_probe([](int b) { return diagonal_riesz_d3(b); }, ladder);
  REQUIRE(riesz.ladder.fit);
  CHECK(riesz.ladder.fit->slope >= 1.0 / 6.0 - 0.1);
  CHECK(riesz.ladder.fit->r2 >= 0.95);
  CHECK(riesz.ladder.pass);
  const auto zero = cz_probe([](int b) { return DiagonalSymbol::from_function(b, [](int, int) { return Complex(0.0); }); },
                             ladder);
  CHECK(zero.ladder.pass);
  CHECK_FALSE(zero.ladder.fit);
  CHECK_THROWS_AS(cz_probe([](int b) { return diagonal_identity(b); }, {0.1, 0.05, 0.02}), ResolutionError);
  // Full-matrix route with a small override band agrees with the truncated diagonal computation.
  const MatrixSymbol rz = riesz_symbol(GroupModel::su2(), {0, 0, 1}, 14);
  const auto gen = cz_probe(rz, {0.3, 0.25, 0.2, 0.15}, 12);
  CHECK(gen.ladder.values.size() == 4);
  CHECK_THROWS_AS(cz_probe(rz, ladder), ResolutionError);
}

TEST_CASE("A-Leibniz bound holds per label") {
  std::mt19937_64 rng(21);
  const auto s = test::random_symbol(GroupModel::su2(), 10, rng);
  const auto t = test::random_symbol(GroupModel::su2(), 10, rng);
  CHECK(leibniz_bound_excess(s, t) <= 1e-10);
  const auto p = psi_hat(0.05, 10);
  MatrixSymbol ps(GroupModel::su2(), 10);
  for (int L = 0; L <= 10; ++L) ps.su2(L) = p[static_cast<std::size_t>(L)] * CMatrix::Identity(L + 1, L + 1);
  CHECK(leibniz_bound_excess(riesz_symbol(GroupModel::su2(), {0.6, 0, 0.8}, 10), ps) <= 1e-10);
}
