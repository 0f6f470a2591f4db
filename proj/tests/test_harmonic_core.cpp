#include <doctest.h>

#include <cmath>
#include <random>

#include "lpmult/errors.hpp"
#include "lpmult/fourier.hpp"
#include "lpmult/harmonic_core.hpp"
#include "test_util.hpp"

using namespace lpmult;

TEST_CASE("irrep dimensions and Casimir values") {
  CHECK(irrep_dimension(IrrepLabel::su2(0)) == 1);
  CHECK(irrep_dimension(IrrepLabel::su2(2)) == 3);
  CHECK(irrep_dimension(IrrepLabel::torus({5, -3})) == 1);
  CHECK(casimir_lambda(IrrepLabel::su2(0)) == 0.0);
  CHECK(casimir_lambda(IrrepLabel::su2(1)) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(casimir_lambda(IrrepLabel::torus({1, 0, 0})) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(bracket(IrrepLabel::su2(1)) == 1.0);
  CHECK(bracket(IrrepLabel::su2(2)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("group models") {
  CHECK(GroupModel::su2().kappa() == 2);
  CHECK(GroupModel::torus(3).kappa() == 2);
  CHECK(GroupModel::torus(4).kappa() == 4);
  CHECK(GroupModel::torus(1).kappa() == 2);
  for (int n = 1; n <= 9; ++n) {
    const int k = GroupModel::torus(n).kappa();
    CHECK(k % 2 == 0);
    CHECK(2 * k > n);
    CHECK(2 * k <= 4 + n);
  }
  CHECK(GroupModel::parse("torus-3") == GroupModel::torus(3));
  CHECK(GroupModel::parse("su2").is_su2());
  CHECK(GroupModel::su2().rank() == 1);
}

TEST_CASE("wigner matrices: closed forms") {
  CHECK((wigner_matrix(2, {0, 0, 0}) - CMatrix::Identity(3, 3)).norm() < 1e-14);
  const double th = 0.7;
  const CMatrix d = wigner_matrix(1, {0, th, 0});
  CHECK(std::abs(d(0, 0) - std::cos(th / 2)) < 1e-14);
  CHECK(std::abs(d(0, 1) - std::sin(th / 2)) < 1e-14);
  CHECK(std::abs(d(1, 0) + std::sin(th / 2)) < 1e-14);
  CHECK(std::abs(d(1, 1) - std::cos(th / 2)) < 1e-14);
  for (double t : {0.3, 1.1, 2.9}) {
    CHECK(std::abs(wigner_matrix(2, {0, t, 0}).trace() - (1.0 + 2.0 * std::cos(t))) < 1e-13);
    for (int L = 0; L <= 12; ++L) {
      const double chi = std::sin((L + 1) * t / 2) / std::sin(t / 2);
      CHECK(std::abs(wigner_matrix(L, {0, t, 0}).trace() - chi) < 1e-9);
    }
  }
  CHECK_THROWS(wigner_matrix(1, {7.0, 0.1, 0.1}));
  CHECK_THROWS(wigner_matrix(1, {0.1, 3.5, 0.1}));
}

TEST_CASE("wigner matrices: explicit sum, ladder, unitarity, homomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Su2Element g = test::random_su2(rng), h = test::random_su2(rng);
    const EulerAngles eg = g.to_euler(), eh = h.to_euler(), egh = (g * h).to_euler();
    CHECK(std::abs(Su2Element::from_euler(eg).a - g.a) < 1e-12);
    CHECK(std::abs(Su2Element::from_euler(eg).b - g.b) < 1e-12);
    const auto lad = wigner_ladder(16, g);
    for (int L = 0; L <= 16; ++L) {
      const CMatrix x = wigner_matrix(L, eg);
      CHECK((x - lad[static_cast<std::size_t>(L)]).norm() < 1e-11);
      CHECK((x * x.adjoint() - CMatrix::Identity(L + 1, L + 1)).norm() < 1e-10);
      CHECK((wigner_matrix(L, egh) - x * wigner_matrix(L, eh)).norm() < 1e-9);
    }
  }
  const CMatrix fund = wigner_matrix(1, Su2Element::from_euler({1.0, 0.4, 2.0}).to_euler());
  const auto m = Su2Element::from_euler({1.0, 0.4, 2.0}).matrix();
  CHECK((fund - CMatrix(m)).norm() < 1e-13);
}

TEST_CASE("grids: weights and Schur orthogonality") {
  auto t1 = build_grid(GroupModel::torus(1), 2);
  CHECK(t1->size() == 5);
  for (double w : t1->weights()) CHECK(w == doctest::Approx(0.2));
  CHECK_THROWS(build_grid(GroupModel::su2(), 0));

  const int B = 4;
  auto g = build_grid(GroupModel::su2(), B);
  double wsum = 0.0;
  for (double w : g->weights()) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-12);

  std::vector<std::vector<CMatrix>> mats(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) mats[i] = wigner_ladder(B, g->element(i));
  double worst = 0.0;
  for (int L = 0; L <= B; ++L)
    for (int Lp = 0; Lp <= B; ++Lp)
      for (int a = 0; a <= L; ++a)
        for (int b = 0; b <= L; ++b)
          for (int c = 0; c <= Lp; ++c)
            for (int d = 0; d <= Lp; ++d) {
              Complex s = 0.0;
              for (std::size_t i = 0; i < g->size(); ++i)
                s += g->weights()[i] * mats[i][static_cast<std::size_t>(L)](a, b) *
                     std::conj(mats[i][static_cast<std::size_t>(Lp)](c, d));
              const double expect = (L == Lp && a == c && b == d) ? 1.0 / (L + 1) : 0.0;
              worst = std::max(worst, std::abs(s - expect));
            }
  CHECK(worst < 1e-10);
}

TEST_CASE("fourier transform: oracle examples") {
  auto g = build_grid(GroupModel::su2(), 4);
  GroupFunction one = sample_su2(g, [](const Su2Element&) { return Complex(1.0, 0.0); });
  MatrixSymbol c = fourier_forward(one, 4);
  CHECK(std::abs(c.su2(0)(0, 0) - 1.0) < 1e-12);
  for (int L = 1; L <= 4; ++L) CHECK(c.su2(L).norm() < 1e-12);

  GroupFunction chi = sample_su2(g, [](const Su2Element& x) { return Complex(x.trace(), 0.0); });
  MatrixSymbol cc = fourier_forward(chi, 4);
  CHECK((cc.su2(1) - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-12);
  for (int L : {0, 2, 3, 4}) CHECK(cc.su2(L).norm() < 1e-12);
  CHECK_THROWS_AS(fourier_forward(chi, 5), ResolutionError);

  // single coefficient I/d gives the character back
  MatrixSymbol single(GroupModel::su2(), 3);
  single.su2(3) = CMatrix::Identity(4, 4) / 4.0;
  GroupFunction f = fourier_inverse(single, g);
  for (std::size_t i = 0; i < g->size(); i += 37) {
    const double t = 2.0 * std::acos(std::clamp(g->element(i).a.real(), -1.0, 1.0));
    const double chi3 = std::abs(std::sin(t / 2)) < 1e-9 ? 4.0 : std::sin(2 * t) / std::sin(t / 2);
    CHECK(std::abs(f.samples[i] - chi3) < 1e-9);
  }
  CHECK(plancherel_norm(cc) == doctest::Approx(1.0).epsilon(1e-12));

  auto t3 = build_grid(GroupModel::torus(3), 3);
  GroupFunction e = sample_torus(t3, [](const std::vector<double>& x) {
    return std::polar(1.0, 2.0 * kPi * (2 * x[0] - x[1] + 3 * x[2]));
  });
  MatrixSymbol ce = fourier_forward(e, 3);
  const int k0[3] = {2, -1, 3};
  for (std::size_t i = 0; i < ce.label_count(); ++i) {
    const double expect = (i == ce.torus_index(k0)) ? 1.0 : 0.0;
    CHECK(std::abs(ce.data()[i] - expect) < 1e-12);
  }
}

TEST_CASE("fourier transform: roundtrip and Plancherel") {
  std::mt19937_64 rng(5);
  for (const auto& [model, band] : {std::pair{GroupModel::su2(), 8}, std::pair{GroupModel::torus(3), 6}}) {
    auto g = build_grid(model, band);
    MatrixSymbol c = test::random_symbol(model, band, rng);
    GroupFunction f = fourier_inverse(c, g);
    CHECK(c.max_hs_diff(fourier_forward(f, band), band) < 1e-9);
    CHECK(std::abs(l2_norm(f) - plancherel_norm(c)) < 1e-9 * plancherel_norm(c));
  }
}

TEST_CASE("class grid agrees with the Euler grid on central functions") {
  MatrixSymbol c(GroupModel::su2(), 10);
  for (int L = 0; L <= 10; ++L) c.su2(L) = Complex(0.3 * L - 1.0, 0.1 * L) * CMatrix::Identity(L + 1, L + 1);
  auto cg = build_class_grid(10);
  MatrixSymbol back = fourier_forward(fourier_inverse(c, cg), 10);
  CHECK(c.max_hs_diff(back, 10) < 1e-10);
  auto eg = build_grid(GroupModel::su2(), 10);
  CHECK(std::abs(l2_norm(fourier_inverse(c, cg)) - l2_norm(fourier_inverse(c, eg))) < 1e-9);
}

TEST_CASE("sobolev norm weights") {
  MatrixSymbol c(GroupModel::su2(), 3);
  c.su2(0)(0, 0) = 2.0;
  CHECK(sobolev_norm(c, 3.0) == doctest::Approx(plancherel_norm(c)));
  MatrixSymbol d(GroupModel::su2(), 3);
  d.su2(2)(1, 1) = 1.0;
  CHECK(sobolev_norm(d, 2.0) == doctest::Approx(2.0 * plancherel_norm(d)));
  CHECK(sobolev_norm(d, 0.0) == doctest::Approx(plancherel_norm(d)));
}
