#include <doctest.h>

#include <cmath>
#include <random>

#include "lpmult/errors.hpp"
#include "lpmult/symbol_calculus.hpp"
#include "test_util.hpp"

using namespace lpmult;

namespace {

const double kD3[3] = {0.0, 0.0, 1.0};

DifferenceWord word_of(std::initializer_list<DifferenceFactor> f) { return DifferenceWord{f}; }

}  // namespace

TEST_CASE("coupling route matches the grid quadrature route on SU(2)") {
  std::mt19937_64 rng(1);
  const MatrixSymbol sigma = test::random_symbol(GroupModel::su2(), 7, rng);
  auto grid = build_grid(GroupModel::su2(), 7);
  for (const auto& g : generators(GroupModel::su2())) {
    const DifferenceWord w = word_of({g});
    CHECK(apply_difference(w, sigma).max_hs_diff(apply_difference_on_grid(w, sigma, grid), 5) < 1e-10);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const DifferenceWord w = word_of({{IrrepLabel::su2(1), i, j}, {IrrepLabel::su2(2), 2 - i, j}});
      const MatrixSymbol a = apply_difference(w, sigma), b = apply_difference_on_grid(w, sigma, grid);
      CHECK(a.band() == 4);
      CHECK(a.max_hs_diff(b, 4) < 1e-10);
    }
}

TEST_CASE("torus shifts match the grid quadrature route") {
  std::mt19937_64 rng(2);
  const GroupModel t3 = GroupModel::torus(3);
  const MatrixSymbol sigma = test::random_symbol(t3, 5, rng);
  auto grid = build_grid(t3, 5);
  for (const auto& g : generators(t3)) {
    const DifferenceWord w = word_of({g, generators(t3)[2]});
    CHECK(apply_difference(w, sigma).max_hs_diff(apply_difference_on_grid(w, sigma, grid), 3) < 1e-10);
  }
  CHECK_THROWS_AS(apply_difference_on_grid(word_of({generators(t3)[0]}), sigma, build_grid(t3, 3)), ResolutionError);
}

TEST_CASE("differences annihilate the identity symbol and compose associatively") {
  for (const GroupModel& m : {GroupModel::su2(), GroupModel::torus(2)}) {
    const MatrixSymbol id = MatrixSymbol::identity(m, 10);
    for (const auto& g : generators(m)) CHECK(apply_difference(g, id).max_op_norm(100) < 1e-12);
  }
  std::mt19937_64 rng(3);
  const MatrixSymbol sigma = test::random_symbol(GroupModel::su2(), 10, rng);
  const auto gens = generators(GroupModel::su2());
  const DifferenceWord a = word_of({gens[1], gens[4]}), b = word_of({gens[6]});
  DifferenceWord ab = a;
  ab.factors.push_back(gens[6]);
  CHECK(apply_difference(b, apply_difference(a, sigma)).max_hs_diff(apply_difference(ab, sigma), 100) < 1e-10);
  // differences commute
  const DifferenceWord ba = word_of({gens[6], gens[1], gens[4]});
  CHECK(apply_difference(ba, sigma).max_hs_diff(apply_difference(ab, sigma), 100) < 1e-10);
}

TEST_CASE("vector field symbols") {
  const MatrixSymbol d3 = vector_field_symbol(GroupModel::su2(), {0, 0, 1}, 6);
  CHECK(d3.su2(0).norm() < 1e-12);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 0) = Complex(0, 1);
  expect(2, 2) = Complex(0, -1);
  CHECK((d3.su2(2) - expect).norm() < 1e-8);
  const MatrixSymbol x = vector_field_symbol(GroupModel::su2(), {0.3, -0.5, 0.8}, 8);
  for (int L = 0; L <= 8; ++L) CHECK((x.su2(L) + x.su2(L).adjoint()).norm() < 1e-8);
  const MatrixSymbol t = vector_field_symbol(GroupModel::torus(2), {1, 0}, 3);
  const int k[2] = {3, -1};
  CHECK(std::abs(t.at(k) - Complex(0, 2 * kPi * 3)) < 1e-8);
  // closed form agrees with the differentiated representation
  const MatrixSymbol ex = vector_field_symbol_exact(GroupModel::su2(), {0.3, -0.5, 0.8}, 8);
  CHECK(ex.max_hs_diff(x, 8) < 1e-8);
  const MatrixSymbol tx = vector_field_symbol_exact(GroupModel::torus(2), {1, 0}, 3);
  CHECK(tx.max_hs_diff(t, 3) < 1e-8);
}

TEST_CASE("differences of a vector field symbol are scalar") {
  // With the xi* transform the kernel of X acts as -X at the identity, so
  // D_ij sigma_X = -(X eta_ij)(1) I for eta the representation defining D.
  const std::vector<double> X = {0.2, 0.7, -0.4};
  const MatrixSymbol sx = vector_field_symbol(GroupModel::su2(), X, 14);
  for (int s : {1, 2}) {
    const MatrixSymbol eta = vector_field_symbol(GroupModel::su2(), X, s);
    for (int i = 0; i <= s; ++i)
      for (int j = 0; j <= s; ++j) {
        const MatrixSymbol d = apply_difference(DifferenceFactor{IrrepLabel::su2(s), i, j}, sx);
        const Complex tau = -eta.su2(s)(i, j);
        for (int L = 0; L <= d.band(); ++L)
          CHECK((d.su2(L) - tau * CMatrix::Identity(L + 1, L + 1)).norm() < 1e-8);
      }
  }
}

TEST_CASE("A: grid route, generator route and stencils") {
  std::mt19937_64 rng(4);
  const MatrixSymbol sigma = test::random_symbol(GroupModel::su2(), 9, rng);
  CHECK(laplace_difference(sigma).max_hs_diff(laplace_difference_by_generators(sigma), 100) < 1e-10);
  CHECK(laplace_difference(MatrixSymbol::identity(GroupModel::su2(), 8)).max_op_norm(100) < 1e-12);

  // central sequences: spin-one second difference of d * s
  MatrixSymbol c(GroupModel::su2(), 16);
  std::vector<double> s(17);
  for (int L = 0; L <= 16; ++L) {
    s[static_cast<std::size_t>(L)] = std::sin(0.4 * L) + 0.1 * L * L;
    c.su2(L) = s[static_cast<std::size_t>(L)] * CMatrix::Identity(L + 1, L + 1);
  }
  const MatrixSymbol a = laplace_difference(c);
  for (int L = 2; L <= 14; ++L) {
    auto tau = [&](int j) { return (j + 1) * s[static_cast<std::size_t>(j)]; };
    const double expect = (2 * tau(L) - tau(L - 2) - tau(L + 2)) / (L + 1);
    CHECK((a.su2(L) - expect * CMatrix::Identity(L + 1, L + 1)).norm() < 1e-9);
  }

  const GroupModel t1 = GroupModel::torus(1);
  const MatrixSymbol sq = MatrixSymbol::scalar(t1, 8, [](const IrrepLabel& l) { return Complex(l.freq[0] * l.freq[0]); });
  const MatrixSymbol asq = laplace_difference(sq);
  for (auto v : asq.data()) CHECK(std::abs(v + 2.0) < 1e-12);
}

TEST_CASE("Leibniz rules on random band-limited symbols") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixSymbol s = test::random_symbol(GroupModel::su2(), 4, rng), t = test::random_symbol(GroupModel::su2(), 4, rng);
    const auto gens = generators(GroupModel::su2());
    CHECK(leibniz_residual(word_of({gens[static_cast<std::size_t>(trial)]}), s, t) < 1e-9);
    CHECK(leibniz_residual(word_of({gens[1], gens[static_cast<std::size_t>(trial + 3)]}), s, t) < 1e-9);
  }
  const GroupModel t3 = GroupModel::torus(3);
  const MatrixSymbol s = test::random_symbol(t3, 3, rng), t = test::random_symbol(t3, 3, rng);
  CHECK(leibniz_residual(word_of({generators(t3)[0], generators(t3)[3]}), s, t) < 1e-9);
  const MatrixSymbol id = MatrixSymbol::identity(GroupModel::su2(), 4);
  CHECK(leibniz_residual(word_of({generators(GroupModel::su2())[0]}), id, id) < 1e-12);
}

TEST_CASE("quantization") {
  std::mt19937_64 rng(8);
  auto grid = build_grid(GroupModel::su2(), 5);
  const MatrixSymbol fh = test::random_symbol(GroupModel::su2(), 5, rng);
  const GroupFunction f = fourier_inverse(fh, grid);
  const GroupFunction same = quantize_apply(MatrixSymbol::identity(GroupModel::su2(), 5), f);
  for (std::size_t i = 0; i < f.samples.size(); ++i) CHECK(std::abs(same.samples[i] - f.samples[i]) < 1e-9);

  // D3 = d/dpsi: compare with a finite difference along exp(t D3)
  const MatrixSymbol d3 = vector_field_symbol(GroupModel::su2(), {0, 0, 1}, 5);
  const GroupFunction df = quantize_apply(d3, f);
  const double h = 1e-5;
  for (std::size_t i = 0; i < grid->size(); i += 53) {
    const Su2Element g = grid->element(i);
    const Complex fd = (evaluate_su2(fh, g * Su2Element::exp_frame(kD3, h)) -
                        evaluate_su2(fh, g * Su2Element::exp_frame(kD3, -h))) / (2 * h);
    CHECK(std::abs(df.samples[i] - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }

  // composition and left invariance
  const MatrixSymbol a = test::random_symbol(GroupModel::su2(), 5, rng), b = test::random_symbol(GroupModel::su2(), 5, rng);
  const GroupFunction lhs = quantize_apply(symbol_product(a, b), f), rhs = quantize_apply(a, quantize_apply(b, f));
  for (std::size_t i = 0; i < f.samples.size(); ++i) CHECK(std::abs(lhs.samples[i] - rhs.samples[i]) < 1e-8);
  const Su2Element h0 = test::random_su2(rng);
  MatrixSymbol moved(GroupModel::su2(), 5);  // coefficients of f(h0 g)
  for (int L = 0; L <= 5; ++L) moved.su2(L) = fh.su2(L) * wigner_ladder(5, h0)[static_cast<std::size_t>(L)];
  const GroupFunction af = fourier_inverse(symbol_product(a, fh), grid);
  const GroupFunction amoved = quantize_apply(a, fourier_inverse(moved, grid));
  for (std::size_t i = 0; i < grid->size(); i += 41) {
    const Complex direct = evaluate_su2(symbol_product(a, fh), h0 * grid->element(i));
    CHECK(std::abs(amoved.samples[i] - direct) < 1e-8);
  }
  (void)af;

  const GroupModel t2 = GroupModel::torus(2);
  auto tg = build_grid(t2, 4);
  const GroupFunction e = sample_torus(tg, [](const std::vector<double>& x) { return std::polar(1.0, 2 * kPi * (x[0] - 2 * x[1])); });
  const MatrixSymbol inv = MatrixSymbol::scalar(t2, 4, [](const IrrepLabel& l) {
    return Complex(1.0 / (1.0 + l.freq[0] * l.freq[0] + l.freq[1] * l.freq[1]));
  });
  const GroupFunction ae = quantize_apply(inv, e);
  for (std::size_t i = 0; i < tg->size(); ++i) CHECK(std::abs(ae.samples[i] - e.samples[i] / 6.0) < 1e-12);
}

TEST_CASE("kernel: convolution property") {
  std::mt19937_64 rng(9);
  auto grid = build_grid(GroupModel::su2(), 2);
  const MatrixSymbol sig = test::random_symbol(GroupModel::su2(), 2, rng), fh = test::random_symbol(GroupModel::su2(), 2, rng);
  const GroupFunction f = fourier_inverse(fh, grid);
  const GroupFunction af = quantize_apply(sig, f);
  // Af(g) = integral f(h) k(h^{-1} g) dh
  for (std::size_t i = 0; i < grid->size(); i += 29) {
    const Su2Element g = grid->element(i);
    Complex s = 0.0;
    for (std::size_t j = 0; j < grid->size(); ++j)
      s += grid->weights()[j] * f.samples[j] * evaluate_su2(sig, grid->element(j).inverse() * g);
    CHECK(std::abs(s - af.samples[i]) < 1e-8);
  }
  const GroupFunction k = symbol_to_kernel(MatrixSymbol::identity(GroupModel::su2(), 2), grid);
  CHECK(fourier_forward(k, 2).max_hs_diff(MatrixSymbol::identity(GroupModel::su2(), 2), 2) < 1e-10);
}

TEST_CASE("distance function") {
  CHECK(su2_rho_squared(Su2Element::identity()) == doctest::Approx(0.0));
  for (double t : {0.1, 1.0, 2.5}) {
    CHECK(su2_rho_squared(Su2Element::exp_frame(kD3, t)) == doctest::Approx(2 - 2 * std::cos(t)).epsilon(1e-12));
  }
  const std::vector<double> x = {0.1, 0.35, 0.8};
  double expect = 6.0;
  for (double v : x) expect -= 2 * std::cos(2 * kPi * v);
  CHECK(torus_rho_squared(x) == doctest::Approx(expect).epsilon(1e-12));
  auto grid = build_grid(GroupModel::su2(), 4);
  const DistanceFunction d = rho_squared(GroupModel::su2(), grid);
  std::mt19937_64 rng(10);
  double lip = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(d.node_values[i] >= -1e-12);
    CHECK(std::abs(d.at(grid->element(i).inverse()) - d.node_values[i]) < 1e-10);
    const Su2Element h = Su2Element::exp_frame(std::vector<double>{0.3, 0.1, -0.2}.data(), 0.05 * (1 + i % 5));
    const double r = std::abs(std::sqrt(std::max(0.0, d.at(grid->element(i) * h.inverse()))) -
                              std::sqrt(std::max(0.0, d.node_values[i]))) / std::sqrt(d.at(h));
    lip = std::max(lip, r);
  }
  CHECK(lip < 2.0);
}
