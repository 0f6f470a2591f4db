#include "lpmult/fourier.hpp"

#include <cmath>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

// Applies out[.., k, ..] = sum_j kernel(k, j) in[.., j, ..] along one axis.
std::vector<Complex> transform_axis(const std::vector<Complex>& in, std::vector<int>& shape, int axis,
                                    const CMatrix& kernel) {
  std::size_t outer = 1, inner = 1;
  for (int j = 0; j < axis; ++j) outer *= static_cast<std::size_t>(shape[static_cast<std::size_t>(j)]);
  for (std::size_t j = static_cast<std::size_t>(axis) + 1; j < shape.size(); ++j)
    inner *= static_cast<std::size_t>(shape[j]);
  const auto n_in = static_cast<std::size_t>(kernel.cols()), n_out = static_cast<std::size_t>(kernel.rows());
  std::vector<Complex> out(outer * n_out * inner, Complex(0.0, 0.0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t k = 0; k < n_out; ++k) {
      Complex* dst = out.data() + (o * n_out + k) * inner;
      for (std::size_t j = 0; j < n_in; ++j) {
        const Complex w = kernel(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        const Complex* src = in.data() + (o * n_in + j) * inner;
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  shape[static_cast<std::size_t>(axis)] = static_cast<int>(n_out);
  return out;
}

MatrixSymbol torus_forward(const GroupFunction& f, int band) {
  const GroupGrid& g = *f.grid;
  const int n = g.model().torus_dim(), N = g.axis_points(), M = 2 * band + 1;
  CMatrix kernel(M, N);
  for (int k = 0; k < M; ++k)
    for (int j = 0; j < N; ++j)
      kernel(k, j) = std::polar(1.0 / N, -2.0 * kPi * static_cast<double>((k - band) * j % N) / N);
  std::vector<int> shape(static_cast<std::size_t>(n), N);
  std::vector<Complex> cur = f.samples;
  for (int axis = 0; axis < n; ++axis) cur = transform_axis(cur, shape, axis, kernel);
  MatrixSymbol out(g.model(), band);
  out.data() = std::move(cur);
  return out;
}

GroupFunction torus_inverse(const MatrixSymbol& c, std::shared_ptr<const GroupGrid> grid) {
  const int n = grid->model().torus_dim(), N = grid->axis_points(), band = c.band(), M = 2 * band + 1;
  CMatrix kernel(N, M);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < M; ++k) {
      const long r = (static_cast<long>(k - band) * j) % N;
      kernel(j, k) = std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / N);
    }
  std::vector<int> shape(static_cast<std::size_t>(n), M);
  std::vector<Complex> cur = c.data();
  for (int axis = 0; axis < n; ++axis) cur = transform_axis(cur, shape, axis, kernel);
  return {std::move(grid), std::move(cur), band};
}

MatrixSymbol su2_forward(const GroupFunction& f, int band) {
  const GroupGrid& g = *f.grid;
  const int np = g.n_phi(), nt = g.n_theta(), nq = g.n_psi(), W = 2 * band + 1;
  CMatrix epsi(nq, W), ephi(np, W);
  for (int q = 0; q < nq; ++q)
    for (int a = 0; a < W; ++a) epsi(q, a) = std::polar(1.0, 0.5 * (a - band) * g.psi_nodes()[static_cast<std::size_t>(q)]);
  for (int p = 0; p < np; ++p)
    for (int b = 0; b < W; ++b) ephi(p, b) = std::polar(1.0, 0.5 * (b - band) * g.phi_nodes()[static_cast<std::size_t>(p)]);

  // psi sums: G1[(p, k), a]
  Eigen::Map<const CMatrix> samples_t(f.samples.data(), nq, static_cast<Eigen::Index>(np) * nt);
  const CMatrix g1 = samples_t.transpose() * epsi;  // (np*nt) x W, row = p*nt + k
  // phi sums: G2[k][a, b]
  std::vector<CMatrix> g2(static_cast<std::size_t>(nt), CMatrix::Zero(W, W));
  for (int k = 0; k < nt; ++k) {
    CMatrix slice(np, W);
    for (int p = 0; p < np; ++p) slice.row(p) = g1.row(static_cast<Eigen::Index>(p) * nt + k);
    g2[static_cast<std::size_t>(k)] = slice.transpose() * ephi;
  }
  const double norm = 1.0 / (static_cast<double>(np) * nq);
  MatrixSymbol out(g.model(), band);
  for (int k = 0; k < nt; ++k) {
    const auto d = small_d_ladder(band, g.theta_nodes()[static_cast<std::size_t>(k)]);
    const double wk = g.theta_weights()[static_cast<std::size_t>(k)] * norm;
    const CMatrix& s = g2[static_cast<std::size_t>(k)];
    for (int L = 0; L <= band; ++L) {
      auto blk = out.su2(L);
      const auto& dl = d[static_cast<std::size_t>(L)];
      for (int r = 0; r <= L; ++r) {
        const int ai = (-L + 2 * r) + band;
        for (int c = 0; c <= L; ++c) {
          const int bi = (-L + 2 * c) + band;
          blk(r, c) += wk * dl(c, r) * s(ai, bi);
        }
      }
    }
  }
  return out;
}

GroupFunction su2_inverse(const MatrixSymbol& c, std::shared_ptr<const GroupGrid> grid) {
  const GroupGrid& g = *grid;
  const int np = g.n_phi(), nt = g.n_theta(), nq = g.n_psi(), band = c.band(), W = 2 * band + 1;
  std::vector<Complex> samples(g.size(), Complex(0.0, 0.0));
  CMatrix ephi(W, np), epsi(W, nq);
  for (int a = 0; a < W; ++a)
    for (int p = 0; p < np; ++p) ephi(a, p) = std::polar(1.0, -0.5 * (a - band) * g.phi_nodes()[static_cast<std::size_t>(p)]);
  for (int b = 0; b < W; ++b)
    for (int q = 0; q < nq; ++q) epsi(b, q) = std::polar(1.0, -0.5 * (b - band) * g.psi_nodes()[static_cast<std::size_t>(q)]);
  for (int k = 0; k < nt; ++k) {
    const auto d = small_d_ladder(band, g.theta_nodes()[static_cast<std::size_t>(k)]);
    CMatrix h = CMatrix::Zero(W, W);  // h(a, b)
    for (int L = 0; L <= band; ++L) {
      const auto blk = c.su2(L);
      const auto& dl = d[static_cast<std::size_t>(L)];
      for (int r = 0; r <= L; ++r)
        for (int s = 0; s <= L; ++s)
          h((-L + 2 * r) + band, (-L + 2 * s) + band) += static_cast<double>(L + 1) * dl(r, s) * blk(s, r);
    }
    const CMatrix vals = ephi.transpose() * h * epsi;  // np x nq
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < nq; ++q)
        samples[(static_cast<std::size_t>(p) * nt + k) * nq + q] = vals(p, q);
  }
  return {std::move(grid), std::move(samples), band};
}

std::vector<Complex> class_characters(const GroupFunction& f, int band) {
  const GroupGrid& g = *f.grid;
  std::vector<Complex> acc(static_cast<std::size_t>(band) + 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::cos(0.5 * g.class_angle(i));
    const Complex wf = g.weights()[i] * f.samples[i];
    double u0 = 1.0, u1 = 2.0 * x;
    for (int L = 0; L <= band; ++L) {
      acc[static_cast<std::size_t>(L)] += wf * u0;
      const double u2 = 2.0 * x * u1 - u0;
      u0 = u1;
      u1 = u2;
    }
  }
  for (int L = 0; L <= band; ++L) acc[static_cast<std::size_t>(L)] /= static_cast<double>(L + 1);
  return acc;
}

MatrixSymbol class_forward(const GroupFunction& f, int band) {
  const auto c = class_characters(f, band);
  MatrixSymbol out(f.grid->model(), band);
  for (int L = 0; L <= band; ++L) {
    auto blk = out.su2(L);
    for (int r = 0; r <= L; ++r) blk(r, r) = c[static_cast<std::size_t>(L)];
  }
  return out;
}

GroupFunction class_inverse(const MatrixSymbol& c, std::shared_ptr<const GroupGrid> grid) {
  std::vector<Complex> samples(grid->size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double t = grid->class_angle(i);
    Complex s = 0.0;
    for (int L = 0; L <= c.band(); ++L) {
      const auto blk = c.su2(L);
      for (int r = 0; r <= L; ++r) s += static_cast<double>(L + 1) * std::polar(1.0, -0.5 * (-L + 2 * r) * t) * blk(r, r);
    }
    samples[i] = s;
  }
  return {std::move(grid), std::move(samples), c.band()};
}

}  // namespace

MatrixSymbol fourier_forward(const GroupFunction& f, int band) {
  if (!f.grid) throw ResolutionError("function has no grid");
  if (f.samples.size() != f.grid->size()) throw ResolutionError("sample count does not match grid");
  if (band < 0) throw ResolutionError("coefficient band must be nonnegative");
  if (band > f.grid->band())
    throw ResolutionError("label band " + std::to_string(band) + " exceeds grid band " + std::to_string(f.grid->band()));
  switch (f.grid->kind()) {
    case GridKind::torus_lattice: return torus_forward(f, band);
    case GridKind::su2_euler: return su2_forward(f, band);
    case GridKind::su2_class: return class_forward(f, band);
  }
  return {};
}

GroupFunction fourier_inverse(const MatrixSymbol& coeffs, std::shared_ptr<const GroupGrid> grid) {
  if (coeffs.model() != grid->model()) throw ResolutionError("coefficient and grid models differ");
  switch (grid->kind()) {
    case GridKind::torus_lattice:
      if (coeffs.band() > grid->band())
        throw ResolutionError("torus coefficients of band " + std::to_string(coeffs.band()) +
                              " alias on a grid of band " + std::to_string(grid->band()));
      return torus_inverse(coeffs, std::move(grid));
    case GridKind::su2_euler: return su2_inverse(coeffs, std::move(grid));
    case GridKind::su2_class: return class_inverse(coeffs, std::move(grid));
  }
  return {};
}

std::vector<Complex> central_coefficients(const GroupFunction& f, int band) {
  if (!f.grid || f.grid->kind() != GridKind::su2_class) throw ResolutionError("central coefficients need a class grid");
  if (f.samples.size() != f.grid->size()) throw ResolutionError("sample count does not match grid");
  if (band < 0 || band > f.grid->band())
    throw ResolutionError("label band " + std::to_string(band) + " exceeds grid band " + std::to_string(f.grid->band()));
  return class_characters(f, band);
}

double plancherel_norm(const MatrixSymbol& c) { return sobolev_norm(c, 0.0); }

double sobolev_norm(const MatrixSymbol& c, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.label_count(); ++i) {
    const IrrepLabel l = c.label_at(i);
    const double w = s == 0.0 ? 1.0 : std::pow(bracket(l), 2.0 * s);
    acc += w * c.dim_at(i) * c.block(i).squaredNorm();
  }
  return std::sqrt(acc);
}

GroupFunction sample_torus(std::shared_ptr<const GroupGrid> grid,
                           const std::function<Complex(const std::vector<double>&)>& f) {
  std::vector<Complex> s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(grid->torus_point(i));
  return {std::move(grid), std::move(s), std::nullopt};
}

GroupFunction sample_su2(std::shared_ptr<const GroupGrid> grid, const std::function<Complex(const Su2Element&)>& f) {
  std::vector<Complex> s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(grid->element(i));
  return {std::move(grid), std::move(s), std::nullopt};
}

}  // namespace lpmult
