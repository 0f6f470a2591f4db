#include "lpmult/matrix_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

std::size_t torus_box_size(int n, int band) {
  std::size_t s = 1;
  for (int j = 0; j < n; ++j) s *= static_cast<std::size_t>(2 * band + 1);
  return s;
}

}  // namespace

MatrixSymbol::MatrixSymbol(GroupModel model, int band) : model_(model), band_(band) {
  if (band < 0) throw ResolutionError("symbol band must be nonnegative");
  if (model.is_torus()) {
    const std::size_t count = torus_box_size(model.torus_dim(), band);
    offsets_.resize(count);
    for (std::size_t i = 0; i < count; ++i) offsets_[i] = i;
    dims_.assign(count, 1);
    data_.assign(count, Complex(0.0, 0.0));
    return;
  }
  std::size_t off = 0;
  for (int L = 0; L <= band; ++L) {
    offsets_.push_back(off);
    dims_.push_back(L + 1);
    off += static_cast<std::size_t>(L + 1) * static_cast<std::size_t>(L + 1);
  }
  data_.assign(off, Complex(0.0, 0.0));
}

MatrixSymbol MatrixSymbol::from_function(const GroupModel& model, int band,
                                         const std::function<CMatrix(const IrrepLabel&)>& f) {
  MatrixSymbol s(model, band);
  for (std::size_t i = 0; i < s.label_count(); ++i) {
    const CMatrix m = f(s.label_at(i));
    if (m.rows() != s.dim_at(i) || m.cols() != s.dim_at(i))
      throw MathInputError("symbol entry has the wrong dimension at label " + s.label_at(i).to_string());
    s.block(i) = m;
  }
  return s;
}

MatrixSymbol MatrixSymbol::scalar(const GroupModel& model, int band,
                                  const std::function<Complex(const IrrepLabel&)>& f) {
  MatrixSymbol s(model, band);
  for (std::size_t i = 0; i < s.label_count(); ++i) {
    const Complex v = f(s.label_at(i));
    auto b = s.block(i);
    for (int r = 0; r < s.dim_at(i); ++r) b(r, r) = v;
  }
  return s;
}

MatrixSymbol MatrixSymbol::identity(const GroupModel& model, int band) {
  return scalar(model, band, [](const IrrepLabel&) { return Complex(1.0, 0.0); });
}

IrrepLabel MatrixSymbol::label_at(std::size_t idx) const {
  if (model_.is_su2()) return IrrepLabel::su2(static_cast<int>(idx));
  std::vector<int> k(static_cast<std::size_t>(model_.torus_dim()));
  torus_freq(idx, k.data());
  return IrrepLabel::torus(std::move(k));
}

int MatrixSymbol::band_at(std::size_t idx) const {
  if (model_.is_su2()) return static_cast<int>(idx);
  const int n = model_.torus_dim(), m = 2 * band_ + 1;
  int b = 0;
  for (int j = 0; j < n; ++j) {
    b = std::max(b, std::abs(static_cast<int>(idx % static_cast<std::size_t>(m)) - band_));
    idx /= static_cast<std::size_t>(m);
  }
  return b;
}

bool MatrixSymbol::contains(const IrrepLabel& label) const {
  if (model_.is_su2()) return !label.is_torus() && label.twice_spin <= band_;
  return label.is_torus() && static_cast<int>(label.freq.size()) == model_.torus_dim() &&
         label_band(label) <= band_;
}

std::size_t MatrixSymbol::index_of(const IrrepLabel& label) const {
  if (!contains(label)) throw ResolutionError("label " + label.to_string() + " outside symbol band");
  if (model_.is_su2()) return static_cast<std::size_t>(label.twice_spin);
  return torus_index(label.freq.data());
}

std::size_t MatrixSymbol::torus_index(const int* k) const {
  const int n = model_.torus_dim(), m = 2 * band_ + 1;
  std::size_t idx = 0;
  for (int j = 0; j < n; ++j) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(k[j] + band_);
  return idx;
}

void MatrixSymbol::torus_freq(std::size_t idx, int* k) const {
  const int n = model_.torus_dim(), m = 2 * band_ + 1;
  for (int j = n - 1; j >= 0; --j) {
    k[j] = static_cast<int>(idx % static_cast<std::size_t>(m)) - band_;
    idx /= static_cast<std::size_t>(m);
  }
}

namespace {
void check_box(const int* k, int n, int band) {
  for (int j = 0; j < n; ++j)
    if (k[j] < -band || k[j] > band) throw std::out_of_range("frequency outside the symbol band");
}
}  // namespace

Complex& MatrixSymbol::at(const int* k) {
  check_box(k, model_.torus_dim(), band_);
  return data_[torus_index(k)];
}
const Complex& MatrixSymbol::at(const int* k) const {
  check_box(k, model_.torus_dim(), band_);
  return data_[torus_index(k)];
}

Eigen::Map<CMatrix> MatrixSymbol::block(std::size_t idx) {
  return {data_.data() + offsets_[idx], dims_[idx], dims_[idx]};
}

Eigen::Map<const CMatrix> MatrixSymbol::block(std::size_t idx) const {
  return {data_.data() + offsets_[idx], dims_[idx], dims_[idx]};
}

MatrixSymbol MatrixSymbol::truncated(int b) const {
  if (b > band_) throw ResolutionError("cannot truncate a symbol of band " + std::to_string(band_) +
                                       " to larger band " + std::to_string(b));
  MatrixSymbol out(model_, b);
  if (model_.is_su2()) {
    std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(out.data_.size()), out.data_.begin());
    return out;
  }
  std::vector<int> k(static_cast<std::size_t>(model_.torus_dim()));
  for (std::size_t i = 0; i < out.label_count(); ++i) {
    out.torus_freq(i, k.data());
    out.data_[i] = at(k.data());
  }
  return out;
}

MatrixSymbol MatrixSymbol::padded(int b) const {
  if (b < band_) return truncated(b);
  MatrixSymbol out(model_, b);
  if (model_.is_su2()) {
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    return out;
  }
  std::vector<int> k(static_cast<std::size_t>(model_.torus_dim()));
  for (std::size_t i = 0; i < label_count(); ++i) {
    torus_freq(i, k.data());
    out.at(k.data()) = data_[i];
  }
  return out;
}

MatrixSymbol& MatrixSymbol::operator+=(const MatrixSymbol& o) {
  if (o.model_ != model_ || o.band_ != band_) throw ResolutionError("symbol shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MatrixSymbol& MatrixSymbol::operator-=(const MatrixSymbol& o) {
  if (o.model_ != model_ || o.band_ != band_) throw ResolutionError("symbol shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MatrixSymbol& MatrixSymbol::operator*=(Complex c) {
  for (auto& v : data_) v *= c;
  return *this;
}

double MatrixSymbol::max_hs_diff(const MatrixSymbol& o, int upto) const {
  if (o.model_ != model_) throw ResolutionError("symbol models differ");
  upto = std::min({upto, band_, o.band_});
  const MatrixSymbol a = truncated(upto), b = o.truncated(upto);
  double m = 0.0;
  for (std::size_t i = 0; i < a.label_count(); ++i) m = std::max(m, (a.block(i) - b.block(i)).norm());
  return m;
}

double MatrixSymbol::max_op_norm(int upto) const {
  double m = 0.0;
  for (std::size_t i = 0; i < label_count(); ++i)
    if (band_at(i) <= upto) m = std::max(m, op_norm(block(i)));
  return m;
}

MatrixSymbol operator+(MatrixSymbol a, const MatrixSymbol& b) { return a += b; }
MatrixSymbol operator-(MatrixSymbol a, const MatrixSymbol& b) { return a -= b; }
MatrixSymbol operator*(Complex c, MatrixSymbol a) { return a *= c; }

double op_norm(const CMatrix& m) {
  if (m.size() == 1) return std::abs(m(0, 0));
  const CMatrix g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace lpmult
