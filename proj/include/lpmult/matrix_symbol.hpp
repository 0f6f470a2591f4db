#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lpmult/harmonic_core.hpp"

namespace lpmult {

// Finitely supported map from labels of band <= band() to d x d complex
// matrices. Torus labels form the box |k|_inf <= band; SU(2) labels are the
// twice-spins 0..band. Entries are stored contiguously, column-major per label.
class MatrixSymbol {
 public:
  MatrixSymbol() = default;
  MatrixSymbol(GroupModel model, int band);

  static MatrixSymbol from_function(const GroupModel& model, int band,
                                    const std::function<CMatrix(const IrrepLabel&)>& f);
  static MatrixSymbol scalar(const GroupModel& model, int band,
                             const std::function<Complex(const IrrepLabel&)>& f);
  static MatrixSymbol identity(const GroupModel& model, int band);

  const GroupModel& model() const { return model_; }
  int band() const { return band_; }
  std::size_t label_count() const { return offsets_.size(); }
  IrrepLabel label_at(std::size_t idx) const;
  int band_at(std::size_t idx) const;
  int dim_at(std::size_t idx) const { return dims_[idx]; }
  bool contains(const IrrepLabel& label) const;
  std::size_t index_of(const IrrepLabel& label) const;

  Eigen::Map<CMatrix> block(std::size_t idx);
  Eigen::Map<const CMatrix> block(std::size_t idx) const;
  Eigen::Map<CMatrix> su2(int twice_spin) { return block(static_cast<std::size_t>(twice_spin)); }
  Eigen::Map<const CMatrix> su2(int twice_spin) const { return block(static_cast<std::size_t>(twice_spin)); }

  // Torus scalar access; k must lie in the box.
  Complex& at(const int* k);
  const Complex& at(const int* k) const;
  std::size_t torus_index(const int* k) const;
  // Frequency vector for a torus index.
  void torus_freq(std::size_t idx, int* k) const;

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  // Restriction to labels of band <= b (b <= band()).
  MatrixSymbol truncated(int b) const;
  // Zero extension to band b >= band().
  MatrixSymbol padded(int b) const;

  MatrixSymbol& operator+=(const MatrixSymbol& o);
  MatrixSymbol& operator-=(const MatrixSymbol& o);
  MatrixSymbol& operator*=(Complex c);

  // max over labels of band <= upto of the Hilbert-Schmidt norm of the difference.
  double max_hs_diff(const MatrixSymbol& o, int upto) const;
  // max over labels of band <= upto of the operator norm.
  double max_op_norm(int upto) const;

 private:
  GroupModel model_ = GroupModel::su2();
  int band_ = -1;
  std::vector<std::size_t> offsets_;
  std::vector<int> dims_;
  std::vector<Complex> data_;
};

MatrixSymbol operator+(MatrixSymbol a, const MatrixSymbol& b);
MatrixSymbol operator-(MatrixSymbol a, const MatrixSymbol& b);
MatrixSymbol operator*(Complex c, MatrixSymbol a);

double op_norm(const CMatrix& m);

}  // namespace lpmult
