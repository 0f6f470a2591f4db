#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lpmult {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

enum class GroupKind { torus, su2 };

class GroupModel {
 public:
  static GroupModel torus(int n);
  static GroupModel su2();
  // Accepts "su2", "torus-N" and "torusN".
  static GroupModel parse(std::string_view text);

  GroupKind kind() const { return kind_; }
  bool is_su2() const { return kind_ == GroupKind::su2; }
  bool is_torus() const { return kind_ == GroupKind::torus; }
  int torus_dim() const { return n_; }
  int dimension() const { return is_su2() ? 3 : n_; }
  int rank() const { return is_su2() ? 1 : n_; }
  // Smallest even integer strictly larger than dimension()/2.
  int kappa() const;
  std::string name() const;
  std::string delta0_description() const;

  bool operator==(const GroupModel& o) const { return kind_ == o.kind_ && n_ == o.n_; }
  bool operator!=(const GroupModel& o) const { return !(*this == o); }

 private:
  GroupModel(GroupKind k, int n) : kind_(k), n_(n) {}
  GroupKind kind_ = GroupKind::su2;
  int n_ = 0;
};

// A point of the unitary dual. Torus labels carry a frequency vector;
// SU(2) labels carry twice the spin.
struct IrrepLabel {
  std::vector<int> freq;
  int twice_spin = 0;

  static IrrepLabel su2(int twice_spin);
  static IrrepLabel torus(std::vector<int> k);
  bool is_torus() const { return !freq.empty(); }
  std::string to_string() const;
  bool operator==(const IrrepLabel& o) const { return freq == o.freq && twice_spin == o.twice_spin; }
};

int irrep_dimension(const IrrepLabel& label);
// Sup-norm of the frequency on the torus, twice-spin on SU(2).
int label_band(const IrrepLabel& label);
double casimir_lambda(const IrrepLabel& label);
// <xi> = max(1, lambda).
double bracket(const IrrepLabel& label);
double su2_casimir(int twice_spin);
double su2_bracket(int twice_spin);
double torus_casimir(const std::vector<int>& k);

struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

// [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1.
struct Su2Element {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  static Su2Element identity() { return {}; }
  static Su2Element from_euler(const EulerAngles& e);
  // exp(t (x1 Y1 + x2 Y2 + x3 Y3)) with Y_k = (i/2) sigma_k.
  static Su2Element exp_frame(const double x[3], double t);
  EulerAngles to_euler() const;
  Su2Element operator*(const Su2Element& o) const;
  Su2Element inverse() const { return {std::conj(a), -b}; }
  Eigen::Matrix2cd matrix() const;
  double trace() const { return 2.0 * a.real(); }
};

// Little-d element d^{L/2}_{m,n}(theta) with m = m2/2, n = n2/2, by the explicit
// Wigner sum accumulated in long double with log-factorials.
double wigner_small_d(int twice_spin, int m2, int n2, double theta);
// e^{-i m phi} d_{mn}(theta) e^{-i n psi}, indices ascending from -l.
CMatrix wigner_matrix(int twice_spin, const EulerAngles& angles);
// All representation matrices of g up to max_twice_spin by the tensor-ladder
// recursion; entry [L] has size (L+1)x(L+1).
std::vector<CMatrix> wigner_ladder(int max_twice_spin, const Su2Element& g);
// Real little-d matrices d^{L/2}(theta) for L = 0..max_twice_spin.
std::vector<Eigen::MatrixXd> small_d_ladder(int max_twice_spin, double theta);

// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

enum class GridKind { torus_lattice, su2_euler, su2_class };

class GroupGrid {
 public:
  const GroupModel& model() const { return model_; }
  GridKind kind() const { return kind_; }
  int band() const { return band_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

  // Torus lattice: points per axis and the coordinates of node i in [0,1)^n.
  int axis_points() const { return axis_points_; }
  std::vector<double> torus_point(std::size_t i) const;

  // SU(2) Euler product grid, node index i = (p * n_theta + k) * n_psi + q.
  int n_phi() const { return static_cast<int>(phi_.size()); }
  int n_theta() const { return static_cast<int>(theta_.size()); }
  int n_psi() const { return static_cast<int>(psi_.size()); }
  const std::vector<double>& phi_nodes() const { return phi_; }
  const std::vector<double>& theta_nodes() const { return theta_; }
  const std::vector<double>& psi_nodes() const { return psi_; }
  // Normalized theta weights (sum 1).
  const std::vector<double>& theta_weights() const { return theta_w_; }
  EulerAngles euler(std::size_t i) const;

  // Class grid: node i represents exp(t Y3) with class angle t in (0, 2 pi).
  double class_angle(std::size_t i) const { return class_t_[i]; }

  // Group element at node i (SU(2) grids).
  Su2Element element(std::size_t i) const;

  friend std::shared_ptr<const GroupGrid> build_grid(const GroupModel& model, int band);
  friend std::shared_ptr<const GroupGrid> build_class_grid(int band, int nodes);

 private:
  GroupModel model_ = GroupModel::su2();
  GridKind kind_ = GridKind::su2_euler;
  int band_ = 0;
  int axis_points_ = 0;
  std::vector<double> weights_;
  std::vector<double> phi_, theta_, psi_, theta_w_;
  std::vector<double> class_t_;
};

std::shared_ptr<const GroupGrid> build_grid(const GroupModel& model, int band);
// Weyl-reduced grid for central functions on SU(2) (Gauss-Chebyshev of the
// second kind in cos(t/2)). nodes = 0 selects band + 1.
std::shared_ptr<const GroupGrid> build_class_grid(int band, int nodes = 0);

struct GroupFunction {
  std::shared_ptr<const GroupGrid> grid;
  std::vector<Complex> samples;
  std::optional<int> declared_band;
};

double integrate_abs_power(const GroupFunction& f, double p);
Complex integrate(const GroupFunction& f);
double lp_norm(const GroupFunction& f, double p);
double l2_norm(const GroupFunction& f);

}  // namespace lpmult
