#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace spinfp {

using cplx = std::complex<double>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;

enum class Spin : int { Up = 0, Down = 1 };

/// Product-basis index for electron, impurity 1 and impurity 2 projections.
/// The electron is the slowest bit: i = 4e + 2a + b with up = 0.
constexpr int product_index(Spin e, Spin a, Spin b) {
  return 4 * static_cast<int>(e) + 2 * static_cast<int>(a) + static_cast<int>(b);
}

/// State of the electron and the two impurity spins in the product basis.
class SpinVector {
 public:
  SpinVector() : amps_(Vec8::Zero()) {}
  explicit SpinVector(const Vec8& amps) : amps_(amps) {}

  static SpinVector product(Spin e, Spin a, Spin b);
  /// Electron spinor times a two-impurity state indexed 2a + b.
  static SpinVector tensor(const Vec2& electron, const Vec4& impurities);

  const Vec8& amplitudes() const { return amps_; }
  cplx operator[](int i) const { return amps_[i]; }

  double squared_norm() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = 1e-12) const { return std::abs(squared_norm() - 1.0) <= tol; }
  SpinVector normalized() const;

 private:
  Vec8 amps_;
};

/// Two-impurity states indexed 2a + b.
namespace impurity {
Vec4 product(Spin a, Spin b);
Vec4 psi_plus();
Vec4 psi_minus();
/// cos(v)|ud> + e^{i phi} sin(v)|du>
Vec4 one_up_family(double vartheta, double phi);
/// cos(v)|uu> + e^{i phi} sin(v)|dd>
Vec4 aligned_family(double vartheta, double phi);
}  // namespace impurity

namespace electron {
Vec2 up();
Vec2 down();
}  // namespace electron

/// Angular momentum quantum number stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// Throws std::domain_error unless 2x is an integer.
  static HalfInt from_double(double x);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;

 private:
  int twice_ = 0;
};

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> with Condon-Shortley phases.
/// Returns 0 for M != m1 + m2 or a violated triangle. Negative j or |m| > j throws.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the Racah formula.
double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// <s_e2'| S_e1^2 |s_e2> in the s = 1/2 sector, indexed (s_e2', s_e2), from 6j recoupling.
Eigen::Matrix2d recoupling_matrix_elements();

/// Same matrix elements by sandwiching S_e1^2 between coupled basis vectors of
/// projection m (+1/2 or -1/2). Independent route used to check the 6j one.
Eigen::Matrix2d recoupling_matrix_elements_sandwich(HalfInt m);

struct SpinOperatorSet {
  Mat8 sigma_dot_s1;
  Mat8 sigma_dot_s2;
  Mat8 total_spin_sq;  // S^2
  Mat8 total_sz;       // S_z
  Mat8 s12_sq;         // (S1 + S2)^2
  Mat8 se1_sq;         // (sigma + S1)^2
  Mat8 se2_sq;         // (sigma + S2)^2
  Mat8 electron_up;    // projector on electron up
  Mat8 electron_down;
};

const SpinOperatorSet& spin_operators();

struct CoupledLabel {
  int se2;      // 0 or 1
  HalfInt s;    // 1/2 or 3/2
  HalfInt m;
  std::string ket() const;
};

/// Simultaneous eigenbasis |s_e2; s, m> of S_e2^2, S^2 and S_z.
///
/// Coupled index layout:
///   0..3  |1;3/2,m>  for m = 3/2, 1/2, -1/2, -3/2
///   4, 5  |0;1/2,1/2>, |1;1/2,1/2>
///   6, 7  |0;1/2,-1/2>, |1;1/2,-1/2>
///
/// Phases: the top state of each multiplet has its first nonzero product component
/// real positive; the others follow by S_- (Condon-Shortley).
/// Under that rule the basis coincides with Condon-Shortley coupling of
/// impurity 1 onto the (electron, impurity 2) pair.
struct CoupledBasis {
  std::array<CoupledLabel, 8> labels;
  Mat8 vectors;  // column c is coupled state c in the product basis

  SpinVector state(int c) const { return SpinVector(vectors.col(c)); }
};

namespace coupled {
inline constexpr int kQuartet[4] = {0, 1, 2, 3};
/// Coupled index of |s_e2; 1/2, m> for m = +1/2 (mi = 0) or -1/2 (mi = 1).
constexpr int doublet(int se2, int mi) { return 4 + 2 * mi + se2; }
}  // namespace coupled

const CoupledBasis& coupled_basis();

/// <s_e2; s, m | v> for every coupled state.
Vec8 product_to_coupled(const Vec8& v);
Vec8 coupled_to_product(const Vec8& c);

/// Change of basis for operators: U^dagger M U and its inverse.
Mat8 operator_to_coupled(const Mat8& product);
Mat8 operator_to_product(const Mat8& coupled);

}  // namespace spinfp
