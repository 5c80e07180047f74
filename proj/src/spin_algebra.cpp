#include "spinfp/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace spinfp {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Mat8 kron3(const Mat2& e, const Mat2& a, const Mat2& b) {
  Mat8 out;
  for (int e1 = 0; e1 < 2; ++e1)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int e2 = 0; e2 < 2; ++e2)
          for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2)
              out(4 * e1 + 2 * a1 + b1, 4 * e2 + 2 * a2 + b2) = e(e1, e2) * a(a1, a2) * b(b1, b2);
  return out;
}

struct Pauli {
  Mat2 x, y, z, id;
};

// spin-1/2 operators in units of hbar
Pauli half_spin() {
  Pauli p;
  p.x << 0, 0.5, 0.5, 0;
  p.y << 0, cplx(0, -0.5), cplx(0, 0.5), 0;
  p.z << 0.5, 0, 0, -0.5;
  p.id = Mat2::Identity();
  return p;
}

double factorial(int n) {
  if (n < 0) throw std::logic_error("negative factorial argument");
  static const auto table = [] {
    std::array<double, 40> t{};
    t[0] = 1.0;
    for (int i = 1; i < 40; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n >= static_cast<int>(table.size())) throw std::domain_error("angular momentum too large");
  return table[n];
}

// (a + b + ...) / 2 for sums of twice-values that must be even
int half(int twice_sum) {
  if (twice_sum % 2 != 0) throw std::logic_error("odd half-integer sum");
  return twice_sum / 2;
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  return tc <= ta + tb && tc >= std::abs(ta - tb) && (ta + tb + tc) % 2 == 0;
}

double triangle_coeff(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  return std::sqrt(factorial(half(ta + tb - tc)) * factorial(half(ta - tb + tc)) *
                   factorial(half(-ta + tb + tc)) / factorial(half(ta + tb + tc) + 1));
}

void check_jm(HalfInt j, HalfInt m) {
  if (j.twice() < 0) throw std::domain_error("negative angular momentum");
  if (std::abs(m.twice()) > j.twice() || (j.twice() - m.twice()) % 2 != 0)
    throw std::domain_error(fmt::format("invalid projection m={} for j={}", m.value(), j.value()));
}

double expectation(const Mat8& op, const Vec8& v) { return (v.adjoint() * op * v)(0, 0).real(); }

CoupledBasis build_coupled_basis() {
  const SpinOperatorSet& ops = spin_operators();
  // Weighted sum with nondegenerate spectrum over the eight label triples.
  const Mat8 combined = ops.se2_sq + 10.0 * ops.total_spin_sq + 100.0 * ops.total_sz;
  Eigen::SelfAdjointEigenSolver<Mat8> solver(combined);
  if (solver.info() != Eigen::Success) throw std::runtime_error("coupled basis diagonalization failed");

  CoupledBasis basis;
  std::array<bool, 8> filled{};
  for (int k = 0; k < 8; ++k) {
    Vec8 v = solver.eigenvectors().col(k);
    for (int i = 0; i < 8; ++i) {
      if (std::abs(v[i]) > 1e-10) {
        v *= std::conj(v[i]) / std::abs(v[i]);
        break;
      }
    }
    const int se2 = static_cast<int>(std::lround(expectation(ops.se2_sq, v))) / 2;
    const double s_sq = expectation(ops.total_spin_sq, v);
    const HalfInt s = HalfInt::from_twice(s_sq > 2.0 ? 3 : 1);
    const HalfInt m = HalfInt::from_twice(static_cast<int>(std::lround(2.0 * expectation(ops.total_sz, v))));

    int index;
    if (s.twice() == 3) {
      index = (3 - m.twice()) / 2;
    } else {
      index = coupled::doublet(se2, m.twice() > 0 ? 0 : 1);
    }
    if (filled[index]) throw std::logic_error("coupled basis label collision");
    filled[index] = true;
    basis.labels[index] = CoupledLabel{se2, s, m};
    basis.vectors.col(index) = v;
  }

  // Lower-m partners follow from the top state by S_- (Condon-Shortley phases).
  Mat2 lower = Mat2::Zero();
  lower(1, 0) = 1.0;
  const Mat2 id = Mat2::Identity();
  const Mat8 s_minus = kron3(lower, id, id) + kron3(id, lower, id) + kron3(id, id, lower);
  const auto lowered = [&](int from) {
    const Vec8 w = s_minus * basis.vectors.col(from);
    return Vec8(w / w.norm());
  };
  for (int i = 1; i < 4; ++i) basis.vectors.col(i) = lowered(i - 1);
  for (int se2 = 0; se2 < 2; ++se2) basis.vectors.col(coupled::doublet(se2, 1)) = lowered(coupled::doublet(se2, 0));

  for (int c = 0; c < 8; ++c) {
    const Vec8 v = basis.vectors.col(c);
    const CoupledLabel& l = basis.labels[c];
    const double s = l.s.value();
    const double r1 = ((ops.se2_sq - l.se2 * (l.se2 + 1.0) * Mat8::Identity()) * v).norm();
    const double r2 = ((ops.total_spin_sq - s * (s + 1.0) * Mat8::Identity()) * v).norm();
    const double r3 = ((ops.total_sz - l.m.value() * Mat8::Identity()) * v).norm();
    if (std::max({r1, r2, r3}) > 1e-12) throw std::logic_error("coupled basis eigen residual too large");
  }

  // (1/2)|0;1/2,m> + (sqrt3/2)|1;1/2,m> must be |e>|psi->, with e = up for m = +1/2.
  for (int mi = 0; mi < 2; ++mi) {
    const Vec8 lhs = 0.5 * basis.vectors.col(coupled::doublet(0, mi)) +
                     0.5 * std::sqrt(3.0) * basis.vectors.col(coupled::doublet(1, mi));
    const Vec2 e = mi == 0 ? electron::up() : electron::down();
    const Vec8 rhs = SpinVector::tensor(e, impurity::psi_minus()).amplitudes();
    if ((lhs - rhs).norm() > 1e-12) throw std::logic_error("coupled basis phases violate the singlet identity");
  }
  return basis;
}

}  // namespace

SpinVector SpinVector::product(Spin e, Spin a, Spin b) {
  Vec8 v = Vec8::Zero();
  v[product_index(e, a, b)] = 1.0;
  return SpinVector(v);
}

SpinVector SpinVector::tensor(const Vec2& electron, const Vec4& impurities) {
  Vec8 v;
  for (int e = 0; e < 2; ++e)
    for (int k = 0; k < 4; ++k) v[4 * e + k] = electron[e] * impurities[k];
  return SpinVector(v);
}

SpinVector SpinVector::normalized() const {
  const double n = amps_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("cannot normalize a zero or non-finite spin vector");
  return SpinVector(amps_ / n);
}

namespace impurity {

Vec4 product(Spin a, Spin b) {
  Vec4 v = Vec4::Zero();
  v[2 * static_cast<int>(a) + static_cast<int>(b)] = 1.0;
  return v;
}

Vec4 psi_plus() { return kInvSqrt2 * (product(Spin::Up, Spin::Down) + product(Spin::Down, Spin::Up)); }

Vec4 psi_minus() { return kInvSqrt2 * (product(Spin::Up, Spin::Down) - product(Spin::Down, Spin::Up)); }

Vec4 one_up_family(double vartheta, double phi) {
  return std::cos(vartheta) * product(Spin::Up, Spin::Down) +
         std::polar(std::sin(vartheta), phi) * product(Spin::Down, Spin::Up);
}

Vec4 aligned_family(double vartheta, double phi) {
  return std::cos(vartheta) * product(Spin::Up, Spin::Up) +
         std::polar(std::sin(vartheta), phi) * product(Spin::Down, Spin::Down);
}

}  // namespace impurity

namespace electron {
Vec2 up() { return Vec2(1.0, 0.0); }
Vec2 down() { return Vec2(0.0, 1.0); }
}  // namespace electron

HalfInt HalfInt::from_double(double x) {
  const double twice = 2.0 * x;
  const double r = std::round(twice);
  if (!std::isfinite(x) || std::abs(twice - r) > 1e-9)
    throw std::domain_error(fmt::format("{} is not a half-integer", x));
  return from_twice(static_cast<int>(r));
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  check_jm(j1, m1);
  check_jm(j2, m2);
  check_jm(J, M);
  if (M.twice() != m1.twice() + m2.twice() || !triangle(j1, j2, J)) return 0.0;

  const int t1 = j1.twice(), t2 = j2.twice(), tJ = J.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tM = M.twice();

  const double pre = std::sqrt((tJ + 1) * factorial(half(tJ + t1 - t2)) * factorial(half(tJ - t1 + t2)) *
                               factorial(half(t1 + t2 - tJ)) / factorial(half(t1 + t2 + tJ) + 1));
  const double norm = std::sqrt(factorial(half(tJ + tM)) * factorial(half(tJ - tM)) * factorial(half(t1 - tm1)) *
                                factorial(half(t1 + tm1)) * factorial(half(t2 - tm2)) * factorial(half(t2 + tm2)));

  double sum = 0.0;
  for (int k = 0;; ++k) {
    const int d1 = half(t1 + t2 - tJ) - k;
    const int d2 = half(t1 - tm1) - k;
    const int d3 = half(t2 + tm2) - k;
    if (d1 < 0 || d2 < 0 || d3 < 0) break;
    const int d4 = half(tJ - t2 + tm1) + k;
    const int d5 = half(tJ - t1 - tm2) + k;
    if (d4 < 0 || d5 < 0) continue;
    const double term = 1.0 / (factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) * factorial(d4) *
                               factorial(d5));
    sum += (k % 2 == 0) ? term : -term;
  }
  return pre * norm * sum;
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  return clebsch_gordan(HalfInt::from_double(j1), HalfInt::from_double(m1), HalfInt::from_double(j2),
                        HalfInt::from_double(m2), HalfInt::from_double(J), HalfInt::from_double(M));
}

double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  for (HalfInt j : {j1, j2, j3, j4, j5, j6})
    if (j.twice() < 0) throw std::domain_error("negative angular momentum");
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3)) return 0.0;

  const int a1 = half(j1.twice() + j2.twice() + j3.twice());
  const int a2 = half(j1.twice() + j5.twice() + j6.twice());
  const int a3 = half(j4.twice() + j2.twice() + j6.twice());
  const int a4 = half(j4.twice() + j5.twice() + j3.twice());
  const int b1 = half(j1.twice() + j2.twice() + j4.twice() + j5.twice());
  const int b2 = half(j2.twice() + j3.twice() + j5.twice() + j6.twice());
  const int b3 = half(j3.twice() + j1.twice() + j6.twice() + j4.twice());

  const int t_min = std::max({a1, a2, a3, a4});
  const int t_max = std::min({b1, b2, b3});
  double sum = 0.0;
  for (int t = t_min; t <= t_max; ++t) {
    const double term = factorial(t + 1) / (factorial(t - a1) * factorial(t - a2) * factorial(t - a3) *
                                            factorial(t - a4) * factorial(b1 - t) * factorial(b2 - t) *
                                            factorial(b3 - t));
    sum += (t % 2 == 0) ? term : -term;
  }
  return triangle_coeff(j1, j2, j3) * triangle_coeff(j1, j5, j6) * triangle_coeff(j4, j2, j6) *
         triangle_coeff(j4, j5, j3) * sum;
}

Eigen::Matrix2d recoupling_matrix_elements() {
  // Coupled states are |a, (e b) s_e2; s>; S_e1^2 is diagonal in |(a e) s_e1, b; s>.
  // <(j1 j2) J12, j3; J | j1, (j2 j3) J23; J>
  //   = (-1)^{j1+j2+j3+J} sqrt((2 J12 + 1)(2 J23 + 1)) {j1 j2 J12; j3 J J23}
  const HalfInt half_spin = HalfInt::from_twice(1);
  const HalfInt total = HalfInt::from_twice(1);
  const int phase_exp = half(3 * half_spin.twice() + total.twice());
  const double phase = (phase_exp % 2 == 0) ? 1.0 : -1.0;

  auto overlap = [&](int se1, int se2) {
    const HalfInt j12 = HalfInt::from_twice(2 * se1);
    const HalfInt j23 = HalfInt::from_twice(2 * se2);
    return phase * std::sqrt((2.0 * se1 + 1.0) * (2.0 * se2 + 1.0)) *
           wigner_6j(half_spin, half_spin, j12, half_spin, total, j23);
  };

  Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
  for (int bra = 0; bra < 2; ++bra)
    for (int ket = 0; ket < 2; ++ket)
      for (int se1 = 0; se1 < 2; ++se1) out(bra, ket) += se1 * (se1 + 1.0) * overlap(se1, bra) * overlap(se1, ket);
  return out;
}

Eigen::Matrix2d recoupling_matrix_elements_sandwich(HalfInt m) {
  if (std::abs(m.twice()) != 1) throw std::domain_error("doublet projection must be +-1/2");
  const int mi = m.twice() > 0 ? 0 : 1;
  const CoupledBasis& basis = coupled_basis();
  const Mat8& se1 = spin_operators().se1_sq;
  Eigen::Matrix2d out;
  for (int bra = 0; bra < 2; ++bra)
    for (int ket = 0; ket < 2; ++ket) {
      const Vec8 b = basis.vectors.col(coupled::doublet(bra, mi));
      const Vec8 k = basis.vectors.col(coupled::doublet(ket, mi));
      out(bra, ket) = (b.adjoint() * se1 * k)(0, 0).real();
    }
  return out;
}

const SpinOperatorSet& spin_operators() {
  static const SpinOperatorSet ops = [] {
    const Pauli p = half_spin();
    const Mat2& I = p.id;
    SpinOperatorSet o;
    const std::array<Mat2, 3> comps = {p.x, p.y, p.z};

    o.sigma_dot_s1 = Mat8::Zero();
    o.sigma_dot_s2 = Mat8::Zero();
    Mat8 s12_sq = Mat8::Zero();
    Mat8 total_sq = Mat8::Zero();
    for (const Mat2& c : comps) {
      const Mat8 se = kron3(c, I, I);
      const Mat8 s1 = kron3(I, c, I);
      const Mat8 s2 = kron3(I, I, c);
      o.sigma_dot_s1 += se * s1;
      o.sigma_dot_s2 += se * s2;
      s12_sq += (s1 + s2) * (s1 + s2);
      total_sq += (se + s1 + s2) * (se + s1 + s2);
    }
    const Mat8 id = Mat8::Identity();
    o.total_spin_sq = total_sq;
    o.total_sz = kron3(p.z, I, I) + kron3(I, p.z, I) + kron3(I, I, p.z);
    o.s12_sq = s12_sq;
    // (sigma + S_i)^2 = 3/4 + 3/4 + 2 sigma.S_i
    o.se1_sq = 1.5 * id + 2.0 * o.sigma_dot_s1;
    o.se2_sq = 1.5 * id + 2.0 * o.sigma_dot_s2;

    Mat2 up_proj = Mat2::Zero();
    up_proj(0, 0) = 1.0;
    Mat2 down_proj = Mat2::Zero();
    down_proj(1, 1) = 1.0;
    o.electron_up = kron3(up_proj, I, I);
    o.electron_down = kron3(down_proj, I, I);
    return o;
  }();
  return ops;
}

std::string CoupledLabel::ket() const {
  const auto frac = [](HalfInt h) { return h.twice() % 2 == 0 ? fmt::format("{}", h.twice() / 2) : fmt::format("{}/2", h.twice()); };
  return fmt::format("|{};{},{}>", se2, frac(s), frac(m));
}

const CoupledBasis& coupled_basis() {
  static const CoupledBasis basis = build_coupled_basis();
  return basis;
}

Vec8 product_to_coupled(const Vec8& v) { return coupled_basis().vectors.adjoint() * v; }

Vec8 coupled_to_product(const Vec8& c) { return coupled_basis().vectors * c; }

Mat8 operator_to_coupled(const Mat8& product) {
  const Mat8& u = coupled_basis().vectors;
  return u.adjoint() * product * u;
}

Mat8 operator_to_product(const Mat8& coupled) {
  const Mat8& u = coupled_basis().vectors;
  return u * coupled * u.adjoint();
}

}  // namespace spinfp
