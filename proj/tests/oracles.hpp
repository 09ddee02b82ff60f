#ifndef SCHLAFLI_TESTS_ORACLES_HPP
#define SCHLAFLI_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace oracle {

using V3 = Eigen::Vector3d;

// 288 V^2 from the bordered 5x5 Cayley-Menger determinant, by LU.
inline double cayley_menger_5x5(const std::array<double, 6>& J) {
  // Vertex pairs in the order AB, AC, BC, CD, BD, AD.
  const int pairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}};
  Eigen::Matrix<long double, 5, 5> m = Eigen::Matrix<long double, 5, 5>::Zero();
  for (int i = 1; i < 5; ++i) m(0, i) = m(i, 0) = 1;
  for (int r = 0; r < 6; ++r) {
    const int a = pairs[r][0] + 1, b = pairs[r][1] + 1;
    m(a, b) = m(b, a) = static_cast<long double>(J[r]) * J[r];
  }
  return static_cast<double>(m.fullPivLu().determinant());
}

inline std::array<double, 6> lengths_of(const std::array<V3, 4>& v) {
  const int pairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}};
  std::array<double, 6> J{};
  for (int r = 0; r < 6; ++r) J[r] = (v[pairs[r][1]] - v[pairs[r][0]]).norm();
  return J;
}

// Interior dihedral angle along edge (p, q) of tetrahedron v: the angle between
// the perpendiculars dropped from the other two vertices onto the edge line.
inline double interior_dihedral(const std::array<V3, 4>& v, int p, int q) {
  int others[2], n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != p && i != q) others[n++] = i;
  }
  const V3 e = (v[q] - v[p]).normalized();
  auto perp = [&](int k) {
    const V3 w = v[k] - v[p];
    return V3(w - w.dot(e) * e);
  };
  const V3 a = perp(others[0]), b = perp(others[1]);
  return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
}

// Exterior angles pi - theta for a nondegenerate tetrahedron.
inline std::array<double, 6> exterior_angles(const std::array<V3, 4>& v) {
  const int pairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}};
  std::array<double, 6> psi{};
  for (int r = 0; r < 6; ++r) psi[r] = std::numbers::pi - interior_dihedral(v, pairs[r][0], pairs[r][1]);
  return psi;
}

// Rodrigues rotation.
inline Eigen::Matrix3d rodrigues(const V3& axis, double angle) {
  const V3 n = axis.normalized();
  Eigen::Matrix3d k;
  k << 0, -n.z(), n.y(), n.z(), 0, -n.x(), -n.y(), n.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

// sum_{m=-j}^{j} exp(i m phi), summed directly.
inline double character_sum(int two_j, double phi) {
  std::complex<double> s = 0.0;
  for (int tm = -two_j; tm <= two_j; tm += 2) s += std::exp(std::complex<double>(0.0, 0.5 * tm * phi));
  return s.real();
}

// Racah formula in long double for small spins, from the triangle coefficient
// Delta(a,b,c) and a direct alternating sum.
inline long double fact(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline bool triad(int a, int b, int c) {  // doubled spins
  return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b;
}

inline long double delta(int a, int b, int c) {  // doubled spins
  return std::sqrt(fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2) / fact((a + b + c) / 2 + 1));
}

inline double racah_6j(const std::array<int, 6>& tj) {
  const int a = tj[0], b = tj[1], c = tj[2], d = tj[3], e = tj[4], f = tj[5];
  if (!triad(a, b, c) || !triad(a, e, f) || !triad(d, b, f) || !triad(d, e, c)) return 0.0;
  const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
  const int s1 = (a + b + d + e) / 2, s2 = (a + c + d + f) / 2, s3 = (b + c + e + f) / 2;
  long double sum = 0;
  for (int k = std::max({t1, t2, t3, t4}); k <= std::min({s1, s2, s3}); ++k) {
    const long double term =
        fact(k + 1) / (fact(k - t1) * fact(k - t2) * fact(k - t3) * fact(k - t4) * fact(s1 - k) * fact(s2 - k) * fact(s3 - k));
    sum += (k % 2 ? -term : term);
  }
  return static_cast<double>(delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c) * sum);
}

// Random tetrahedron vertices with a volume floor.
inline std::array<V3, 4> random_vertices(std::mt19937_64& rng, double min_volume = 0.02) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::array<V3, 4> v;
    for (auto& p : v) p = V3(u(rng), u(rng), u(rng));
    const double vol = (v[1] - v[0]).dot((v[2] - v[0]).cross(v[3] - v[0])) / 6.0;
    if (std::abs(vol) > min_volume) return v;
  }
}

}  // namespace oracle

#endif
