#ifndef SCHLAFLI_QDEFORM_HPP
#define SCHLAFLI_QDEFORM_HPP

// Deformed angular momentum as the group B of upper-triangular SL(2,C)
// matrices with real positive diagonal:
//   b = [[exp(-Jz / 2 J0), -J- / J0], [0, exp(Jz / 2 J0)]],  J- = Jx - i Jy.
// The coproduct of deformed angular momenta is matrix multiplication in B.
// B acts on hyperbolic space, realized as unit-determinant positive
// Hermitian matrices X with b . X = b X b^dag; the distance d(o, b . o)
// stands in for the "length" of a deformed vector.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "schlafli/common.hpp"

namespace schlafli::q {

struct DeformedJ {
  double Jz = 0.0;
  Complex Jminus{0.0, 0.0};

  Complex Jplus() const { return std::conj(Jminus); }
  double Jx() const { return Jminus.real(); }
  double Jy() const { return -Jminus.imag(); }

  static DeformedJ from_vector(const Vec3& j) { return {j.z(), Complex(j.x(), -j.y())}; }
  Vec3 vector() const { return Vec3(Jx(), Jy(), Jz); }

  bool operator==(const DeformedJ&) const = default;
};

inline double distance(const DeformedJ& a, const DeformedJ& b) {
  return std::max(std::abs(a.Jz - b.Jz), std::abs(a.Jminus - b.Jminus));
}

class BElement {
 public:
  BElement() : m_(Mat2c::Identity()) {}

  // Throws unless m is upper triangular with real positive diagonal and det 1.
  static BElement from_matrix(const Mat2c& m, double tol = 1e-12) {
    const bool ok = std::abs(m(1, 0)) <= tol && std::abs(m(0, 0).imag()) <= tol && std::abs(m(1, 1).imag()) <= tol &&
                    m(0, 0).real() > 0.0 && m(1, 1).real() > 0.0 &&
                    std::abs(m.determinant() - Complex(1.0, 0.0)) <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!ok) throw PreconditionError("matrix is not in the group B");
    Mat2c c = m;
    c(1, 0) = 0.0;
    c(0, 0) = c(0, 0).real();
    c(1, 1) = c(1, 1).real();
    return BElement(c);
  }

  const Mat2c& matrix() const { return m_; }

  friend BElement operator*(const BElement& a, const BElement& b) {
    // Triangular product written out so the zero entry stays exactly zero.
    Mat2c c = Mat2c::Zero();
    c(0, 0) = a.m_(0, 0).real() * b.m_(0, 0).real();
    c(0, 1) = a.m_(0, 0) * b.m_(0, 1) + a.m_(0, 1) * b.m_(1, 1);
    c(1, 1) = a.m_(1, 1).real() * b.m_(1, 1).real();
    return BElement(c);
  }

  // [[a, c], [0, d]]^{-1} = [[d, -c], [0, a]] when ad = 1.
  BElement inverse() const {
    Mat2c c = Mat2c::Zero();
    c(0, 0) = m_(1, 1);
    c(0, 1) = -m_(0, 1);
    c(1, 1) = m_(0, 0);
    return BElement(c);
  }

 private:
  explicit BElement(const Mat2c& m) : m_(m) {}
  friend BElement b_from_J(const DeformedJ&, double);
  Mat2c m_;
};

inline BElement b_from_J(const DeformedJ& j, double J0 = 1.0) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = std::exp(-0.5 * j.Jz / J0);
  m(0, 1) = -j.Jminus / J0;
  m(1, 1) = std::exp(0.5 * j.Jz / J0);
  return BElement(m);
}

inline DeformedJ J_from_b(const BElement& b, double J0 = 1.0) {
  // Jz from the two diagonal entries together, symmetric in roundoff.
  const double a = b.matrix()(0, 0).real(), d = b.matrix()(1, 1).real();
  return {J0 * (std::log(d) - std::log(a)), -J0 * b.matrix()(0, 1)};
}

// Jz = J1z + J2z, J- = exp(-J1z / 2) J2- + J1- exp(J2z / 2).
inline DeformedJ comult2(const DeformedJ& j1, const DeformedJ& j2, double J0 = 1.0) {
  return {j1.Jz + j2.Jz, std::exp(-0.5 * j1.Jz / J0) * j2.Jminus + j1.Jminus * std::exp(0.5 * j2.Jz / J0)};
}

inline DeformedJ comult3(const DeformedJ& j1, const DeformedJ& j2, const DeformedJ& j3, double J0 = 1.0) {
  const double h = 0.5 / J0;
  return {j1.Jz + j2.Jz + j3.Jz, std::exp(-h * (j1.Jz + j2.Jz)) * j3.Jminus +
                                     std::exp(-h * j1.Jz) * j2.Jminus * std::exp(h * j3.Jz) +
                                     j1.Jminus * std::exp(h * (j2.Jz + j3.Jz))};
}

// J2 with b(J2) = b(J1)^{-1}, read off in closed form: (-Jz, -J-).
inline DeformedJ diangle_closure(const DeformedJ& j1) { return {-j1.Jz, -j1.Jminus}; }

// Points of hyperbolic 3-space.
inline Mat2c origin() { return Mat2c::Identity(); }

inline Mat2c act(const BElement& b, const Mat2c& x) { return b.matrix() * x * b.matrix().adjoint(); }

inline Mat2c hyperbolic_point(const BElement& b) { return act(b, origin()); }

// cosh d = (1/2) tr(X1^{-1} X2).
inline double hyperbolic_distance(const Mat2c& x1, const Mat2c& x2) {
  const double c = 0.5 * (x1.inverse() * x2).trace().real();
  return std::acosh(std::max(1.0, c));
}

// d(o, b . o)
inline double length(const BElement& b) { return hyperbolic_distance(origin(), hyperbolic_point(b)); }

// Deformed triangle: J3 closes b1 b2 b3 = 1. The vertices o, b1 . o,
// b1 b2 . o have side lengths equal to the lengths of b1, b2, b3.
struct TriangleClosure {
  DeformedJ J3;
  std::array<Mat2c, 3> vertices;
  std::array<double, 3> sides{};    // d(v0,v1), d(v1,v2), d(v2,v0)
  std::array<double, 3> lengths{};  // length(b1), length(b2), length(b3)
  DeformedJ total;                  // comult3(J1, J2, J3)
};

inline TriangleClosure triangle_closure(const DeformedJ& j1, const DeformedJ& j2, double J0 = 1.0) {
  TriangleClosure t;
  t.J3 = diangle_closure(comult2(j1, j2, J0));
  const BElement b1 = b_from_J(j1, J0), b2 = b_from_J(j2, J0), b3 = b_from_J(t.J3, J0);
  t.vertices = {origin(), hyperbolic_point(b1), hyperbolic_point(b1 * b2)};
  t.sides = {hyperbolic_distance(t.vertices[0], t.vertices[1]), hyperbolic_distance(t.vertices[1], t.vertices[2]),
             hyperbolic_distance(t.vertices[2], t.vertices[0])};
  t.lengths = {length(b1), length(b2), length(b3)};
  t.total = comult3(j1, j2, t.J3, J0);
  return t;
}

}  // namespace schlafli::q

#endif
