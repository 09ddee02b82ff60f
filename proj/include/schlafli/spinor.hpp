#ifndef SCHLAFLI_SPINOR_HPP
#define SCHLAFLI_SPINOR_HPP

// Algebra of the spinor phase space C^2: Hopf map, time reversal,
// axis-angle SU(2) elements, the SU(2) -> SO(3) projection, the quaternion
// matrix M(z) = (z, Theta z) and recovery of g from a pair z = g z'.

#include <cmath>
#include <string>

#include "schlafli/common.hpp"

namespace schlafli {

struct Spinor {
  Vec2c v = Vec2c::Zero();

  Spinor() = default;
  Spinor(Complex a, Complex b) { v << a, b; }
  explicit Spinor(const Vec2c& w) : v(w) {}

  Complex operator[](int i) const { return v[i]; }

  // I = (1/2) z^dagger z
  double action() const { return 0.5 * v.squaredNorm(); }

  bool operator==(const Spinor&) const = default;
};

inline Spinor operator*(Complex c, const Spinor& s) { return Spinor(Vec2c(c * s.v)); }
inline Spinor operator*(const Mat2c& m, const Spinor& s) { return Spinor(Vec2c(m * s.v)); }

// I and the angular momentum vector J = (1/2) z^dagger sigma z.
struct HopfImage {
  double I = 0.0;
  Vec3 J = Vec3::Zero();
};

inline HopfImage hopf_map(const Spinor& z) {
  const Complex a = z[0], b = z[1];
  const Complex ab = std::conj(a) * b;
  HopfImage h;
  h.I = 0.5 * (std::norm(a) + std::norm(b));
  h.J = Vec3(ab.real(), ab.imag(), 0.5 * (std::norm(a) - std::norm(b)));
  return h;
}

inline Vec3 angular_momentum(const Spinor& z) { return hopf_map(z).J; }

class SU2Element {
 public:
  SU2Element() : m_(Mat2c::Identity()) {}

  // Throws PreconditionError unless g^dagger g = 1 and det g = 1 within tol.
  static SU2Element from_matrix(const Mat2c& g, double tol = 1e-12) {
    const double unitarity = (g.adjoint() * g - Mat2c::Identity()).cwiseAbs().maxCoeff();
    const double det = std::abs(g.determinant() - Complex(1.0, 0.0));
    if (unitarity > tol || det > tol) {
      throw PreconditionError("matrix is not in SU(2): unitarity defect " +
                              std::to_string(unitarity) + ", det defect " + std::to_string(det));
    }
    return SU2Element(g);
  }

  // Nearest SU(2) element in the Frobenius norm: project onto the quaternion
  // subspace [[a, -conj(b)], [b, conj(a)]] and normalize.
  static SU2Element project(const Mat2c& g) {
    const Complex a = 0.5 * (g(0, 0) + std::conj(g(1, 1)));
    const Complex b = 0.5 * (g(1, 0) - std::conj(g(0, 1)));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0) throw PreconditionError("cannot project a matrix with no quaternion part to SU(2)");
    Mat2c u;
    u << a / n, -std::conj(b) / n, b / n, std::conj(a) / n;
    return SU2Element(u);
  }

  static SU2Element identity() { return SU2Element(); }

  const Mat2c& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  SU2Element inverse() const { return SU2Element(m_.adjoint()); }
  SU2Element operator-() const { return SU2Element(-m_); }

  friend SU2Element operator*(const SU2Element& a, const SU2Element& b) {
    return SU2Element(a.m_ * b.m_);
  }
  friend Spinor operator*(const SU2Element& g, const Spinor& z) { return Spinor(Vec2c(g.m_ * z.v)); }

 private:
  explicit SU2Element(const Mat2c& m) : m_(m) {}
  Mat2c m_;
};

// u(n, alpha) = exp(-i (alpha/2) n.sigma) = cos(alpha/2) - i sin(alpha/2) n.sigma
inline SU2Element su2_axis_angle(const Vec3& n, double alpha) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw PreconditionError("rotation axis must be a unit vector (|n| = " + std::to_string(n.norm()) + ")");
  }
  const Mat2c u = std::cos(0.5 * alpha) * Mat2c::Identity() -
                  Complex(0.0, std::sin(0.5 * alpha)) * pauli::dot(n);
  return SU2Element::project(u);
}

// R_ij(u) = (1/2) tr(u^dagger sigma_i u sigma_j), so that J(u z) = R(u) J(z).
inline Mat3 so3_from_su2(const SU2Element& u) {
  const Mat2c& g = u.matrix();
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    const Mat2c conj_i = g.adjoint() * pauli::component(i) * g;
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (conj_i * pauli::component(j)).trace().real();
  }
  return r;
}

// Rotation by alpha about the unit axis n (right-hand rule).
inline Mat3 rotation(const Vec3& n, double alpha) { return so3_from_su2(su2_axis_angle(n, alpha)); }

// g = cos(phi/2) - i sin(phi/2) a.sigma with phi in [0, 2 pi]. At g = +-1 the
// axis is arbitrary and reported as z-hat.
struct AxisAngle {
  Vec3 axis = Vec3::UnitZ();
  double phi = 0.0;
};

inline AxisAngle axis_angle(const SU2Element& u) {
  const Mat2c& g = u.matrix();
  const double q0 = 0.5 * (g(0, 0) + g(1, 1)).real();
  Vec3 q;
  for (int i = 0; i < 3; ++i) {
    q[i] = (Complex(0.0, 0.5) * (pauli::component(i) * g).trace()).real();
  }
  const double s = q.norm();
  AxisAngle out;
  out.phi = 2.0 * std::atan2(s, q0);
  if (s > 0.0) out.axis = q / s;
  return out;
}

// Theta z = U0 conj(z), U0 = exp(-i (pi/2) sigma_y) = [[0, -1], [1, 0]].
inline Spinor time_reversal(const Spinor& z) { return Spinor(-std::conj(z[1]), std::conj(z[0])); }

inline Mat2c u0_matrix() {
  Mat2c m;
  m << 0.0, -1.0, 1.0, 0.0;
  return m;
}

// M(z) = (z, Theta z); det M = 2I and M/sqrt(2I) is in SU(2).
inline Mat2c quaternion_matrix(const Spinor& z) {
  const Spinor t = time_reversal(z);
  Mat2c m;
  m << z[0], t[0], z[1], t[1];
  return m;
}

// The unique g in SU(2) with z = g z', g = M(z) M(z')^{-1}. Both spinors must
// be nonzero with equal I to a relative 1e-9; the result is re-projected onto
// SU(2) so downstream flows stay exactly unitary.
inline SU2Element recover_group(const Spinor& z, const Spinor& zp, double rel_tol = 1e-9) {
  const double i1 = z.action();
  const double i2 = zp.action();
  if (i1 == 0.0 || i2 == 0.0) throw PreconditionError("recover_group: zero spinor");
  if (std::abs(i1 - i2) > rel_tol * std::max(i1, i2)) {
    throw PreconditionError("recover_group: spinor norms differ (I = " + std::to_string(i1) +
                            ", I' = " + std::to_string(i2) + ")");
  }
  const Mat2c g = quaternion_matrix(z) * quaternion_matrix(zp).inverse();
  return SU2Element::project(g);
}

}  // namespace schlafli

#endif
