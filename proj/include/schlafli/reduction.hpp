#ifndef SCHLAFLI_REDUCTION_HPP
#define SCHLAFLI_REDUCTION_HPP

// Two reductions of the spinor phase space. First stage: a pair (z, z') with
// I = I' maps to (g, J) in T*SU(2), z = g Theta z', J = -R(g) J'. Second
// stage: points of Lambda_J (J + J' = 0, |J| fixed) map to the (J, tau)
// cylinder, where the tetrahedron sits at tau = -2 psi.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "schlafli/contour.hpp"
#include "schlafli/geometry.hpp"
#include "schlafli/spinor.hpp"

namespace schlafli {

struct ReducedPoint {
  SU2Element g;
  Vec3 J = Vec3::Zero();

  // J' = -R(g)^T J
  Vec3 Jp() const { return -so3_from_su2(g).transpose() * J; }
};

inline ReducedPoint project_pair(const Spinor& z, const Spinor& zp) {
  ReducedPoint p;
  p.g = recover_group(z, time_reversal(zp));
  p.J = angular_momentum(z);
  return p;
}

// Tangent vector at (g, J). Only dg enters the one-form.
struct ReducedTangent {
  Mat2c dg = Mat2c::Zero();
  Vec3 dJ = Vec3::Zero();
};

// dg = -(i/2) (v.sigma) g, i.e. the tangent with right-invariant components v.
inline Mat2c right_tangent(const SU2Element& g, const Vec3& v) {
  return Complex(0.0, -0.5) * pauli::dot(v) * g.matrix();
}

struct OneFormValue {
  double right = 0.0;  // J . rho_R
  double left = 0.0;   // -J' . rho_L
};

// rho_R^i = -i tr(sigma_i g dg^dag), rho_L^i = i tr(sigma_i g^dag dg).
inline OneFormValue one_form_value(const ReducedPoint& p, const ReducedTangent& t, double tol = 1e-10) {
  const Mat2c& g = p.g.matrix();
  const Mat2c x = g.adjoint() * t.dg;
  const double scale = std::max(1.0, t.dg.cwiseAbs().maxCoeff());
  if ((x + x.adjoint()).cwiseAbs().maxCoeff() > tol * scale || std::abs(x.trace()) > tol * scale) {
    throw PreconditionError("dg is not tangent to SU(2) at g");
  }
  const Mat2c right_form = g * t.dg.adjoint();
  Vec3 rho_r, rho_l;
  for (int i = 0; i < 3; ++i) {
    rho_r[i] = (Complex(0.0, -1.0) * (pauli::component(i) * right_form).trace()).real();
    rho_l[i] = (Complex(0.0, 1.0) * (pauli::component(i) * x).trace()).real();
  }
  return {p.J.dot(rho_r), -p.Jp().dot(rho_l)};
}

enum class Generator { J_n, Jp_n, I, J_plus_Jp_n };

inline const char* to_string(Generator gen) {
  switch (gen) {
    case Generator::J_n: return "J.n";
    case Generator::Jp_n: return "J'.n";
    case Generator::I: return "I";
    case Generator::J_plus_Jp_n: return "(J+J').n";
  }
  return "?";
}

// Closed-form flows on T*SU(2). The direction n is ignored by the I flow,
// which rotates about j-hat = J / |J|.
inline ReducedPoint flow(const ReducedPoint& p, Generator gen, const Vec3& n, double alpha) {
  ReducedPoint q = p;
  switch (gen) {
    case Generator::J_n: {
      const SU2Element u = su2_axis_angle(n, alpha);
      q.g = u * p.g;
      q.J = so3_from_su2(u) * p.J;
      return q;
    }
    case Generator::Jp_n:
      q.g = p.g * su2_axis_angle(n, alpha).inverse();
      return q;
    case Generator::I: {
      const double j = p.J.norm();
      if (j == 0.0) throw PreconditionError("the I flow is undefined at J = 0");
      q.g = su2_axis_angle(p.J / j, alpha) * p.g;
      return q;
    }
    case Generator::J_plus_Jp_n: {
      const SU2Element u = su2_axis_angle(n, alpha);
      q.g = u * p.g * u.inverse();
      q.J = so3_from_su2(u) * p.J;
      return q;
    }
  }
  throw PreconditionError("unknown generator");
}

// The matching flow on a spinor pair (z, z').
inline std::pair<Spinor, Spinor> flow_spinors(const Spinor& z, const Spinor& zp, Generator gen, const Vec3& n,
                                              double alpha) {
  switch (gen) {
    case Generator::J_n: return {su2_axis_angle(n, alpha) * z, zp};
    case Generator::Jp_n: return {z, su2_axis_angle(n, alpha) * zp};
    case Generator::I: return {std::exp(Complex(0.0, -0.5 * alpha)) * z, zp};
    case Generator::J_plus_Jp_n: {
      const SU2Element u = su2_axis_angle(n, alpha);
      return {u * z, u * zp};
    }
  }
  throw PreconditionError("unknown generator");
}

// Integral of theta = J . rho_R along a sampled path; each step is treated as
// the one-parameter subgroup g_{k+1} g_k^{-1} = u(a, phi), rho_R = phi a.
inline double theta_integral(const std::vector<ReducedPoint>& path) {
  if (path.size() < 2) throw PreconditionError("theta_integral needs at least two samples");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const AxisAngle step = axis_angle(path[k + 1].g * path[k].g.inverse());
    double phi = step.phi;
    Vec3 axis = step.axis;
    if (phi > pi) {  // shortest representative of the step
      phi = 2.0 * pi - phi;
      axis = -axis;
    }
    total += 0.5 * (path[k].J + path[k + 1].J).dot(phi * axis);
  }
  return total;
}

enum class LambdaBranch { upper, lower, sphere_plus, sphere_minus, not_member };

inline const char* to_string(LambdaBranch b) {
  switch (b) {
    case LambdaBranch::upper: return "UPPER";
    case LambdaBranch::lower: return "LOWER";
    case LambdaBranch::sphere_plus: return "SPHERE_PLUS";
    case LambdaBranch::sphere_minus: return "SPHERE_MINUS";
    case LambdaBranch::not_member: return "NOT_MEMBER";
  }
  return "?";
}

// Membership in Lambda_J: |J| = J, J + J' = 0, and with g = u(a, phi) either
// g = +-1 or J = +-J a. Vector tolerances are relative to J.
inline LambdaBranch lambda_membership(const ReducedPoint& p, double J, double tol = 1e-8) {
  if (!(J > 0.0)) throw PreconditionError("lambda_membership needs J > 0");
  const double vtol = tol * J;
  if (std::abs(p.J.norm() - J) > vtol) return LambdaBranch::not_member;
  if ((p.J + p.Jp()).norm() > vtol) return LambdaBranch::not_member;
  const Mat2c& g = p.g.matrix();
  if ((g - Mat2c::Identity()).cwiseAbs().maxCoeff() <= tol) return LambdaBranch::sphere_plus;
  if ((g + Mat2c::Identity()).cwiseAbs().maxCoeff() <= tol) return LambdaBranch::sphere_minus;
  const Vec3 a = axis_angle(p.g).axis;
  if ((p.J - J * a).norm() <= vtol) return LambdaBranch::upper;
  if ((p.J + J * a).norm() <= vtol) return LambdaBranch::lower;
  return LambdaBranch::not_member;
}

struct CylinderPoint {
  double J = 0.0;
  double tau = 0.0;
};

inline CylinderPoint project_cylinder(const ReducedPoint& p, double tol = 1e-8) {
  const double j = p.J.norm();
  if (j == 0.0) return {0.0, 0.0};
  const LambdaBranch b = lambda_membership(p, j, tol);
  switch (b) {
    case LambdaBranch::sphere_plus: return {j, 0.0};
    case LambdaBranch::sphere_minus: return {j, 2.0 * pi};
    case LambdaBranch::upper: return {j, axis_angle(p.g).phi};
    case LambdaBranch::lower: return {j, -axis_angle(p.g).phi};
    case LambdaBranch::not_member: break;
  }
  throw PreconditionError("point is not on Lambda_J; no cylinder coordinates");
}

// chi^j(phi) = sin((j + 1/2) phi) / sin(phi / 2), two_j = 2j. Even and
// 4 pi periodic; truncated power series near the zeros of sin(phi/2).
inline double character(int two_j, double phi) {
  if (two_j < 0) throw PreconditionError("character needs 2j >= 0");
  phi = std::fmod(std::abs(phi), 4.0 * pi);
  if (phi > 2.0 * pi) phi = 4.0 * pi - phi;
  const double j = 0.5 * two_j;
  const double dim = two_j + 1.0;
  auto series = [&](double e) {
    const double m2 = j * (j + 1.0) * dim / 3.0;
    const double m4 = j * (j + 1.0) * dim * (3.0 * j * j + 3.0 * j - 1.0) / 15.0;
    const double e2 = e * e;
    return dim - 0.5 * e2 * m2 + e2 * e2 * m4 / 24.0;
  };
  constexpr double cutoff = 1e-4;
  if (phi < cutoff) return series(phi);
  if (2.0 * pi - phi < cutoff) return (two_j % 2 ? -1.0 : 1.0) * series(2.0 * pi - phi);
  return std::sin((j + 0.5) * phi) / std::sin(0.5 * phi);
}

// The closed contour P(l0) -> P'(l0) -> P'(l1) -> P(l1) -> P(l0) after both
// reductions. Segment integrals of sum_r J_r d tau_r, summed over edges.
struct CylinderContourReport {
  std::array<double, 4> segments{};  // I-flow at l0, P' family, I-flow back at l1, P family
  std::array<double, 6> per_edge{};
  double total = 0.0;
  double expected = 0.0;             // 2 [S(l1) - S(l0)]
  double upstairs = 0.0;             // wall action from the Stokes sweep
  double discrepancy() const { return std::abs(total - expected); }
  double upstairs_discrepancy() const { return std::abs(total - upstairs); }
};

namespace detail {

// Cylinder images of the six pairs of a configuration.
inline std::array<CylinderPoint, 6> cylinder_images(const SpinorConfig& c) {
  std::array<CylinderPoint, 6> out;
  for (int r = 0; r < 6; ++r) out[r] = project_cylinder(project_pair(c.z[r], c.zp[r]));
  return out;
}

inline void accumulate(const std::vector<std::array<CylinderPoint, 6>>& path, std::array<double, 6>& per_edge,
                       double& segment) {
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    for (int r = 0; r < 6; ++r) {
      const double v = 0.5 * (path[k][r].J + path[k + 1][r].J) * (path[k + 1][r].tau - path[k][r].tau);
      per_edge[r] += v;
      segment += v;
    }
  }
}

// P -> P' through simultaneous I_r flows z_r -> exp(i t psi_r) z_r.
inline std::vector<std::array<CylinderPoint, 6>> vertical_path(const SpinorConfig& p, const std::array<double, 6>& psi,
                                                                int samples, bool reverse) {
  std::vector<std::array<CylinderPoint, 6>> path;
  for (int k = 0; k < samples; ++k) {
    double t = static_cast<double>(k) / (samples - 1);
    if (reverse) t = 1.0 - t;
    SpinorConfig c = p;
    for (int r = 0; r < 6; ++r) c.z[r] = std::exp(Complex(0.0, t * psi[r])) * p.z[r];
    path.push_back(cylinder_images(c));
  }
  return path;
}

}  // namespace detail

inline CylinderContourReport cylinder_contour_check(const SweepSpec& spec, int vertical_samples = 64) {
  const StokesReport stokes = stokes_sweep(spec);
  CylinderContourReport rep;
  std::vector<std::array<CylinderPoint, 6>> top, bottom;
  SpinorConfig p0, p1;
  std::array<double, 6> psi0{}, psi1{};
  for (int k = 0; k <= spec.n; ++k) {
    const TetraEmbedding emb = embed(spec.at(spec.lambda(k)), Orientation::positive);
    const SpinorConfig p = build_config(emb);
    const SpinorConfig pp = leg2(leg1(p, emb.normals), emb.normals);
    top.push_back(detail::cylinder_images(pp));
    bottom.push_back(detail::cylinder_images(p));
    if (k == 0) {
      p0 = p;
      psi0 = emb.psi;
    }
    if (k == spec.n) {
      p1 = p;
      psi1 = emb.psi;
    }
  }
  std::reverse(bottom.begin(), bottom.end());
  detail::accumulate(detail::vertical_path(p0, psi0, vertical_samples, false), rep.per_edge, rep.segments[0]);
  detail::accumulate(top, rep.per_edge, rep.segments[1]);
  detail::accumulate(detail::vertical_path(p1, psi1, vertical_samples, true), rep.per_edge, rep.segments[2]);
  detail::accumulate(bottom, rep.per_edge, rep.segments[3]);
  for (double s : rep.segments) rep.total += s;
  rep.expected = 2.0 * stokes.delta_S;
  rep.upstairs = stokes.wall_action;
  return rep;
}

}  // namespace schlafli

#endif
