#ifndef SCHLAFLI_GEOMETRY_HPP
#define SCHLAFLI_GEOMETRY_HPP

// Tetrahedra from edge lengths: existence classification, explicit
// embedding, signed dihedral angles, the phase S = sum_r J_r psi_r, and the
// finite-difference residuals of the Euler, Schlafli and generating-function
// identities.
//
// Edge and vertex labeling (0-based in code, 1-based in docs):
//   edge 1 = AB, 2 = AC, 3 = BC, 4 = CD, 5 = BD, 6 = AD
//   faces ABC = {1,2,3}, ABD = {1,5,6}, ACD = {2,6,4}, BCD = {3,4,5}
// Opposite edge pairs are (1,4), (2,5), (3,6).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "schlafli/common.hpp"

namespace schlafli {

enum class ExistenceClass { nondegenerate, flat, degenerate_face, nonexistent };

inline const char* to_string(ExistenceClass c) {
  switch (c) {
    case ExistenceClass::nondegenerate: return "NONDEGENERATE";
    case ExistenceClass::flat: return "FLAT";
    case ExistenceClass::degenerate_face: return "DEGENERATE_FACE";
    case ExistenceClass::nonexistent: return "NONEXISTENT";
  }
  return "?";
}

namespace topology {

enum Vertex { A = 0, B = 1, C = 2, D = 3 };
enum Face { ABC = 0, ABD = 1, ACD = 2, BCD = 3 };

inline constexpr std::array<std::array<int, 2>, 6> edge_vertices{{{A, B}, {A, C}, {B, C}, {C, D}, {B, D}, {A, D}}};

// Edge triples of each face, in the order of the 6j triads (123), (156), (264), (345).
inline constexpr std::array<std::array<int, 3>, 4> face_edges{{{0, 1, 2}, {0, 4, 5}, {1, 5, 3}, {2, 3, 4}}};

// Vertex opposite each face.
inline constexpr std::array<int, 4> opposite_vertex{D, C, B, A};

// The two faces meeting at each edge. `unprimed` holds J_r and `primed` holds
// J'_r in the twelve-spinor configuration: J_1,J_2,J_3 in ABC, J_6 in ABD,
// J_4 in ACD, J_5 in BCD.
struct EdgeFaces {
  int unprimed;
  int primed;
};
inline constexpr std::array<EdgeFaces, 6> edge_faces{
    {{ABC, ABD}, {ABC, ACD}, {ABC, BCD}, {ACD, BCD}, {BCD, ABD}, {ABD, ACD}}};

}  // namespace topology

struct EdgeLengths {
  std::array<double, 6> J{};

  double operator[](int r) const { return J[r]; }
  double& operator[](int r) { return J[r]; }

  double mean() const {
    double s = 0.0;
    for (double x : J) s += x;
    return s / 6.0;
  }

  EdgeLengths scaled(double k) const {
    EdgeLengths e = *this;
    for (double& x : e.J) x *= k;
    return e;
  }

  bool operator==(const EdgeLengths&) const = default;
};

// Scale-covariant thresholds on the computed polynomials: a tetrahedron is
// flat when |288 V^2| <= flat_rel * L^6 and a face is degenerate when
// 16 area^2 <= face_rel * L^4, L the mean edge length.
struct Tolerances {
  double flat_rel = 1e-12;
  double face_rel = 1e-12;
};

// 16 area^2 of a triangle with sides a, b, c (Kahan's ordering); negative
// when the triangle inequality fails.
inline double heron16(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  return (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
}

inline double face_heron16(const EdgeLengths& e, int face) {
  const auto& f = topology::face_edges[face];
  return heron16(e[f[0]], e[f[1]], e[f[2]]);
}

// 288 V^2, evaluated as 8 det(G) with G the Gram matrix of AB, AC, AD.
inline double cayley_menger(const EdgeLengths& e) {
  const double ab2 = e[0] * e[0], ac2 = e[1] * e[1], bc2 = e[2] * e[2];
  const double cd2 = e[3] * e[3], bd2 = e[4] * e[4], ad2 = e[5] * e[5];
  const double g11 = ab2, g22 = ac2, g33 = ad2;
  const double g12 = 0.5 * (ab2 + ac2 - bc2);
  const double g13 = 0.5 * (ab2 + ad2 - bd2);
  const double g23 = 0.5 * (ac2 + ad2 - cd2);
  const double det = g11 * (g22 * g33 - g23 * g23) - g12 * (g12 * g33 - g23 * g13) +
                     g13 * (g12 * g23 - g22 * g13);
  return 8.0 * det;
}

inline ExistenceClass classify(const EdgeLengths& e, const Tolerances& tol = {}) {
  for (double x : e.J) {
    if (!(x >= 0.0) || !std::isfinite(x)) return ExistenceClass::nonexistent;
  }
  const double L = e.mean();
  const double L4 = L * L * L * L;
  bool degenerate = false;
  for (int f = 0; f < 4; ++f) {
    const double h = face_heron16(e, f);
    if (h < -tol.face_rel * L4) return ExistenceClass::nonexistent;
    if (h <= tol.face_rel * L4) degenerate = true;
  }
  if (degenerate) return ExistenceClass::degenerate_face;
  const double cm = cayley_menger(e);
  const double L6 = L4 * L * L;
  if (cm > tol.flat_rel * L6) return ExistenceClass::nondegenerate;
  if (cm >= -tol.flat_rel * L6) return ExistenceClass::flat;
  return ExistenceClass::nonexistent;
}

struct TetraEmbedding {
  std::array<Vec3, 4> vertices;
  double volume = 0.0;             // (1/6) AB . (AC x AD), signed
  std::array<Vec3, 4> normals;     // unit outward normals, indexed by topology::Face
  std::array<double, 6> psi{};     // signed dihedral angles in (-pi, pi]
  ExistenceClass existence = ExistenceClass::nondegenerate;

  Vec3 edge_vector(int r) const {
    const auto [p, q] = topology::edge_vertices[r];
    return vertices[q] - vertices[p];
  }
  double edge_length(int r) const { return edge_vector(r).norm(); }
  EdgeLengths lengths() const {
    EdgeLengths e;
    for (int r = 0; r < 6; ++r) e[r] = edge_length(r);
    return e;
  }
};

namespace detail {

inline double signed_volume(const std::array<Vec3, 4>& v) {
  return (v[1] - v[0]).dot((v[2] - v[0]).cross(v[3] - v[0])) / 6.0;
}

// Face normals induced by the vertex ordering; outward when V > 0, inward when
// V < 0, and the V -> 0+ limit on flat configurations. Not normalized.
inline std::array<Vec3, 4> oriented_normals(const std::array<Vec3, 4>& v) {
  using namespace topology;
  return {(v[C] - v[A]).cross(v[B] - v[A]), (v[B] - v[A]).cross(v[D] - v[A]),
          (v[D] - v[A]).cross(v[C] - v[A]), (v[C] - v[B]).cross(v[D] - v[B])};
}

}  // namespace detail

// Signed dihedral angles of an explicit embedding. For V >= 0 psi_r is the
// angle between the outward normals of the two faces at edge r, in [0, pi];
// for V < 0 it is minus the angle of the inverted shape.
inline std::array<double, 6> dihedral_angles(const std::array<Vec3, 4>& vertices,
                                             const Tolerances& tol = {}) {
  const auto n = detail::oriented_normals(vertices);
  double L = 0.0;
  for (const auto& [p, q] : topology::edge_vertices) L += (vertices[q] - vertices[p]).norm();
  L /= 6.0;
  for (int f = 0; f < 4; ++f) {
    // |n|^2 = 4 area^2
    if (4.0 * n[f].squaredNorm() <= tol.face_rel * L * L * L * L) {
      throw DegenerateFaceError("dihedral angles undefined: face " + std::to_string(f) + " is degenerate");
    }
  }
  const double v = detail::signed_volume(vertices);
  std::array<double, 6> psi{};
  for (int r = 0; r < 6; ++r) {
    const auto [f1, f2] = topology::edge_faces[r];
    const double angle = std::atan2(n[f1].cross(n[f2]).norm(), n[f1].dot(n[f2]));
    psi[r] = v < 0.0 ? -angle : angle;
    if (psi[r] <= -pi) psi[r] = pi;
  }
  return psi;
}

inline std::array<double, 6> dihedral_angles(const TetraEmbedding& emb, const Tolerances& tol = {}) {
  return dihedral_angles(emb.vertices, tol);
}

// Builds the embedding record (volume, outward normals, psi) for given vertices.
inline TetraEmbedding from_vertices(const std::array<Vec3, 4>& vertices, const Tolerances& tol = {}) {
  TetraEmbedding emb;
  emb.vertices = vertices;
  emb.volume = detail::signed_volume(vertices);
  emb.existence = classify(emb.lengths(), tol);
  const auto n = detail::oriented_normals(vertices);
  const double s = emb.volume < 0.0 ? -1.0 : 1.0;
  for (int f = 0; f < 4; ++f) emb.normals[f] = s * n[f].normalized();
  emb.psi = dihedral_angles(vertices, tol);
  return emb;
}

// A at the origin, AB along x, ABC in the xy-plane with C above the x-axis,
// D on the side selected by the orientation (ignored for flat input).
inline TetraEmbedding embed(const EdgeLengths& e, Orientation orientation = Orientation::positive,
                            const Tolerances& tol = {}) {
  const ExistenceClass cls = classify(e, tol);
  if (cls == ExistenceClass::nonexistent) {
    throw ExistenceError("no tetrahedron exists with the given edge lengths");
  }
  if (cls == ExistenceClass::degenerate_face) {
    throw DegenerateFaceError("edge lengths give a degenerate face; dihedral angles are not defined");
  }
  const double ab = e[0], ac = e[1], bc = e[2], cd = e[3], bd = e[4], ad = e[5];
  const double cx = (ab * ab + ac * ac - bc * bc) / (2.0 * ab);
  const double cy = 0.5 * std::sqrt(face_heron16(e, topology::ABC)) / ab;  // 2 area / AB
  const double dx = (ab * ab + ad * ad - bd * bd) / (2.0 * ab);
  const double dy = (ac * ac + ad * ad - cd * cd - 2.0 * cx * dx) / (2.0 * cy);
  double dz = 0.0;
  if (cls == ExistenceClass::nondegenerate) {
    const double abs_volume = std::sqrt(cayley_menger(e) / 288.0);
    dz = sign_of(orientation) * 6.0 * abs_volume / (ab * cy);
  }
  const std::array<Vec3, 4> v{Vec3::Zero(), Vec3(ab, 0.0, 0.0), Vec3(cx, cy, 0.0), Vec3(dx, dy, dz)};
  TetraEmbedding emb = from_vertices(v, tol);
  emb.existence = cls;
  return emb;
}

inline double pr_phase(const EdgeLengths& e, Orientation orientation = Orientation::positive,
                       const Tolerances& tol = {}) {
  const auto psi = embed(e, orientation, tol).psi;
  double s = 0.0;
  for (int r = 0; r < 6; ++r) s += e[r] * psi[r];
  return s;
}

using Jacobian = Eigen::Matrix<double, 6, 6>;

// Central stencils at a fixed step h, truncation error O(h^2), O(h^4) or
// O(h^6). Close to the flat stratum the derivatives of psi grow like powers of
// L^3 / V, and the higher orders keep thin slivers accurate at the same h. Near
// the existence boundary a stencil degrades to the widest one whose points are
// all nondegenerate, down to a second-order one-sided one.
enum class Stencil { central2, central4, central6 };

namespace detail {

inline std::optional<std::array<double, 6>> try_psi(const EdgeLengths& e, Orientation o, const Tolerances& tol) {
  if (classify(e, tol) != ExistenceClass::nondegenerate) return std::nullopt;
  return embed(e, o, tol).psi;
}

inline double default_step(const EdgeLengths& e) { return 1e-5 * e.mean(); }

// Derivative at 0 of f(k h); f returns nullopt where it is undefined.
template <std::size_t N, class F>
std::array<double, N> stencil_derivative(F&& f, double h, Stencil stencil, int direction) {
  std::array<double, N> d{};
  const auto p1 = f(1), m1 = f(-1);
  if (p1 && m1) {
    if (stencil != Stencil::central2) {
      const auto p2 = f(2), m2 = f(-2);
      if (p2 && m2 && stencil == Stencil::central6) {
        const auto p3 = f(3), m3 = f(-3);
        if (p3 && m3) {
          for (std::size_t i = 0; i < N; ++i) {
            d[i] = (45.0 * ((*p1)[i] - (*m1)[i]) - 9.0 * ((*p2)[i] - (*m2)[i]) + ((*p3)[i] - (*m3)[i])) / (60.0 * h);
          }
          return d;
        }
      }
      if (p2 && m2) {
        for (std::size_t i = 0; i < N; ++i) {
          d[i] = (8.0 * ((*p1)[i] - (*m1)[i]) - ((*p2)[i] - (*m2)[i])) / (12.0 * h);
        }
        return d;
      }
    }
    for (std::size_t i = 0; i < N; ++i) d[i] = ((*p1)[i] - (*m1)[i]) / (2.0 * h);
    return d;
  }
  const int dir = p1 ? 1 : -1;
  const auto one = p1 ? p1 : m1;
  const auto two = f(2 * dir);
  const auto zero = f(0);
  if (!one || !two || !zero) {
    throw ExistenceError("finite-difference stencil leaves the existence region along edge " +
                         std::to_string(direction + 1));
  }
  for (std::size_t i = 0; i < N; ++i) d[i] = dir * (-3.0 * (*zero)[i] + 4.0 * (*one)[i] - (*two)[i]) / (2.0 * h);
  return d;
}

}  // namespace detail

// D(r, s) = d psi_r / d J_s by finite differences at fixed orientation.
inline Jacobian jacobian_psi(const EdgeLengths& e, std::optional<double> step = std::nullopt,
                             Orientation orientation = Orientation::positive, const Tolerances& tol = {},
                             Stencil stencil = Stencil::central6) {
  if (classify(e, tol) != ExistenceClass::nondegenerate) {
    throw ExistenceError("jacobian_psi requires a nondegenerate tetrahedron");
  }
  const double h = step.value_or(detail::default_step(e));
  Jacobian d;
  for (int s = 0; s < 6; ++s) {
    auto shifted = [&](int k) {
      EdgeLengths p = e;
      p[s] += k * h;
      return detail::try_psi(p, orientation, tol);
    };
    const auto col = detail::stencil_derivative<6>(shifted, h, stencil, s);
    for (int r = 0; r < 6; ++r) d(r, s) = col[r];
  }
  return d;
}

struct ResidualReport {
  double schlafli = 0.0;   // max_s |sum_r J_r d psi_r / d J_s|
  double euler = 0.0;      // max_s |sum_r J_r d psi_s / d J_r|
  double symmetry = 0.0;   // max |D - D^T|
  double genfun = 0.0;     // max_r |dS/dJ_r - psi_r|
  double step = 0.0;
  Jacobian jacobian = Jacobian::Zero();
};

inline double schlafli_residual(const EdgeLengths& e, const Jacobian& d) {
  double worst = 0.0;
  for (int s = 0; s < 6; ++s) {
    double sum = 0.0;
    for (int r = 0; r < 6; ++r) sum += e[r] * d(r, s);
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

inline double euler_residual(const EdgeLengths& e, const Jacobian& d) {
  double worst = 0.0;
  for (int s = 0; s < 6; ++s) {
    double sum = 0.0;
    for (int r = 0; r < 6; ++r) sum += e[r] * d(s, r);
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

inline double symmetry_residual(const Jacobian& d) { return (d - d.transpose()).cwiseAbs().maxCoeff(); }

inline double schlafli_residual(const EdgeLengths& e, std::optional<double> step = std::nullopt,
                                const Tolerances& tol = {}) {
  return schlafli_residual(e, jacobian_psi(e, step, Orientation::positive, tol));
}

// max_r |dS/dJ_r - psi_r| with dS/dJ_r from finite differences of pr_phase.
inline double genfun_residual(const EdgeLengths& e, std::optional<double> step = std::nullopt,
                              const Tolerances& tol = {}, Stencil stencil = Stencil::central6) {
  if (classify(e, tol) != ExistenceClass::nondegenerate) {
    throw ExistenceError("genfun_residual requires a nondegenerate tetrahedron");
  }
  const double h = step.value_or(detail::default_step(e));
  const auto psi = embed(e, Orientation::positive, tol).psi;
  double worst = 0.0;
  for (int r = 0; r < 6; ++r) {
    auto shifted = [&](int k) -> std::optional<std::array<double, 1>> {
      EdgeLengths p = e;
      p[r] += k * h;
      if (classify(p, tol) != ExistenceClass::nondegenerate) return std::nullopt;
      return std::array<double, 1>{pr_phase(p, Orientation::positive, tol)};
    };
    const double ds = detail::stencil_derivative<1>(shifted, h, stencil, r)[0];
    worst = std::max(worst, std::abs(ds - psi[r]));
  }
  return worst;
}

inline ResidualReport residuals(const EdgeLengths& e, std::optional<double> step = std::nullopt,
                                const Tolerances& tol = {}, Stencil stencil = Stencil::central6) {
  ResidualReport rep;
  rep.step = step.value_or(detail::default_step(e));
  rep.jacobian = jacobian_psi(e, rep.step, Orientation::positive, tol, stencil);
  rep.schlafli = schlafli_residual(e, rep.jacobian);
  rep.euler = euler_residual(e, rep.jacobian);
  rep.symmetry = symmetry_residual(rep.jacobian);
  rep.genfun = genfun_residual(e, rep.step, tol, stencil);
  return rep;
}

}  // namespace schlafli

#endif
