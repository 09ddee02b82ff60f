#ifndef SCHLAFLI_CONTOUR_HPP
#define SCHLAFLI_CONTOUR_HPP

// The twelve-spinor configuration of a tetrahedron and the closed contour
// P -> Q -> P' -> P whose action is 2S, together with a numerical rerun of
// the Stokes-theorem argument over one-parameter families of tetrahedra.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "schlafli/geometry.hpp"
#include "schlafli/spinor.hpp"

namespace schlafli {

// Section of the Hopf map: a spinor zeta with hopf_map(zeta).J = v. Two
// charts, switching at the equator so that both stay well conditioned.
inline Spinor hopf_lift(const Vec3& v) {
  const double j = v.norm();
  if (j == 0.0) return Spinor();
  const Complex w(v.x(), v.y());
  if (v.z() >= 0.0) {
    const double a = std::sqrt(j + v.z());
    return Spinor(Complex(a, 0.0), w / a);
  }
  const double b = std::sqrt(j - v.z());
  return Spinor(std::conj(w) / b, Complex(b, 0.0));
}

// Unprimed z_r and primed z'_r, r = 0..5. Slot-to-face incidence is
// topology::edge_faces.
struct SpinorConfig {
  std::array<Spinor, 6> z;
  std::array<Spinor, 6> zp;

  Vec3 J(int r) const { return angular_momentum(z[r]); }
  Vec3 Jp(int r) const { return angular_momentum(zp[r]); }

  // J_1+J_2+J_3, J'_1+J'_5+J_6, J'_2+J'_6+J_4, J'_3+J'_4+J_5
  std::array<Vec3, 4> face_sums() const {
    std::array<Vec3, 4> s{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
    for (int r = 0; r < 6; ++r) {
      s[topology::edge_faces[r].unprimed] += J(r);
      s[topology::edge_faces[r].primed] += Jp(r);
    }
    return s;
  }

  double triangle_defect() const {
    double m = 0.0;
    for (const auto& s : face_sums()) m = std::max(m, s.norm());
    return m;
  }

  double diangle_defect() const {
    double m = 0.0;
    for (int r = 0; r < 6; ++r) m = std::max(m, (J(r) + Jp(r)).norm());
    return m;
  }

  Vec3 total_angular_momentum() const {
    Vec3 t = Vec3::Zero();
    for (int r = 0; r < 6; ++r) t += J(r) + Jp(r);
    return t;
  }

  bool triangles_closed(double tol = 1e-10) const { return triangle_defect() <= tol; }
  bool diangles_closed(double tol = 1e-10) const { return diangle_defect() <= tol; }

  // Componentwise max-norm distance.
  double distance(const SpinorConfig& o) const {
    double m = 0.0;
    for (int r = 0; r < 6; ++r) {
      m = std::max(m, (z[r].v - o.z[r].v).cwiseAbs().maxCoeff());
      m = std::max(m, (zp[r].v - o.zp[r].v).cwiseAbs().maxCoeff());
    }
    return m;
  }
};

using FaceNormals = std::array<Vec3, 4>;

// Edge vectors J_1 = A-B, J_2 = C-A, J_3 = B-C, J_4 = C-D, J_5 = B-D,
// J_6 = A-D with J'_r = -J_r. Each face's three assigned vectors then sum to
// zero. z'_r lifts J'_r and z_r = Theta z'_r.
inline SpinorConfig build_config(const TetraEmbedding& emb) {
  using namespace topology;
  const auto& v = emb.vertices;
  const std::array<Vec3, 6> edge{v[A] - v[B], v[C] - v[A], v[B] - v[C], v[C] - v[D], v[B] - v[D], v[A] - v[D]};
  dihedral_angles(emb);  // throws on a degenerate face
  SpinorConfig c;
  for (int r = 0; r < 6; ++r) {
    c.zp[r] = hopf_lift(-edge[r]);
    c.z[r] = time_reversal(c.zp[r]);
  }
  return c;
}

// Leg 1 at parameter alpha in [0, pi]: the diangle Hamiltonians
// n_{f'(r)} . (J_r + J'_r) rotate both spinors of pair r about the normal of
// the face holding J'_r. At alpha = pi every vector is inverted.
inline SpinorConfig leg1_at(const SpinorConfig& p, const FaceNormals& n, double alpha) {
  SpinorConfig c = p;
  for (int r = 0; r < 6; ++r) {
    const SU2Element u = su2_axis_angle(n[topology::edge_faces[r].primed], alpha);
    c.z[r] = u * p.z[r];
    c.zp[r] = u * p.zp[r];
  }
  return c;
}

// Leg 2 at parameter alpha in [0, -pi]: the face Hamiltonians n_f . (face sum)
// rotate each spinor about the normal of its own face.
inline SpinorConfig leg2_at(const SpinorConfig& q, const FaceNormals& n, double alpha) {
  SpinorConfig c = q;
  for (int r = 0; r < 6; ++r) {
    c.z[r] = su2_axis_angle(n[topology::edge_faces[r].unprimed], alpha) * q.z[r];
    c.zp[r] = su2_axis_angle(n[topology::edge_faces[r].primed], alpha) * q.zp[r];
  }
  return c;
}

// Leg 3 at parameter t in [0, 6]: the I_r flows z_r -> exp(-i alpha/2) z_r with
// alpha running to 2 psi_r, one edge after another.
inline SpinorConfig leg3_at(const SpinorConfig& pp, const std::array<double, 6>& psi, double t) {
  SpinorConfig c = pp;
  for (int r = 0; r < 6; ++r) {
    const double frac = std::clamp(t - r, 0.0, 1.0);
    c.z[r] = std::exp(Complex(0.0, -frac * psi[r])) * pp.z[r];
  }
  return c;
}

inline SpinorConfig leg1(const SpinorConfig& p, const FaceNormals& n) { return leg1_at(p, n, pi); }
inline SpinorConfig leg2(const SpinorConfig& q, const FaceNormals& n) { return leg2_at(q, n, -pi); }
inline SpinorConfig leg3(const SpinorConfig& pp, const std::array<double, 6>& psi) { return leg3_at(pp, psi, 6.0); }

using SpinorPath = std::vector<SpinorConfig>;

// n samples per leg (per edge flow on leg 3), endpoints included.
inline SpinorPath sample_leg1(const SpinorConfig& p, const FaceNormals& n, int samples) {
  SpinorPath path;
  path.reserve(samples);
  for (int k = 0; k < samples; ++k) path.push_back(leg1_at(p, n, pi * k / (samples - 1)));
  return path;
}

inline SpinorPath sample_leg2(const SpinorConfig& q, const FaceNormals& n, int samples) {
  SpinorPath path;
  path.reserve(samples);
  for (int k = 0; k < samples; ++k) path.push_back(leg2_at(q, n, -pi * k / (samples - 1)));
  return path;
}

inline SpinorPath sample_leg3(const SpinorConfig& pp, const std::array<double, 6>& psi, int samples) {
  SpinorPath path;
  path.reserve(6 * (samples - 1) + 1);
  path.push_back(pp);
  for (int r = 0; r < 6; ++r) {
    for (int k = 1; k < samples; ++k) path.push_back(leg3_at(pp, psi, r + static_cast<double>(k) / (samples - 1)));
  }
  return path;
}

// Trapezoid estimate of the integral of sum_r (i z_r^dag dz_r + i z'_r^dag dz'_r).
inline Complex action_integral(const SpinorPath& path) {
  if (path.size() < 2) throw PreconditionError("action_integral needs at least two samples");
  Complex total = 0.0;
  const Complex half_i(0.0, 0.5);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& a = path[k];
    const auto& b = path[k + 1];
    for (int r = 0; r < 6; ++r) {
      total += half_i * (a.z[r].v + b.z[r].v).dot(b.z[r].v - a.z[r].v);
      total += half_i * (a.zp[r].v + b.zp[r].v).dot(b.zp[r].v - a.zp[r].v);
    }
  }
  return total;
}

struct ContourResult {
  std::array<Complex, 3> actions{};       // legs 1, 2, 3
  std::array<double, 6> holonomy_phases{};  // arg(z_r(P)^dag z_r(P'))
  std::array<double, 6> psi{};              // geometric dihedral angles
  double S = 0.0;
  double primed_return = 0.0;   // max |z'_r(P') - z'_r(P)|
  double closure = 0.0;         // distance from the leg-3 endpoint to P
  double diangle_at_q = 0.0;
  double triangle_at_pprime = 0.0;
  Complex total() const { return actions[0] + actions[1] + actions[2]; }
};

inline ContourResult run_contour(const TetraEmbedding& emb, const EdgeLengths& edges, int samples = 10000) {
  const SpinorConfig p = build_config(emb);
  const SpinorConfig q = leg1(p, emb.normals);
  const SpinorConfig pp = leg2(q, emb.normals);
  const SpinorConfig back = leg3(pp, emb.psi);

  ContourResult res;
  res.psi = emb.psi;
  for (int r = 0; r < 6; ++r) {
    res.S += edges[r] * emb.psi[r];
    res.holonomy_phases[r] = std::arg(p.z[r].v.dot(pp.z[r].v));
    res.primed_return = std::max(res.primed_return, (pp.zp[r].v - p.zp[r].v).cwiseAbs().maxCoeff());
  }
  res.closure = back.distance(p);
  res.diangle_at_q = q.diangle_defect();
  res.triangle_at_pprime = pp.triangle_defect();
  res.actions[0] = action_integral(sample_leg1(p, emb.normals, samples));
  res.actions[1] = action_integral(sample_leg2(q, emb.normals, samples));
  res.actions[2] = action_integral(sample_leg3(pp, emb.psi, samples));
  return res;
}

inline ContourResult run_contour(const EdgeLengths& edges, int samples = 10000,
                                 Orientation orientation = Orientation::positive) {
  const TetraEmbedding emb = embed(edges, orientation);
  if (emb.existence != ExistenceClass::nondegenerate) {
    throw ExistenceError("the contour needs a nondegenerate tetrahedron");
  }
  return run_contour(emb, edges, samples);
}

// lambda -> base + lambda * direction on a uniform grid of n intervals.
struct SweepSpec {
  EdgeLengths base;
  std::array<double, 6> direction{};
  double lambda0 = 0.0;
  double lambda1 = 1.0;
  int n = 200;

  double lambda(int k) const { return lambda0 + (lambda1 - lambda0) * k / n; }
  EdgeLengths at(double lam) const {
    EdgeLengths e = base;
    for (int r = 0; r < 6; ++r) e[r] += lam * direction[r];
    return e;
  }

  // Throws unless every grid point is a nondegenerate tetrahedron.
  void validate() const {
    if (n < 2) throw PreconditionError("sweep needs at least two grid intervals");
    for (int k = 0; k <= n; ++k) {
      if (classify(at(lambda(k))) != ExistenceClass::nondegenerate) {
        throw ExistenceError("sweep leaves the nondegenerate region at lambda = " + std::to_string(lambda(k)));
      }
    }
  }
};

struct StokesReport {
  std::vector<double> lambda;
  std::vector<double> S;
  std::vector<std::array<double, 6>> psi;
  std::vector<double> residual;      // sum_r J_r d psi_r / d lambda
  double delta_S = 0.0;              // S(lambda1) - S(lambda0)
  double psi_dJ_integral = 0.0;      // sum_r integral psi_r dJ_r
  double wall_action = 0.0;          // 2 * psi_dJ_integral, with I_r = J_r
  double max_residual = 0.0;
  double discrepancy() const { return std::abs(delta_S - psi_dJ_integral); }
};

// Composite Simpson on a uniform grid; an odd interval count ends with the
// 3/8 rule on the last three intervals, so cubics integrate exactly.
inline double integrate_uniform(const std::vector<double>& f, double h) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return 0.0;
  if (m == 1) return 0.5 * h * (f[0] + f[1]);
  const std::size_t even = m % 2 ? m - 3 : m;
  double total = 0.0;
  if (even > 0) {
    double s = f[0] + f[even];
    for (std::size_t k = 1; k < even; ++k) s += (k % 2 ? 4.0 : 2.0) * f[k];
    total = s * h / 3.0;
  }
  if (m % 2) total += 3.0 * h * (f[m - 3] + 3.0 * f[m - 2] + 3.0 * f[m - 1] + f[m]) / 8.0;
  return total;
}

// Second-order finite differences of samples on a uniform grid.
inline std::vector<double> differentiate_uniform(const std::vector<double>& f, double h) {
  const std::size_t m = f.size();
  std::vector<double> d(m, 0.0);
  if (m < 3) {
    if (m == 2) d[0] = d[1] = (f[1] - f[0]) / h;
    return d;
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
  for (std::size_t k = 1; k + 1 < m; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
  return d;
}

inline StokesReport stokes_sweep(const SweepSpec& spec) {
  spec.validate();
  StokesReport rep;
  const int pts = spec.n + 1;
  const double h = (spec.lambda1 - spec.lambda0) / spec.n;
  std::array<std::vector<double>, 6> psi_r;
  for (auto& v : psi_r) v.resize(pts);
  for (int k = 0; k < pts; ++k) {
    const double lam = spec.lambda(k);
    const EdgeLengths e = spec.at(lam);
    const auto emb = embed(e, Orientation::positive);
    double s = 0.0;
    for (int r = 0; r < 6; ++r) {
      psi_r[r][k] = emb.psi[r];
      s += e[r] * emb.psi[r];
    }
    rep.lambda.push_back(lam);
    rep.S.push_back(s);
    rep.psi.push_back(emb.psi);
  }
  rep.delta_S = rep.S.back() - rep.S.front();
  rep.residual.assign(pts, 0.0);
  for (int r = 0; r < 6; ++r) {
    rep.psi_dJ_integral += spec.direction[r] * integrate_uniform(psi_r[r], h);
    if (h != 0.0) {
      const auto d = differentiate_uniform(psi_r[r], h);
      for (int k = 0; k < pts; ++k) rep.residual[k] += spec.at(rep.lambda[k])[r] * d[k];
    }
  }
  rep.wall_action = 2.0 * rep.psi_dJ_integral;
  for (double x : rep.residual) rep.max_residual = std::max(rep.max_residual, std::abs(x));
  return rep;
}

}  // namespace schlafli

#endif
