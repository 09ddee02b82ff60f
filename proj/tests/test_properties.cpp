// Randomized invariants. Every generator is seeded, so a failure reproduces
// from the printed seed and sample index.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "schlafli/contour.hpp"
#include "schlafli/qdeform.hpp"
#include "schlafli/reduction.hpp"
#include "schlafli/sampling.hpp"
#include "schlafli/sixj.hpp"

using namespace schlafli;

namespace {

constexpr std::uint64_t seed = 0x5eed'0001;

int edge_index(int p, int q) {
  for (int r = 0; r < 6; ++r) {
    const auto [a, b] = topology::edge_vertices[r];
    if ((a == p && b == q) || (a == q && b == p)) return r;
  }
  return -1;
}

// Relabel the vertices by sigma; returns the image edge of each edge.
std::array<int, 6> edge_map(const std::array<int, 4>& sigma) {
  std::array<int, 6> m{};
  for (int r = 0; r < 6; ++r) m[r] = edge_index(sigma[topology::edge_vertices[r][0]], sigma[topology::edge_vertices[r][1]]);
  return m;
}

}  // namespace

TEST(GeometryProperty, ResidualsAtTheDefaultStep) {
  sampling::Rng rng(seed);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const EdgeLengths e = sampling::edges(rng);
    const ResidualReport rep = residuals(e);
    const double m = std::max({rep.schlafli, rep.euler, rep.symmetry, rep.genfun});
    worst = std::max(worst, m);
    EXPECT_LE(m, 1e-5) << "sample " << k;
  }
  RecordProperty("worst_residual", std::to_string(worst));
}

TEST(GeometryProperty, EmbedThenMeasureIsIdentity) {
  sampling::Rng rng(seed + 1);
  for (int k = 0; k < 300; ++k) {
    const EdgeLengths e = sampling::edges(rng);
    const EdgeLengths back = embed(e).lengths();
    for (int r = 0; r < 6; ++r) EXPECT_NEAR(back[r], e[r], 1e-12 * e[r]) << "sample " << k;
  }
}

TEST(GeometryProperty, InversionNegatesAnglesExactly) {
  sampling::Rng rng(seed + 2);
  for (int k = 0; k < 300; ++k) {
    const EdgeLengths e = sampling::edges(rng);
    const auto plus = embed(e, Orientation::positive);
    const auto minus = embed(e, Orientation::negative);
    for (int r = 0; r < 6; ++r) EXPECT_EQ(minus.psi[r], -plus.psi[r]);
    EXPECT_EQ(pr_phase(e, Orientation::negative), -pr_phase(e, Orientation::positive));
  }
}

TEST(GeometryProperty, ClassificationIsRelabelingInvariant) {
  sampling::Rng rng(seed + 3);
  std::array<int, 4> sigma{0, 1, 2, 3};
  std::vector<std::array<int, 6>> maps;
  do maps.push_back(edge_map(sigma));
  while (std::next_permutation(sigma.begin(), sigma.end()));
  ASSERT_EQ(maps.size(), 24u);

  auto relabel = [](const EdgeLengths& e, const std::array<int, 6>& m) {
    EdgeLengths out;
    for (int r = 0; r < 6; ++r) out[m[r]] = e[r];
    return out;
  };
  const EdgeLengths special[] = {
      EdgeLengths{{1, 1, std::sqrt(2.0), 1, 1, std::sqrt(2.0)}},
      EdgeLengths{{1, 1, 2, 1, 1, 1}},
      EdgeLengths{{1, 1, 3, 1, 1, 1}},
      EdgeLengths{{1, 1, 1, 1.9, 1, 1}},
  };
  for (const auto& e : special) {
    for (const auto& m : maps) EXPECT_EQ(classify(relabel(e, m)), classify(e));
  }
  for (int k = 0; k < 50; ++k) {
    EdgeLengths e;
    for (double& x : e.J) x = sampling::uniform(rng, 0.2, 2.0);  // any class
    for (const auto& m : maps) {
      const EdgeLengths f = relabel(e, m);
      EXPECT_EQ(classify(f), classify(e)) << "sample " << k;
      if (classify(e) == ExistenceClass::nondegenerate) {
        const auto pe = embed(e).psi, pf = embed(f).psi;
        for (int r = 0; r < 6; ++r) EXPECT_NEAR(pf[m[r]], pe[r], 1e-10);
      }
    }
  }
}

TEST(SpinorProperty, HopfNormAndHomomorphism) {
  sampling::Rng rng(seed + 4);
  for (int k = 0; k < 500; ++k) {
    const Spinor z = sampling::spinor(rng);
    EXPECT_NEAR(hopf_map(z).J.norm(), z.action(), 1e-14 * std::max(1.0, z.action()));
    const SU2Element u = sampling::su2(rng), v = sampling::su2(rng);
    EXPECT_LT((so3_from_su2(u * v) - so3_from_su2(u) * so3_from_su2(v)).cwiseAbs().maxCoeff(), 1e-12);
    const Vec3 n = sampling::unit_vector(rng);
    const double a = sampling::uniform(rng, -2 * pi, 2 * pi);
    const Mat3 R = so3_from_su2(su2_axis_angle(n, a));
    EXPECT_LT((R * n - n).norm(), 1e-12);
    EXPECT_LT((R - oracle::rodrigues(n, a)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SpinorProperty, RecoverGroupIsPhaseInvariant) {
  sampling::Rng rng(seed + 5);
  for (int k = 0; k < 200; ++k) {
    const Spinor zp = sampling::spinor(rng);
    const Spinor z = sampling::su2(rng) * zp;
    const SU2Element g = recover_group(z, zp);
    EXPECT_LT(((g * zp).v - z.v).norm(), 1e-12 * std::max(1.0, z.v.norm()));
    const Complex ph = std::exp(Complex(0, -0.5 * sampling::uniform(rng, 0, 4 * pi)));
    EXPECT_LT((recover_group(ph * z, ph * zp).matrix() - g.matrix()).norm(), 1e-12);
  }
}

TEST(ContourProperty, ConservedQuantitiesAlongTheLegs) {
  sampling::Rng rng(seed + 6);
  for (int k = 0; k < 20; ++k) {
    const auto emb = embed(sampling::edges(rng));
    const SpinorConfig p = build_config(emb);
    std::array<double, 6> norms{};
    for (int r = 0; r < 6; ++r) norms[r] = p.z[r].action() + p.zp[r].action();
    for (const auto& c : sample_leg1(p, emb.normals, 64)) {
      EXPECT_LT(c.diangle_defect(), 1e-10);
      for (int r = 0; r < 6; ++r) EXPECT_NEAR(c.z[r].action() + c.zp[r].action(), norms[r], 1e-13 * norms[r]);
    }
    const SpinorConfig q = leg1(p, emb.normals);
    const auto q_sums = q.face_sums();
    for (const auto& c : sample_leg2(q, emb.normals, 64)) {
      const auto s = c.face_sums();
      for (int f = 0; f < 4; ++f) EXPECT_LT((s[f] - q_sums[f]).norm(), 1e-10);
    }
    const ContourResult res = run_contour(emb, emb.lengths(), 200);
    EXPECT_LT(std::abs(res.total().imag()), 1e-9);
    for (int r = 0; r < 6; ++r) EXPECT_NEAR(res.holonomy_phases[r], emb.psi[r], 1e-9);
  }
}

TEST(ContourProperty, PullBackMatchesThetaIntegral) {
  // On leg 3 each pair stays in I_r = I'_r, and the upstairs action of the
  // pair equals the theta integral of its projection. Upstairs chord sums
  // carry an O(steps^-2) error, removed by one Richardson step.
  sampling::Rng rng(seed + 7);
  for (int k = 0; k < 10; ++k) {
    const auto emb = embed(sampling::edges(rng));
    const SpinorConfig pp = leg2(leg1(build_config(emb), emb.normals), emb.normals);
    for (int r = 0; r < 6; ++r) {
      auto upstairs = [&](int steps, std::vector<ReducedPoint>* down) {
        SpinorPath up;
        for (int i = 0; i <= steps; ++i) {
          const SpinorConfig c = leg3_at(pp, emb.psi, r + static_cast<double>(i) / steps);
          up.push_back(c);
          if (down) down->push_back(project_pair(c.z[r], c.zp[r]));
        }
        // Only pair r moves on this stretch, so the total action is its action.
        return action_integral(up).real();
      };
      std::vector<ReducedPoint> down;
      const double coarse = upstairs(1000, nullptr);
      const double fine = upstairs(2000, &down);
      EXPECT_NEAR((4.0 * fine - coarse) / 3.0, theta_integral(down), 1e-8) << "edge " << r;
    }
  }
}

TEST(ReductionProperty, MembershipInvariantUnderConjugation) {
  sampling::Rng rng(seed + 8);
  int members = 0;
  for (int k = 0; k < 100; ++k) {
    ReducedPoint p;
    const double j = sampling::uniform(rng, 0.5, 3);
    const Vec3 a = sampling::unit_vector(rng);
    p.J = (k % 2 ? 1.0 : -1.0) * j * a;
    p.g = su2_axis_angle(a, sampling::uniform(rng, 0.1, 2 * pi - 0.1));
    if (k % 10 == 0) p.g = sampling::su2(rng);  // generic, off the Lagrangian
    const LambdaBranch b = lambda_membership(p, j);
    const ReducedPoint q = flow(p, Generator::J_plus_Jp_n, sampling::unit_vector(rng), sampling::uniform(rng, -6, 6));
    EXPECT_EQ(lambda_membership(q, j), b) << "sample " << k;
    if (b != LambdaBranch::not_member) {
      ++members;
      EXPECT_NEAR(project_cylinder(q).tau, project_cylinder(p).tau, 1e-10);
    }
  }
  EXPECT_EQ(members, 90);
}

TEST(ReductionProperty, OneFormDuality) {
  sampling::Rng rng(seed + 9);
  for (int k = 0; k < 200; ++k) {
    const auto [z, zp_raw] = std::pair{sampling::spinor(rng), sampling::spinor(rng)};
    const Spinor zp = Complex(std::sqrt(z.action() / zp_raw.action())) * zp_raw;
    const ReducedPoint p = project_pair(z, zp);
    ReducedTangent t;
    t.dg = right_tangent(p.g, Vec3(sampling::normal(rng), sampling::normal(rng), sampling::normal(rng)));
    const OneFormValue v = one_form_value(p, t);
    EXPECT_NEAR(v.right, v.left, 1e-12 * std::max(1.0, std::abs(v.right)));
  }
}

TEST(SixjProperty, SymmetriesExhaustiveUpToThree) {
  int checked = 0;
  std::array<int, 6> t{};
  for (t[0] = 0; t[0] <= 6; ++t[0])
    for (t[1] = 0; t[1] <= 6; ++t[1])
      for (t[2] = 0; t[2] <= 6; ++t[2])
        for (t[3] = 0; t[3] <= 6; ++t[3])
          for (t[4] = 0; t[4] <= 6; ++t[4])
            for (t[5] = 0; t[5] <= 6; ++t[5]) {
              SixJArgs a;
              a.two_j = t;
              if (!sixj_admissible(a)) continue;
              const ExactRational v = exact_6j(a);
              for (const auto& s : sixj_symmetries(a)) ASSERT_EQ(exact_6j(s), v);
              ++checked;
            }
  EXPECT_EQ(checked, 3418);
}

TEST(SixjProperty, OrthogonalityInExactArithmetic) {
  // sum_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d f'} = delta_ff', exactly.
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (int f = 0; f <= 6; ++f) {
            if (!detail::triad_ok(a, d, f) || !detail::triad_ok(c, b, f)) continue;
            for (int fp = 0; fp <= 6; ++fp) {
              if (!detail::triad_ok(a, d, fp) || !detail::triad_ok(c, b, fp)) continue;
              // The square-free part of each product depends on f and f' only.
              ExactRational sum = 0;
              for (int x = 0; x <= 6; ++x) {
                SixJArgs u, v;
                u.two_j = {a, b, x, c, d, f};
                v.two_j = {a, b, x, c, d, fp};
                if (!sixj_admissible(u)) continue;
                sum += ExactRational(BigRational((x + 1) * (f + 1))) * exact_6j(u) * exact_6j(v);
              }
              EXPECT_EQ(sum, ExactRational(f == fp ? 1 : 0)) << a << b << c << d << " " << f << " " << fp;
            }
          }
}

TEST(QdeformProperty, GroupAxiomsAndHyperbolicTriangleInequality) {
  sampling::Rng rng(seed + 10);
  for (int k = 0; k < 500; ++k) {
    const auto a = sampling::deformed_j(rng), b = sampling::deformed_j(rng), c = sampling::deformed_j(rng);
    const q::BElement x = q::b_from_J(a), y = q::b_from_J(b), w = q::b_from_J(c);
    EXPECT_LT((((x * y) * w).matrix() - (x * (y * w)).matrix()).cwiseAbs().maxCoeff(),
              1e-13 * ((x * y) * w).matrix().cwiseAbs().maxCoeff());
    EXPECT_LT(q::distance(q::J_from_b(x * x.inverse()), q::DeformedJ{}), 1e-13);
    EXPECT_LT(q::distance(q::comult2(a, b), q::J_from_b(x * y)), 1e-13 * std::max(1.0, std::abs(q::comult2(a, b).Jminus)));
    const Mat2c p1 = q::hyperbolic_point(x), p2 = q::hyperbolic_point(y), p3 = q::hyperbolic_point(w);
    const double d12 = q::hyperbolic_distance(p1, p2), d23 = q::hyperbolic_distance(p2, p3),
                 d13 = q::hyperbolic_distance(p1, p3);
    EXPECT_LE(d13, d12 + d23 + 1e-9);
    EXPECT_NEAR(d12, q::hyperbolic_distance(p2, p1), 1e-9);
  }
}
