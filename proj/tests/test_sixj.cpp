#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "schlafli/sixj.hpp"

using namespace schlafli;

namespace {

SixJArgs args(std::array<double, 6> j) { return SixJArgs::from_j(j); }

// Values computed once with an independent computer-algebra implementation.
struct Frozen {
  std::array<double, 6> j;
  const char* exact;
  double value;
};

const Frozen frozen[] = {
    {{0.5, 1, 1.5, 1, 0.5, 1}, "-1/6", -0.16666666666666666},
    {{1, 1, 1, 1, 1, 1}, "1/6", 0.16666666666666666},
    {{2, 2, 2, 2, 2, 2}, "-3/70", -0.04285714285714286},
    {{1.5, 1.5, 1, 1.5, 1.5, 1}, "-11/60", -0.18333333333333332},
    {{3, 2, 1, 2, 3, 2}, "sqrt(6)*2/35", 0.13997084244475302},
    {{2.5, 2, 0.5, 1, 1.5, 2}, "sqrt(35)*1/30", 0.19720265943665388},
    {{4, 4, 4, 4, 4, 4}, "-467/18018", -0.02591852591852592},
    {{3, 3, 3, 3, 3, 3}, "-1/14", -0.07142857142857142},
    {{2, 1, 1, 1, 2, 2}, "sqrt(21)*1/30", 0.15275252316519466},
    {{0.5, 0.5, 1, 0.5, 0.5, 0}, "1/2", 0.5},
    {{10, 10, 10, 10, 10, 10}, "-481673/165002460", -0.0029191867806092103},
    {{20, 20, 20, 20, 20, 20}, "-33188637458619/6598917336119836", -0.005029406456867957},
};

}  // namespace

TEST(ExactRational, Arithmetic) {
  const ExactRational a = ExactRational::with_sqrt(BigRational(1, 2), BigRational(8));  // sqrt(2)
  EXPECT_EQ(a.radicand(), 2);
  EXPECT_EQ(a.cofactor(), 1);
  EXPECT_EQ((a * a).to_string(), "2");
  EXPECT_EQ((a + a).to_string(), "sqrt(2)*2");
  EXPECT_EQ(ExactRational(BigRational(-2, 6)).to_string(), "-1/3");
  EXPECT_EQ(ExactRational(0).to_string(), "0");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_THROW(a + ExactRational(1), PreconditionError);
  EXPECT_NEAR(ExactRational::with_sqrt(BigRational(2, 35), BigRational(6)).to_double(), 0.13997084244475302, 1e-16);
  EXPECT_EQ(ExactRational::with_sqrt(BigRational(1), BigRational(9, 4)).to_string(), "3/2");
}

TEST(Exact6j, FrozenReferenceValues) {
  for (const auto& f : frozen) {
    const ExactRational v = exact_6j(args(f.j));
    EXPECT_EQ(v.to_string(), f.exact);
    EXPECT_NEAR(v.to_double(), f.value, 1e-16 * std::max(1.0, std::abs(f.value)));
  }
}

TEST(Exact6j, MatchesFloatingRacahSum) {
  int checked = 0;
  std::array<int, 6> t{};
  for (t[0] = 0; t[0] <= 5; ++t[0])
    for (t[1] = 0; t[1] <= 5; ++t[1])
      for (t[2] = 0; t[2] <= 5; ++t[2])
        for (t[3] = 0; t[3] <= 5; ++t[3])
          for (t[4] = 0; t[4] <= 5; ++t[4])
            for (t[5] = 0; t[5] <= 5; ++t[5]) {
              SixJArgs a;
              a.two_j = t;
              const double expect = oracle::racah_6j(t);
              if (!sixj_admissible(a)) {
                EXPECT_EQ(expect, 0.0);
                EXPECT_TRUE(exact_6j(a).is_zero());
                continue;
              }
              EXPECT_NEAR(exact_6j(a).to_double(), expect, 1e-14);
              ++checked;
            }
  EXPECT_GT(checked, 500);
}

TEST(Exact6j, TetrahedralSymmetry) {
  const SixJArgs a = args({2.5, 2, 0.5, 1, 1.5, 2});
  const auto sym = sixj_symmetries(a);
  ASSERT_EQ(sym.size(), 24u);
  for (const auto& s : sym) EXPECT_EQ(exact_6j(s), exact_6j(a));
}

TEST(Exact6j, Orthogonality) {
  // sum_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d f'} = delta_ff'
  const int a = 2, b = 3, c = 2, d = 3;  // doubled
  for (int f = 0; f <= 6; ++f) {
    for (int fp = 0; fp <= 6; ++fp) {
      double fsum = 0;
      for (int x = 0; x <= 8; ++x) {
        SixJArgs u, v;
        u.two_j = {a, b, x, c, d, f};
        v.two_j = {a, b, x, c, d, fp};
        if (!sixj_admissible(u) || !sixj_admissible(v)) continue;
        fsum += (x + 1) * (f + 1) * exact_6j(u).to_double() * exact_6j(v).to_double();
      }
      const bool allowed = detail::triad_ok(a, d, f) && detail::triad_ok(c, b, f);
      EXPECT_NEAR(fsum, (f == fp && allowed) ? 1.0 : 0.0, 1e-13) << f << " " << fp;
    }
  }
}

TEST(Exact6j, RejectsNonHalfIntegers) {
  EXPECT_THROW(SixJArgs::from_j({0.3, 1, 1, 1, 1, 1}), PreconditionError);
  EXPECT_THROW(SixJArgs::from_j({-1, 1, 1, 1, 1, 1}), PreconditionError);
  SixJArgs bad;
  bad.two_j = {2, 2, 2, 2, 2, 2};
  EXPECT_TRUE(sixj_admissible(bad));
  bad.two_j = {1, 1, 1, 1, 1, 1};
  EXPECT_FALSE(sixj_admissible(bad));
  EXPECT_TRUE(exact_6j(bad).is_zero());
}

TEST(PonzanoRegge, AsymptoticValueAtModerateSpin) {
  // All-equal spins j = 20: semiclassical edges 20.5.
  const SixJArgs a = args({20, 20, 20, 20, 20, 20});
  const double L = 20.5;
  const double v = L * L * L / (6.0 * std::sqrt(2.0));
  const double s = 6.0 * L * std::acos(-1.0 / 3.0);
  const double expect = std::cos(s + pi / 4) / std::sqrt(12.0 * pi * v);
  EXPECT_NEAR(pr_asymptotic(a), expect, 1e-15);
  EXPECT_NEAR(pr_amplitude(a), 1.0 / std::sqrt(12.0 * pi * v), 1e-15);
  EXPECT_NEAR(pr_asymptotic(a), exact_6j(a).to_double(), 2e-2 * pr_amplitude(a));
}

TEST(PonzanoRegge, ForbiddenRegionThrows) {
  EXPECT_THROW(pr_asymptotic(args({0.5, 1, 1.5, 1, 0.5, 1})), ExistenceError);
}

TEST(PonzanoRegge, SweepConvergesAndReportsSkips) {
  SixJArgs unit;
  unit.two_j = {2, 2, 2, 2, 2, 2};
  const SweepResult res = compare_sweep(unit, {0, 5, 10, 40});
  ASSERT_EQ(res.rows.size(), 3u);
  EXPECT_EQ(res.notes.size(), 1u);
  EXPECT_LT(res.rows[2].rel_err, res.rows[0].rel_err);
  EXPECT_GT(windowed_relative_rms(unit, 10), windowed_relative_rms(unit, 40));
}
