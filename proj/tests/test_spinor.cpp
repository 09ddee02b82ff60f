#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schlafli/contour.hpp"
#include "schlafli/sampling.hpp"
#include "schlafli/spinor.hpp"

using namespace schlafli;

TEST(Pauli, Algebra) {
  const Complex i(0, 1);
  EXPECT_LT((pauli::x() * pauli::y() - i * pauli::z()).norm(), 1e-15);
  EXPECT_LT((pauli::y() * pauli::z() - i * pauli::x()).norm(), 1e-15);
  EXPECT_LT((pauli::z() * pauli::x() - i * pauli::y()).norm(), 1e-15);
  for (int k = 0; k < 3; ++k) EXPECT_LT((pauli::component(k) * pauli::component(k) - pauli::identity()).norm(), 1e-15);
}

TEST(Hopf, ActionEqualsNormOfJ) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const Spinor z = sampling::spinor(rng);
    const HopfImage h = hopf_map(z);
    EXPECT_NEAR(h.I, h.J.norm(), 1e-13);
    EXPECT_NEAR(h.I, z.action(), 1e-15);
    // J = (1/2) z^dag sigma z directly.
    for (int i = 0; i < 3; ++i) {
      const double direct = 0.5 * (z.v.adjoint() * pauli::component(i) * z.v)(0).real();
      EXPECT_NEAR(h.J[i], direct, 1e-13);
    }
  }
}

TEST(Hopf, PhaseInvariance) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 50; ++k) {
    const Spinor z = sampling::spinor(rng);
    const Spinor w = std::exp(Complex(0, sampling::uniform(rng, 0, 7))) * z;
    EXPECT_LT((angular_momentum(z) - angular_momentum(w)).norm(), 1e-13);
  }
}

TEST(Hopf, LiftIsARightInverse) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    Vec3 v = sampling::unit_vector(rng) * sampling::uniform(rng, 0.1, 4.0);
    if (k % 10 == 0) v = Vec3(0, 0, -v.norm());  // south pole chart
    EXPECT_LT((angular_momentum(hopf_lift(v)) - v).norm(), 1e-13);
  }
  EXPECT_LT(hopf_lift(Vec3::Zero()).v.norm(), 1e-300);
}

TEST(SU2, AxisAngleMatchesRodrigues) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 100; ++k) {
    const Vec3 n = sampling::unit_vector(rng);
    const double a = sampling::uniform(rng, -6, 6);
    EXPECT_LT((rotation(n, a) - oracle::rodrigues(n, a)).norm(), 1e-13);
  }
}

TEST(SU2, CoversSO3AndIsAHomomorphism) {
  std::mt19937_64 rng(25);
  for (int k = 0; k < 100; ++k) {
    const SU2Element g = sampling::su2(rng), h = sampling::su2(rng);
    EXPECT_LT((so3_from_su2(g * h) - so3_from_su2(g) * so3_from_su2(h)).norm(), 1e-13);
    EXPECT_LT((so3_from_su2(-g) - so3_from_su2(g)).norm(), 1e-13);
    EXPECT_LT(((g * g.inverse()).matrix() - Mat2c::Identity()).norm(), 1e-14);
    EXPECT_NEAR(std::abs(so3_from_su2(g).determinant() - 1.0), 0.0, 1e-13);
  }
}

TEST(SU2, AngularMomentumIsEquivariant) {
  std::mt19937_64 rng(26);
  for (int k = 0; k < 100; ++k) {
    const SU2Element g = sampling::su2(rng);
    const Spinor z = sampling::spinor(rng);
    EXPECT_LT((angular_momentum(g * z) - so3_from_su2(g) * angular_momentum(z)).norm(), 1e-12);
  }
}

TEST(SU2, AxisAngleRoundTrip) {
  std::mt19937_64 rng(27);
  for (int k = 0; k < 100; ++k) {
    const Vec3 n = sampling::unit_vector(rng);
    const double phi = sampling::uniform(rng, 0.01, 2 * pi - 0.01);
    const AxisAngle aa = axis_angle(su2_axis_angle(n, phi));
    EXPECT_NEAR(aa.phi, phi, 1e-12);
    EXPECT_LT((aa.axis - n).norm(), 1e-12);
  }
  EXPECT_NEAR(axis_angle(SU2Element::identity()).phi, 0.0, 1e-15);
  EXPECT_NEAR(axis_angle(-SU2Element::identity()).phi, 2 * pi, 1e-15);
}

TEST(SU2, FromMatrixRejectsNonUnitary) {
  Mat2c m = Mat2c::Identity();
  m(0, 0) = 2.0;
  EXPECT_THROW(SU2Element::from_matrix(m), PreconditionError);
  EXPECT_THROW(su2_axis_angle(Vec3(1, 1, 0), 0.3), PreconditionError);
}

TEST(TimeReversal, AntiunitaryAndSquaresToMinusOne) {
  std::mt19937_64 rng(28);
  for (int k = 0; k < 50; ++k) {
    const Spinor z = sampling::spinor(rng);
    const Spinor t = time_reversal(z);
    EXPECT_LT((time_reversal(t).v + z.v).norm(), 1e-15);
    EXPECT_LT((angular_momentum(t) + angular_momentum(z)).norm(), 1e-13);
    EXPECT_NEAR(std::abs(z.v.dot(t.v)), 0.0, 1e-13);  // orthogonal
    // Commutes with SU(2).
    const SU2Element g = sampling::su2(rng);
    EXPECT_LT((time_reversal(g * z).v - (g * t).v).norm(), 1e-13);
  }
  EXPECT_LT((u0_matrix() - su2_axis_angle(Vec3::UnitY(), pi).matrix()).norm(), 1e-15);
}

TEST(RecoverGroup, FindsTheUniqueElement) {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    const SU2Element g = sampling::su2(rng);
    const Spinor zp = sampling::spinor(rng);
    const Spinor z = g * zp;
    const SU2Element h = recover_group(z, zp);
    EXPECT_LT((h.matrix() - g.matrix()).norm(), 1e-12);
    const double two_i = 2 * zp.action();
    EXPECT_NEAR(std::abs(quaternion_matrix(zp).determinant() - two_i), 0.0, 1e-12);
  }
}

TEST(RecoverGroup, RejectsMismatchedNorms) {
  EXPECT_THROW(recover_group(Spinor(1.0, 0.0), Spinor(2.0, 0.0)), PreconditionError);
  EXPECT_THROW(recover_group(Spinor(0.0, 0.0), Spinor(0.0, 0.0)), PreconditionError);
}
