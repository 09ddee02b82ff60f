#ifndef SCHLAFLI_SAMPLING_HPP
#define SCHLAFLI_SAMPLING_HPP

// Seeded generators for randomized checks. Everything draws from a caller-owned
// std::mt19937_64, so a fixed seed reproduces a run exactly.

#include <cmath>
#include <random>

#include "schlafli/geometry.hpp"
#include "schlafli/qdeform.hpp"
#include "schlafli/spinor.hpp"

namespace schlafli::sampling {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Vec3 unit_vector(Rng& rng) {
  Vec3 v;
  do {
    v = Vec3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline Complex complex_normal(Rng& rng) { return {normal(rng), normal(rng)}; }

inline Spinor spinor(Rng& rng) { return Spinor(complex_normal(rng), complex_normal(rng)); }

// Haar-distributed SU(2) element (normalized Gaussian quaternion).
inline SU2Element su2(Rng& rng) {
  Complex a = complex_normal(rng), b = complex_normal(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  Mat2c m;
  m << a, -std::conj(b), b, std::conj(a);
  return SU2Element::project(m);
}

// Edge lengths uniform in [lo, hi]^6, redrawn until the tetrahedron is
// nondegenerate with every 288 V^2 above min_rel * L^6.
inline EdgeLengths edges(Rng& rng, double lo = 0.5, double hi = 3.0, double min_rel = 0.0) {
  for (;;) {
    EdgeLengths e;
    for (double& x : e.J) x = uniform(rng, lo, hi);
    if (classify(e) != ExistenceClass::nondegenerate) continue;
    const double L = e.mean();
    if (cayley_menger(e) > min_rel * std::pow(L, 6)) return e;
  }
}

inline q::DeformedJ deformed_j(Rng& rng, double scale = 2.0) {
  return {uniform(rng, -scale, scale), Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale))};
}

}  // namespace schlafli::sampling

#endif
