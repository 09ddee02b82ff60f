#ifndef SCHLAFLI_COMMON_HPP
#define SCHLAFLI_COMMON_HPP

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schlafli {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

inline constexpr double pi = std::numbers::pi;

// Base of every error a caller can act on (bad geometry, wrong preconditions).
// The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExistenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateFaceError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Orientation { positive = 1, negative = -1 };

inline double sign_of(Orientation o) { return o == Orientation::positive ? 1.0 : -1.0; }

namespace pauli {

inline Mat2c identity() { return Mat2c::Identity(); }

inline Mat2c x() {
  Mat2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Mat2c y() {
  Mat2c m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Mat2c z() {
  Mat2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline Mat2c component(int i) {
  switch (i) {
    case 0: return x();
    case 1: return y();
    default: return z();
  }
}

// n . sigma
inline Mat2c dot(const Vec3& n) { return n.x() * x() + n.y() * y() + n.z() * z(); }

}  // namespace pauli

}  // namespace schlafli

#endif
