#ifndef SCHLAFLI_SIXJ_HPP
#define SCHLAFLI_SIXJ_HPP

// Exact Wigner 6j symbols by the Racah single sum, stored as
// rational * sqrt(squarefree integer), and the Ponzano-Regge asymptotic
// formula cos(S + pi/4) / sqrt(12 pi |V|) at edges J = j + 1/2.

#include <array>
#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "schlafli/geometry.hpp"

namespace schlafli {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// cofactor * sqrt(radicand), radicand a squarefree positive integer (1 for
// zero). Equality is structural on the canonical form.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(const BigRational& cofactor) : cofactor_(cofactor) {}  // NOLINT: implicit from rationals
  ExactRational(long long n) : cofactor_(n) {}                         // NOLINT

  // cofactor * sqrt(radicand) with the radicand already squarefree.
  static ExactRational from_squarefree(const BigRational& cofactor, const BigInt& radicand) {
    ExactRational x;
    if (cofactor == 0) return x;
    x.cofactor_ = cofactor;
    x.radicand_ = radicand;
    return x;
  }

  // cofactor * sqrt(radicand) for any nonnegative rational radicand; squares
  // are removed by trial division, so keep radicands small.
  static ExactRational with_sqrt(const BigRational& cofactor, const BigRational& radicand) {
    if (radicand < 0) throw PreconditionError("negative radicand");
    ExactRational x;
    if (cofactor == 0 || radicand == 0) return x;
    // sqrt(p/q) = sqrt(p q) / q
    const BigInt p = numerator(radicand), q = denominator(radicand);
    BigInt r = p * q;
    BigInt outside = 1;
    for (BigInt f = 2; f * f <= r; ++f) {
      while (r % (f * f) == 0) {
        r /= f * f;
        outside *= f;
      }
    }
    x.cofactor_ = cofactor * BigRational(outside, q);
    x.radicand_ = r;
    return x;
  }

  const BigRational& cofactor() const { return cofactor_; }
  const BigInt& radicand() const { return radicand_; }
  bool is_zero() const { return cofactor_ == 0; }
  int sign() const { return cofactor_ > 0 ? 1 : (cofactor_ < 0 ? -1 : 0); }

  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    ExactRational x;
    if (a.is_zero() || b.is_zero()) return x;
    // r1 r2 = g^2 (r1/g)(r2/g), and (r1/g)(r2/g) stays squarefree.
    const BigInt g = gcd(a.radicand_, b.radicand_);
    x.cofactor_ = a.cofactor_ * b.cofactor_ * BigRational(g);
    x.radicand_ = (a.radicand_ / g) * (b.radicand_ / g);
    return x;
  }

  // Defined only when the radicands agree or one side is zero.
  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.radicand_ != b.radicand_) {
      throw PreconditionError("cannot add exact values with different radicands");
    }
    ExactRational x;
    x.cofactor_ = a.cofactor_ + b.cofactor_;
    x.radicand_ = x.cofactor_ == 0 ? BigInt(1) : a.radicand_;
    return x;
  }

  ExactRational operator-() const {
    ExactRational x = *this;
    x.cofactor_ = -x.cofactor_;
    return x;
  }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return a + (-b); }
  ExactRational& operator+=(const ExactRational& o) { return *this = *this + o; }

  bool operator==(const ExactRational& o) const { return cofactor_ == o.cofactor_ && radicand_ == o.radicand_; }

  double to_double() const {
    using Float = boost::multiprecision::cpp_bin_float_50;
    const Float v = Float(numerator(cofactor_)) / Float(denominator(cofactor_)) * sqrt(Float(radicand_));
    return v.convert_to<double>();
  }

  // "p/q", "p", "sqrt(r)*p/q" with a leading minus sign when negative.
  std::string to_string() const {
    if (is_zero()) return "0";
    const BigInt p = abs(numerator(cofactor_));
    const BigInt q = denominator(cofactor_);
    std::string s = sign() < 0 ? "-" : "";
    if (radicand_ != 1) s += "sqrt(" + radicand_.str() + ")*";
    s += p.str();
    if (q != 1) s += "/" + q.str();
    return s;
  }

 private:
  BigRational cofactor_{0};
  BigInt radicand_{1};
};

// {j1 j2 j3; j4 j5 j6} with every j stored as the integer 2j; same layout as
// EdgeLengths, so the triads are the faces (123), (156), (264), (345).
struct SixJArgs {
  std::array<int, 6> two_j{};

  double j(int r) const { return 0.5 * two_j[r]; }

  static SixJArgs from_j(const std::array<double, 6>& j) {
    SixJArgs a;
    for (int r = 0; r < 6; ++r) {
      const double t = 2.0 * j[r];
      if (t < 0.0 || std::abs(t - std::round(t)) > 1e-12) {
        throw PreconditionError("6j arguments must be nonnegative half-integers");
      }
      a.two_j[r] = static_cast<int>(std::lround(t));
    }
    return a;
  }

  SixJArgs scaled(int k) const {
    SixJArgs a = *this;
    for (int& t : a.two_j) t *= k;
    return a;
  }

  // Edge lengths J_r = j_r + 1/2.
  EdgeLengths semiclassical_edges() const {
    EdgeLengths e;
    for (int r = 0; r < 6; ++r) e[r] = j(r) + 0.5;
    return e;
  }

  bool operator==(const SixJArgs&) const = default;
};

namespace detail {

inline bool triad_ok(int a, int b, int c) {
  return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b;
}

// Shared factorial table; grows under a lock and never shrinks.
class FactorialTable {
 public:
  static const BigInt& get(int n) {
    static FactorialTable table;
    std::lock_guard<std::mutex> lock(table.mutex_);
    while (static_cast<int>(table.values_.size()) <= n) {
      table.values_.push_back(table.values_.back() * BigInt(table.values_.size()));
    }
    return table.values_[n];
  }

 private:
  FactorialTable() { values_.push_back(1); }
  std::mutex mutex_;
  std::deque<BigInt> values_;  // references stay valid as it grows
};

inline std::vector<int> primes_up_to(int n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<int> p;
  for (int i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    p.push_back(i);
    for (long long k = 1LL * i * i; k <= n; k += i) composite[k] = true;
  }
  return p;
}

// Exponent of p in n! (Legendre).
inline int legendre(int n, int p) {
  int e = 0;
  for (long long q = p; q <= n; q *= p) e += static_cast<int>(n / q);
  return e;
}

}  // namespace detail

inline bool sixj_admissible(const SixJArgs& a) {
  for (int t : a.two_j) {
    if (t < 0) return false;
  }
  for (const auto& f : topology::face_edges) {
    if (!detail::triad_ok(a.two_j[f[0]], a.two_j[f[1]], a.two_j[f[2]])) return false;
  }
  return true;
}

inline ExactRational exact_6j(const SixJArgs& args) {
  for (int t : args.two_j) {
    if (t < 0) throw PreconditionError("6j arguments must be nonnegative");
  }
  if (!sixj_admissible(args)) return ExactRational();
  const auto& t = args.two_j;

  // Triangle coefficients: Delta(abc)^2 = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!,
  // gathered as prime exponents so the square root comes out canonical.
  std::vector<int> up, down;
  for (const auto& f : topology::face_edges) {
    const int a = t[f[0]], b = t[f[1]], c = t[f[2]];
    up.push_back((a + b - c) / 2);
    up.push_back((a - b + c) / 2);
    up.push_back((-a + b + c) / 2);
    down.push_back((a + b + c) / 2 + 1);
  }
  int largest = 1;
  for (int n : down) largest = std::max(largest, n);
  BigInt rad_num = 1;
  BigRational outside = 1;
  for (int p : detail::primes_up_to(largest)) {
    int e = 0;
    for (int n : up) e += detail::legendre(n, p);
    for (int n : down) e -= detail::legendre(n, p);
    const int half = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e / 2)
    const BigInt ph = pow(BigInt(p), std::abs(half));
    outside *= half >= 0 ? BigRational(ph) : BigRational(BigInt(1), ph);
    if (e - 2 * half == 1) rad_num *= p;
  }

  // Racah sum over k between max(a_i) and min(b_i).
  std::array<int, 4> a{};
  for (int i = 0; i < 4; ++i) {
    const auto& f = topology::face_edges[i];
    a[i] = (t[f[0]] + t[f[1]] + t[f[2]]) / 2;
  }
  const std::array<int, 3> b{(t[0] + t[1] + t[3] + t[4]) / 2, (t[1] + t[2] + t[4] + t[5]) / 2,
                             (t[2] + t[0] + t[5] + t[3]) / 2};
  const int kmin = *std::max_element(a.begin(), a.end());
  const int kmax = *std::min_element(b.begin(), b.end());
  BigRational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    BigInt den = 1;
    for (int ai : a) den *= detail::FactorialTable::get(k - ai);
    for (int bi : b) den *= detail::FactorialTable::get(bi - k);
    const BigRational term(detail::FactorialTable::get(k + 1), den);
    sum += (k % 2 ? -term : term);
  }
  if (sum == 0) return ExactRational();
  return ExactRational::from_squarefree(sum * outside, rad_num);
}

// The 24 argument arrays related by column permutations and by exchanging
// upper and lower entries in two columns.
inline std::vector<SixJArgs> sixj_symmetries(const SixJArgs& args) {
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  static constexpr std::array<std::array<bool, 3>, 4> flips{
      {{false, false, false}, {true, true, false}, {true, false, true}, {false, true, true}}};
  std::vector<SixJArgs> out;
  for (const auto& perm : perms) {
    for (const auto& flip : flips) {
      SixJArgs s;
      for (int c = 0; c < 3; ++c) {
        const int top = args.two_j[perm[c]], bottom = args.two_j[perm[c] + 3];
        s.two_j[c] = flip[c] ? bottom : top;
        s.two_j[c + 3] = flip[c] ? top : bottom;
      }
      out.push_back(s);
    }
  }
  return out;
}

// (12 pi |V|)^(-1/2) at J = j + 1/2.
inline double pr_amplitude(const SixJArgs& args) {
  const EdgeLengths e = args.semiclassical_edges();
  if (classify(e) != ExistenceClass::nondegenerate) {
    throw ExistenceError("no nondegenerate tetrahedron at J = j + 1/2: classically forbidden or caustic region");
  }
  return 1.0 / std::sqrt(12.0 * pi * std::abs(embed(e).volume));
}

inline double pr_asymptotic(const SixJArgs& args) {
  const EdgeLengths e = args.semiclassical_edges();
  if (classify(e) != ExistenceClass::nondegenerate) {
    throw ExistenceError("no nondegenerate tetrahedron at J = j + 1/2: classically forbidden or caustic region");
  }
  const TetraEmbedding emb = embed(e, Orientation::positive);
  double s = 0.0;
  for (int r = 0; r < 6; ++r) s += e[r] * emb.psi[r];
  return std::cos(s + pi / 4.0) / std::sqrt(12.0 * pi * emb.volume);
}

struct SweepRow {
  int k = 0;
  SixJArgs args;
  ExactRational exact;
  double exact_value = 0.0;
  double asym = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / amplitude
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;  // skipped scales
};

inline SweepResult compare_sweep(const SixJArgs& pattern, const std::vector<int>& scales) {
  SweepResult res;
  for (int k : scales) {
    if (k <= 0) {
      res.notes.push_back("k=" + std::to_string(k) + ": scale must be positive");
      continue;
    }
    const SixJArgs a = pattern.scaled(k);
    if (!sixj_admissible(a)) {
      res.notes.push_back("k=" + std::to_string(k) + ": arguments violate a triad condition");
      continue;
    }
    if (classify(a.semiclassical_edges()) != ExistenceClass::nondegenerate) {
      res.notes.push_back("k=" + std::to_string(k) + ": no nondegenerate tetrahedron, asymptotic formula not applicable");
      continue;
    }
    SweepRow row;
    row.k = k;
    row.args = a;
    row.exact = exact_6j(a);
    row.exact_value = row.exact.to_double();
    row.asym = pr_asymptotic(a);
    row.abs_err = std::abs(row.exact_value - row.asym);
    row.rel_err = row.abs_err / pr_amplitude(a);
    res.rows.push_back(row);
  }
  return res;
}

// RMS of |exact - asym| / amplitude over scales k0 .. k0 + width - 1.
inline double windowed_relative_rms(const SixJArgs& pattern, int k0, int width = 4) {
  std::vector<int> ks;
  for (int k = k0; k < k0 + width; ++k) ks.push_back(k);
  const SweepResult s = compare_sweep(pattern, ks);
  if (s.rows.empty()) throw ExistenceError("no admissible scale in the window");
  double acc = 0.0;
  for (const auto& row : s.rows) acc += row.rel_err * row.rel_err;
  return std::sqrt(acc / s.rows.size());
}

}  // namespace schlafli

#endif
