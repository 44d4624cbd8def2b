#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace circlekit {

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Thin value wrapper over GMP's mpq_class so that expression templates never
/// leak into the rest of the code base. Every operation is exact.
class Scalar {
 public:
  Scalar() = default;
  template <std::integral I>
  Scalar(I v)  // NOLINT(google-explicit-constructor)
      : q_(to_gmp(v)) {}
  Scalar(long num, long den);
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q" or "p" (decimal integers, optional sign).
  static Scalar parse(std::string_view text);
  /// Always "p/q", also for integers ("3/1").
  std::string str() const;

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  double to_double() const { return q_.get_d(); }

  /// Exact square root if this is the square of a rational.
  std::optional<Scalar> exact_sqrt() const;

  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.q_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.q_.get_str(); }

  std::size_t hash() const;

 private:
  template <std::integral I>
  static mpq_class to_gmp(I v) {
    if constexpr (std::is_signed_v<I>) {
      return mpq_class(static_cast<long>(v));
    } else {
      return mpq_class(static_cast<unsigned long>(v));
    }
  }

  mpq_class q_;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
inline Scalar square(const Scalar& s) { return s * s; }

/// Point in R^d.
using PointN = std::vector<Scalar>;

struct PointHash {
  std::size_t operator()(const PointN& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& c : p) h = (h ^ c.hash()) * 1099511628211ULL;
    return h;
  }
};

std::string to_string(const PointN& p);

}  // namespace circlekit

template <>
struct std::hash<circlekit::Scalar> {
  std::size_t operator()(const circlekit::Scalar& s) const { return s.hash(); }
};
