#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace ajc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator. Arithmetic never rounds. Addition and
/// multiplication use the gcd-minimal textbook schemes so large operands
/// are not re-normalized more than necessary.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(const BigInt& v) : num_(v), den_(1) {}
  Rational(BigInt num, BigInt den);

  /// Parses "m/q", an integer "m", or a decimal like "-0.25" (exact).
  static Rational parse(std::string_view text);

  /// 2^e for any integer e (negative exponents give exact fractions).
  static Rational pow2(long long e);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double d);

  /// Trusted constructor: gcd(|num|, den) must already be 1 and den > 0.
  static Rational from_coprime(BigInt num, BigInt den);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  BigInt floor() const;
  /// x - floor(x), in [0, 1).
  Rational frac() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  struct Trusted {};
  Rational(BigInt num, BigInt den, Trusted) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;  // > 0
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace ajc
