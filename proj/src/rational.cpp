#include "ajc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ajc {

namespace {

using boost::multiprecision::gcd;

// Decimal integer parse. cpp_int's string constructor treats a leading 0 as
// an octal prefix, so normalize the digits ourselves.
BigInt parse_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("Rational: bad integer '" + std::string(text) + "'");
  while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
  BigInt value{std::string(text)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  const BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_coprime(BigInt num, BigInt den) {
  return Rational(std::move(num), std::move(den), Trusted{});
}

Rational Rational::parse(std::string_view text) {
  // trim
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("Rational: empty input");

  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    const std::string_view head = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) return Rational(parse_integer(head));
    bool negative = false;
    std::string_view digits = head;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      negative = digits.front() == '-';
      digits.remove_prefix(1);
    }
    std::string combined(digits);
    combined.append(frac);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const BigInt num = parse_integer(combined);
    return Rational(negative ? BigInt(-num) : num, den);
  }
  return Rational(parse_integer(text));
}

Rational Rational::pow2(long long e) {
  if (e >= 0) return Rational(BigInt(1) << static_cast<unsigned>(e));
  return from_coprime(1, BigInt(1) << static_cast<unsigned>(-e));
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("Rational: non-finite double");
  if (d == 0.0) return Rational(0);
  int exp = 0;
  const double mantissa = std::frexp(d, &exp);  // d = mantissa * 2^exp, |mantissa| in [0.5, 1)
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));  // exact: <= 53 bits
  return Rational(BigInt(scaled)) * Rational::pow2(exp - 53);
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;
  // integer division truncates toward zero; fix up negatives
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  const BigInt num_abs = num_ < 0 ? BigInt(-num_) : num_;
  const long long num_bits = static_cast<long long>(boost::multiprecision::msb(num_abs)) + 1;
  const long long den_bits = static_cast<long long>(boost::multiprecision::msb(den_)) + 1;
  // shift both operands into the exactly-representable range
  const long long shift_num = std::max(0LL, num_bits - 62);
  const long long shift_den = std::max(0LL, den_bits - 62);
  const double n = BigInt(num_abs >> static_cast<unsigned>(shift_num)).convert_to<double>();
  const double d = BigInt(den_ >> static_cast<unsigned>(shift_den)).convert_to<double>();
  const long long e = std::clamp(shift_num - shift_den, -100000LL, 100000LL);
  const double magnitude = std::ldexp(n / d, static_cast<int>(e));
  return num_ < 0 ? -magnitude : magnitude;
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

Rational Rational::operator-() const { return Rational(-num_, den_, Trusted{}); }

// Knuth 4.5.1: with g = gcd(b, d), only gcds against g are needed and the
// result is already in lowest terms.
Rational& Rational::operator+=(const Rational& o) {
  const BigInt g = gcd(den_, o.den_);
  if (g == 1) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    return *this;
  }
  const BigInt b = den_ / g;
  const BigInt d = o.den_ / g;
  BigInt t = num_ * d + o.num_ * b;
  if (t.is_zero()) {
    num_ = 0;
    den_ = 1;
    return *this;
  }
  const BigInt g2 = gcd(t < 0 ? BigInt(-t) : t, g);
  num_ = t / g2;
  den_ = b * (o.den_ / g2);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  const BigInt g1 = gcd(num_ < 0 ? BigInt(-num_) : num_, o.den_);
  const BigInt g2 = gcd(o.num_ < 0 ? BigInt(-o.num_) : o.num_, den_);
  num_ = (num_ / g1) * (o.num_ / g2);
  den_ = (den_ / g2) * (o.den_ / g1);
  if (num_.is_zero()) den_ = 1;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  Rational reciprocal = o.num_ < 0 ? Rational(-o.den_, -o.num_, Trusted{})
                                   : Rational(o.den_, o.num_, Trusted{});
  return *this *= reciprocal;
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace ajc
