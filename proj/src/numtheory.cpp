#include "ajc/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace ajc {

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

std::int64_t totient(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("totient: n must be >= 1");
  std::int64_t result = n;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    result -= result / p;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

std::int64_t half_totient(std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("half_totient: n must be odd and >= 1");
  return totient(n) / 2;
}

std::vector<std::int64_t> residue_set(std::int64_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("residue_set: n must be odd and >= 3");
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; 2 * m < n; ++m) {
    if (std::gcd(m, n) == 1) out.push_back(m);
  }
  return out;
}

namespace {

bool in_residue_set(std::int64_t n, std::int64_t m) {
  return m >= 1 && 2 * m < n && std::gcd(m, n) == 1;
}

}  // namespace

std::int64_t mu(std::int64_t n, std::int64_t m) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("mu: n must be odd and >= 3");
  if (!in_residue_set(n, m))
    throw std::invalid_argument("mu: m = " + std::to_string(m) + " is not in M_" + std::to_string(n));
  return std::min(2 * m, n - 2 * m);
}

MuOrbit mu_orbit(std::int64_t n, std::int64_t m) {
  const std::int64_t ell = half_totient(n);  // validates n odd; n >= 3 checked by mu below
  MuOrbit orbit;
  orbit.n = n;
  orbit.start = m;
  std::int64_t current = m;
  do {
    orbit.states.push_back(current);
    current = mu(n, current);
    if (static_cast<std::int64_t>(orbit.states.size()) > ell)
      throw std::logic_error("mu_orbit: no return to start within half_totient(n) steps");
  } while (current != m);
  orbit.period = static_cast<std::int64_t>(orbit.states.size());
  if (ell % orbit.period != 0)
    throw std::logic_error("mu_orbit: minimal period does not divide half_totient(n)");
  return orbit;
}

EulerDivisibility euler_sharpened_check(std::int64_t n, std::int64_t a) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("euler_sharpened_check: n must be odd and >= 3");
  const std::int64_t g = std::gcd(std::abs(a) % n, n);
  if (g != 1) throw std::invalid_argument("euler_sharpened_check: a and n must be coprime");
  const BigInt ell = half_totient(n);
  BigInt base = ((a % n) + n) % n;
  const BigInt residue = boost::multiprecision::powm(base, ell, BigInt(n));
  if (residue == 1) return EulerDivisibility::DividesMinus;
  if (residue == n - 1) return EulerDivisibility::DividesPlus;
  throw std::logic_error("euler_sharpened_check: a^l is congruent to neither 1 nor -1 mod n");
}

std::int64_t ReducedLambda::n_i64() const {
  if (n > BigInt(std::int64_t{1} << 62))
    throw std::invalid_argument("ReducedLambda: odd part of the denominator is too large");
  return n.convert_to<std::int64_t>();
}

ReducedLambda reduce_lambda(const Rational& lambda) {
  if (lambda <= Rational(0) || lambda >= Rational(1))
    throw std::invalid_argument("reduce_lambda: lambda must lie in (0,1)");
  ReducedLambda out;
  out.m = lambda.numerator();
  BigInt den = lambda.denominator();
  unsigned j = 0;
  while ((den & 1) == 0) {
    den >>= 1;
    ++j;
  }
  out.j = j;
  out.n = den;
  out.value = lambda;
  out.canonical = lambda <= Rational(1, 2);
  return out;
}

}  // namespace ajc
