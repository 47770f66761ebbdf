#pragma once

#include <cstdint>
#include <vector>

#include "ajc/rational.hpp"

namespace ajc {

/// Nonnegative gcd; gcd(0,0) = 0.
BigInt gcd(const BigInt& a, const BigInt& b);

/// Euler's totient via trial-division factorization. n >= 1.
std::int64_t totient(std::int64_t n);

/// floor(totient(n)/2) for odd n >= 1; rejects even n.
std::int64_t half_totient(std::int64_t n);

/// M_n = { m in {1,...,(n-1)/2} : gcd(m,n) = 1 }, ascending. n odd >= 3.
std::vector<std::int64_t> residue_set(std::int64_t n);

/// The doubling-mod map min(2m, n-2m); maps M_n onto M_n. m must be in M_n.
std::int64_t mu(std::int64_t n, std::int64_t m);

/// One minimal cycle of mu_n starting at m: states = [m, mu(m), ...],
/// states.size() == period, and period divides half_totient(n).
struct MuOrbit {
  std::int64_t n = 0;
  std::int64_t start = 0;
  std::vector<std::int64_t> states;
  std::int64_t period = 0;
};

MuOrbit mu_orbit(std::int64_t n, std::int64_t m);

/// Which of n | (a^l - 1) and n | (a^l + 1) holds, l = totient(n)/2.
/// Exactly one can hold for odd n >= 3; "neither" is an internal error.
enum class EulerDivisibility { DividesMinus, DividesPlus };

EulerDivisibility euler_sharpened_check(std::int64_t n, std::int64_t a);

/// lambda in (0,1) decomposed as m / (2^j * n) with n odd and
/// gcd(m, 2^j * n) = 1. The decomposition is unique.
struct ReducedLambda {
  BigInt m;
  unsigned j = 0;
  BigInt n;
  Rational value;
  bool canonical = false;  // true iff value <= 1/2

  /// n as int64 for the orbit machinery; throws if out of desk scale.
  std::int64_t n_i64() const;
  /// half_totient of the odd part (the cycle block length).
  std::int64_t ell() const { return half_totient(n_i64()); }
};

ReducedLambda reduce_lambda(const Rational& lambda);

}  // namespace ajc
