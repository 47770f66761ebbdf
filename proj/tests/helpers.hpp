#pragma once

#include <cstdint>
#include <random>

#include "ajc/dyadic.hpp"
#include "ajc/rational.hpp"
#include "ajc/takagi.hpp"

namespace ajc::testing {

inline std::mt19937_64 seeded_rng(std::uint64_t seed = 0x5eed2025u) {
  return std::mt19937_64(seed);
}

/// Random reduced rational in (0,1) with denominator <= den_max.
inline Rational random_unit_rational(std::mt19937_64& rng, std::int64_t den_max) {
  std::uniform_int_distribution<std::int64_t> den_dist(2, den_max);
  const std::int64_t q = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(1, q - 1);
  return Rational(BigInt(num_dist(rng)), BigInt(q));
}

/// Random rational in roughly [-bound, bound] with denominator <= den_max.
inline Rational random_rational(std::mt19937_64& rng, std::int64_t den_max, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, den_max);
  const std::int64_t q = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(-bound * q, bound * q);
  return Rational(BigInt(num_dist(rng)), BigInt(q));
}

/// Independent summation of sum_k 2^-k psi(dz(2^k lambda)): preperiod terms
/// plus one minimal cycle closed by the geometric factor 2^p / (2^p - 1).
/// This is the oracle for the finite-evaluation route; it never touches
/// closed_form / eval_closed.
inline Rational orbit_series_sum(const DyadicOrbit& orb, const PsiFunction& psi) {
  Rational preperiod_sum(0);
  const long long j = static_cast<long long>(orb.preperiod.size());
  for (long long k = 0; k < j; ++k) {
    preperiod_sum += Rational::pow2(-k) * psi.eval_exact(orb.preperiod[k]);
  }
  // One cycle: sum_i 2^-i psi(c_i) accumulated Horner-style over the lcm of
  // the psi denominators, then the geometric tail factor 2^p / (2^p - 1).
  const unsigned p = static_cast<unsigned>(orb.cycle.size());
  std::vector<Rational> values;
  values.reserve(p);
  BigInt common_den = 1;
  for (const Rational& c : orb.cycle) {
    values.push_back(psi.eval_exact(c));
    const BigInt den = values.back().denominator();
    common_den = common_den / boost::multiprecision::gcd(common_den, den) * den;
  }
  BigInt accum = 0;
  for (const Rational& v : values) {
    accum <<= 1;
    accum += v.numerator() * (common_den / v.denominator());
  }
  // accum = sum_i 2^(p-1-i) v_i, so sum_i 2^-i psi_i = accum / (common_den 2^(p-1))
  const Rational cycle_sum =
      Rational(accum, common_den) / Rational::pow2(static_cast<long long>(p) - 1);
  const Rational geometric = Rational::pow2(p) / (Rational::pow2(p) - Rational(1));
  return preperiod_sum + Rational::pow2(-j) * cycle_sum * geometric;
}

/// dz(2^k lambda) by explicitly forming the big rational 2^k * lambda.
inline Rational naive_dz_pow2(const Rational& lambda, std::uint64_t k) {
  Rational x = lambda;
  for (std::uint64_t i = 0; i < k; ++i) x *= Rational(2);
  return dz(x);
}

}  // namespace ajc::testing
