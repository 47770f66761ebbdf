#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ajc/numtheory.hpp"
#include "ajc/rational.hpp"

namespace ajc {

/// Distance from x to the nearest integer, exact; result in [0, 1/2].
Rational dz(const Rational& x);

/// Float convenience overload (round-half-to-even); exact-path code never uses it.
double dz(double x);

/// Checks the doubling recursion dz(2x) = dz(2 dz(x)) = min(2 dz(x), 1 - 2 dz(x)).
bool dz_double_identity_check(const Rational& x);

/// dz(2^k x) computed through the composition dz o (2 dz)^k, never forming 2^k x.
Rational dz_iterate(const Rational& x, std::uint64_t k);
double dz_iterate(double x, std::uint64_t k);

/// The eventually periodic sequence k -> dz(2^k lambda):
/// preperiod[k] = dz(2^k lambda) for k < j, then the cycle repeats with the
/// minimal period. Cycle entries have denominator dividing the odd part n.
struct DyadicOrbit {
  Rational lambda;
  std::optional<ReducedLambda> reduced;  // empty for lambda in {0,1}
  std::vector<Rational> preperiod;       // length j
  std::vector<Rational> cycle;           // nonempty
  std::int64_t minimal_period = 0;       // == cycle.size()

  Rational value_at(std::uint64_t k) const;
};

/// Builds the orbit two ways (direct doubling and the mu_n orbit of the
/// normalized residue) and cross-checks them for k <= j + 2*ell.
DyadicOrbit orbit(const ReducedLambda& lambda);

/// Convenience entry; lambda in {0,1} yields the all-zero orbit.
DyadicOrbit orbit(const Rational& lambda);

}  // namespace ajc
