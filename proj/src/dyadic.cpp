#include "ajc/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace ajc {

Rational dz(const Rational& x) {
  const Rational r = x.frac();
  const Rational mirror = Rational(1) - r;
  return r <= mirror ? r : mirror;
}

double dz(double x) {
  // remainder(x, 1) = x - n with n the nearest integer, ties to even.
  return std::fabs(std::remainder(x, 1.0));
}

bool dz_double_identity_check(const Rational& x) {
  const Rational d = dz(x);
  const Rational doubled = dz(Rational(2) * x);
  const Rational via_d = dz(Rational(2) * d);
  const Rational two_d = Rational(2) * d;
  const Rational folded = two_d <= Rational(1) - two_d ? two_d : Rational(1) - two_d;
  return doubled == via_d && doubled == folded;
}

Rational dz_iterate(const Rational& x, std::uint64_t k) {
  Rational t = x;
  for (std::uint64_t i = 0; i < k; ++i) t = Rational(2) * dz(t);
  return dz(t);
}

double dz_iterate(double x, std::uint64_t k) {
  double t = x;
  for (std::uint64_t i = 0; i < k; ++i) t = 2.0 * dz(t);
  return dz(t);
}

Rational DyadicOrbit::value_at(std::uint64_t k) const {
  const std::uint64_t j = preperiod.size();
  if (k < j) return preperiod[k];
  return cycle[(k - j) % cycle.size()];
}

DyadicOrbit orbit(const ReducedLambda& lambda) {
  DyadicOrbit out;
  out.lambda = lambda.value;
  out.reduced = lambda;
  const unsigned j = lambda.j;
  const std::int64_t n = lambda.n_i64();

  // Direct doubling pass; dz values computed incrementally (one step each).
  Rational t = lambda.value;
  std::vector<Rational> direct;
  const std::int64_t ell = n >= 3 ? lambda.ell() : 0;
  const std::uint64_t direct_len = j + 2 * static_cast<std::uint64_t>(ell) + 1;
  direct.reserve(direct_len);
  for (std::uint64_t k = 0; k < direct_len; ++k) {
    const Rational d = dz(t);
    direct.push_back(d);
    t = Rational(2) * d;
  }

  out.preperiod.assign(direct.begin(), direct.begin() + j);

  if (n == 1) {
    // 2^k lambda is an integer for k >= j.
    out.cycle = {Rational(0)};
    out.minimal_period = 1;
    if (!direct[j].is_zero()) throw std::logic_error("orbit: expected zero tail for odd part 1");
    return out;
  }

  // Tail via the mu_n orbit of m' = n * dz(2^j lambda). The normalization
  // through dz guarantees m' lies in M_n: dz(2^j lambda) = m'/n in (0, 1/2)
  // with either n | (m - m') or n | (m + m'), so m' stays coprime to n.
  const Rational first_cycle_value = direct[j];
  const BigInt m_prime_big = first_cycle_value.numerator() * (n / first_cycle_value.denominator());
  const std::int64_t m_prime = m_prime_big.convert_to<std::int64_t>();
  const MuOrbit cycle_orbit = mu_orbit(n, m_prime);

  out.cycle.reserve(cycle_orbit.states.size());
  for (const std::int64_t state : cycle_orbit.states) {
    out.cycle.emplace_back(BigInt(state), BigInt(n));
  }
  out.minimal_period = cycle_orbit.period;

  // Cross-check the two computation paths for k <= j + 2*ell.
  for (std::uint64_t k = 0; k < direct_len; ++k) {
    if (out.value_at(k) != direct[k])
      throw std::logic_error("orbit: mu_n orbit disagrees with direct doubling at k = " +
                             std::to_string(k));
  }
  return out;
}

DyadicOrbit orbit(const Rational& lambda) {
  if (lambda == Rational(0) || lambda == Rational(1)) {
    DyadicOrbit out;
    out.lambda = lambda;
    out.cycle = {Rational(0)};
    out.minimal_period = 1;
    return out;
  }
  return orbit(reduce_lambda(lambda));
}

}  // namespace ajc
