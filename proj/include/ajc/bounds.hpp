#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ajc/errfun.hpp"
#include "ajc/rational.hpp"
#include "ajc/value.hpp"

namespace ajc {

// Float-path comparison tolerances (binary64 with <= 60 geometric terms).
inline constexpr double kRelTolerance = 1e-12;
inline constexpr double kAbsTolerance = 1e-15;

enum class BoundRule {
  RationalNK,
  TakagiClosedForm,
  TakagiTruncated,
  Composition,
  IntroSpecialCase,
};

std::string_view bound_rule_name(BoundRule rule);

struct Estimate {
  BoundRule rule;
  Value value;
  bool certified = false;
};

/// Every computed upper estimate for the extended error at one
/// (lambda, u, phi) triple. `best` indexes the least certified estimate,
/// -1 when none is certified (unbounded phi*, or search-mode phi* only).
struct BoundReport {
  Rational lambda;
  Value u;
  std::string phi_spec;
  std::vector<Estimate> estimates;
  int best = -1;
  bool unbounded = false;

  const Estimate* best_estimate() const {
    return best >= 0 ? &estimates[static_cast<std::size_t>(best)] : nullptr;
  }
};

/// n*k*phi*(u/(n+k)), the rational-combination estimate.
Value rational_nk_bound(const BigInt& n, const BigInt& k, const Value& u,
                        const RegularizedErrorFunction& reg);

/// The finite evaluation of sum_k 2^-k phi*(dz(2^k lambda) u).
Value takagi_bound(const Rational& lambda, const Value& u, const RegularizedErrorFunction& reg);

/// lambda*T(mu,u) + T(lambda, mu*u): an upper estimate for the product
/// point lambda*mu, reported for comparison.
Value composition_bound(const Rational& lambda, const Rational& mu, const Value& u,
                        const RegularizedErrorFunction& reg);

/// The introductory two-step estimate: phi(u/2) at 1/2, 2*phi(u/3) at
/// {1/3, 2/3}, 0 at the endpoints; nothing elsewhere. Uses phi, not phi*.
std::optional<Value> intro_special_case(const Rational& lambda, const Value& u,
                                        const ErrorFunction& phi);

/// Asserts takagi_bound(n/(n+m)) <= rational_nk_bound(n,m) (throws on
/// violation; it would falsify the submultiplicative estimate) and returns
/// whether the two coincide.
bool sharpness_check(const BigInt& n, const BigInt& m, const Value& u,
                     const RegularizedErrorFunction& reg);

/// Runs every applicable rule and selects the least certified estimate.
BoundReport build_report(const Rational& lambda, const Value& u, const ErrorFunction& phi);

/// Serialized report: { "lambda", "u", "phi", "estimates": [...], "best" }.
std::string report_to_json_string(const BoundReport& report, int indent = -1);

}  // namespace ajc
