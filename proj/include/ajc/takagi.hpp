#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ajc/dyadic.hpp"
#include "ajc/numtheory.hpp"
#include "ajc/rational.hpp"

namespace ajc {

/// A summand model psi on [0, 1/2]; exact rational evaluation is carried
/// alongside the float evaluator when psi is symbolic.
class PsiFunction {
 public:
  /// c * t^p with an integer exponent: exact on rationals.
  static PsiFunction power(Rational c, unsigned p);
  static PsiFunction zero();
  /// Float-only evaluator (no exact path).
  static PsiFunction from_approx(std::function<double(double)> f, std::string description);
  static PsiFunction from_exact(std::function<Rational(const Rational&)> f,
                                std::string description);
  static PsiFunction from_dual(std::function<Rational(const Rational&)> exact,
                               std::function<double(double)> approx, std::string description);

  /// "pow:c,p" (integer p gets the exact path) or "zero".
  static PsiFunction parse(std::string_view spec);

  bool has_exact() const { return static_cast<bool>(exact_); }
  Rational eval_exact(const Rational& t) const;
  double eval(double t) const;
  const std::string& description() const { return description_; }

 private:
  std::function<Rational(const Rational&)> exact_;
  std::function<double(double)> approx_;
  std::string description_;
};

/// One summand of the finite evaluation: weight * psi(scale).
struct ClosedFormTerm {
  Rational weight;
  Rational scale;
  friend bool operator==(const ClosedFormTerm&, const ClosedFormTerm&) = default;
};

/// Finite form of the series sum_k 2^-k psi(dz(2^k lambda)): j preperiod
/// terms with weights 2^-k followed by ell cycle terms with weights
/// 1/(2^k - 2^(k-ell)), built on the canonical representative min(lambda, 1-lambda).
struct TakagiClosedForm {
  enum class Source { PeriodicOrbit, ZeroEndpoint };

  Rational lambda_requested;
  Rational lambda;                       // canonical representative, <= 1/2
  std::optional<ReducedLambda> reduced;  // empty for endpoints
  std::vector<ClosedFormTerm> terms;
  std::size_t preperiod_count = 0;  // j; terms[j..] form the cycle block
  Source source = Source::ZeroEndpoint;

  std::int64_t cycle_block_length() const {
    return static_cast<std::int64_t>(terms.size() - preperiod_count);
  }
};

/// Builds the finite form for rational lambda in [0,1]. Construction
/// self-checks sum(weight * scale^2) == lambda(1-lambda).
TakagiClosedForm closed_form(const Rational& lambda, bool keep_zero_scales = false);

/// sum over terms of weight * psi(scale), exact. Throws when psi has no
/// exact path.
Rational eval_closed(const TakagiClosedForm& form, const PsiFunction& psi_star);

/// Float-path evaluation of the same sum.
double eval_closed_approx(const TakagiClosedForm& form, const PsiFunction& psi_star);

/// The reduced denominator of lambda: min{ m in N : m*lambda is an integer }.
BigInt denominator_order(const Rational& lambda);

struct TruncatedSeries {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Partial sum of sum_k 2^-k psi(dz(2^k lambda)) with `terms` summands.
/// With the denominator order q supplied the tail bound is
/// q^2 * 2^-(terms+2) * max_{1<=m<=q} |psi(1/m)| (exactly zero once the
/// orbit has died out, i.e. odd part 1 and terms >= j); without it the bound
/// is 2^(1-terms) * max |psi| over the observed scale set.
TruncatedSeries truncated_series(double lambda, const PsiFunction& psi, unsigned terms,
                                 std::optional<BigInt> denominator_order = std::nullopt);

/// Samples of a function on the dyadic grid { i * 2^-N : 0 <= i <= 2^N }.
struct GridFunction {
  unsigned grid_exponent = 0;
  std::vector<double> values;  // size 2^N + 1, values.front() == values.back()
};

/// Banach iteration for the two-branch functional equation
/// f(x) = f(2x)/2 + psi(x) on [0,1/2], f(x) = f(2x-1)/2 + psi(1-x) above.
/// Starting from zero, `iterations` applications leave the grid values
/// within 2^(1-iterations) * sup|psi| of the true fixed point.
GridFunction fixed_point_solve(const PsiFunction& psi, unsigned grid_exponent,
                               unsigned iterations);

/// max over grid points of |f - (right-hand side of the functional equation)|.
double functional_equation_residual(const GridFunction& f, const PsiFunction& psi);

}  // namespace ajc
