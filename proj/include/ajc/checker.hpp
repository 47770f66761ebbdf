#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ajc/bounds.hpp"
#include "ajc/errfun.hpp"
#include "ajc/rational.hpp"
#include "ajc/value.hpp"

namespace ajc {

/// A concrete 1-D test function on a rational interval. Polynomial kinds
/// evaluate exactly at rational points; sampled tables use binary64.
class TestFunction {
 public:
  enum class Kind { Quadratic, NegQuadratic, Polynomial, AbsValue, SampledTable };

  struct SamplePoint {
    Rational x;
    double value = 0.0;
  };

  static TestFunction quadratic(Rational a, Rational b, Rational c,
                                Rational lo, Rational hi);
  static TestFunction neg_quadratic(Rational a, Rational lo, Rational hi);
  static TestFunction polynomial(std::vector<Rational> coeffs, Rational lo, Rational hi);
  static TestFunction abs_value(Rational lo, Rational hi);
  static TestFunction sampled_table(std::vector<SamplePoint> points);

  /// "quad:a,b,c" | "negquad:a" | "poly:c0,c1,..." | "abs" | "table:path.csv",
  /// with the domain supplied separately (ignored for tables, which carry it).
  static TestFunction parse(std::string_view spec, const Rational& lo, const Rational& hi);

  Kind kind() const { return kind_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool has_exact_eval() const { return kind_ != Kind::SampledTable; }

  Rational eval_exact(const Rational& x) const;
  double eval(double x) const;

 private:
  Kind kind_ = Kind::AbsValue;
  std::vector<Rational> coeffs_;  // ascending powers (polynomial kinds)
  std::vector<SamplePoint> points_;
  Rational lo_, hi_;
};

/// A genuine counterexample record: lhs > rhs beyond tolerance.
struct ViolationCertificate {
  Rational x;
  Rational y;
  Rational lambda;
  Value lhs;
  Value rhs;
  std::string rule;
};

/// Checks the midpoint inequality f((x+y)/2) <= f(x)/2 + f(y)/2 + phi((x-y)/2)
/// over all pairs of a uniform rational grid. Empty result = certified on
/// the grid (the quantifier over all pairs is necessarily truncated).
std::vector<ViolationCertificate> verify_midconvex(const TestFunction& f,
                                                   const ErrorFunction& phi,
                                                   int grid_count);

/// Checks the lambda-combination inequality against the report's best
/// certified estimate on sampled pairs.
std::vector<ViolationCertificate> verify_lambda_bound(const TestFunction& f,
                                                      const ErrorFunction& phi,
                                                      const Rational& lambda, int pair_count,
                                                      std::uint64_t seed = 20250808);

struct GapRow {
  Rational lambda;
  Value gap;
  Value bound;
  std::string rule;
};

/// For every reduced lambda with denominator <= denominator_max: the actual
/// convexity gap of f at (x, y) next to the engine's best estimate.
/// Throws if any row had gap > bound (consistency is asserted row-wise).
std::vector<GapRow> gap_profile(const TestFunction& f, const ErrorFunction& phi,
                                const Rational& x, const Rational& y, int denominator_max);

/// All reduced fractions p/q in [0,1] with q <= denominator_max, ascending.
std::vector<Rational> enumerate_reduced(int denominator_max);

std::string certificates_to_csv(const std::vector<ViolationCertificate>& certs);
std::string gap_profile_to_csv(const std::vector<GapRow>& rows);

}  // namespace ajc
