#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ajc/rational.hpp"

namespace ajc {

/// Raised when the regularized error function is -infinity somewhere
/// (power family with negative coefficient and exponent below 2).
class UnboundedRegularization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The midpoint-defect model phi. Evaluation is even in u and phi(0) = 0.
class ErrorFunction {
 public:
  enum class Kind { Power, Quadratic, Table, Zero };

  struct TablePoint {
    Rational u;
    double value = 0.0;
    friend bool operator==(const TablePoint&, const TablePoint&) = default;
  };

  /// c * |u|^p with p >= 0 (p = 0 evaluates to c away from 0).
  static ErrorFunction power(Rational c, Rational p);
  static ErrorFunction quadratic(Rational c);
  /// Piecewise-linear model; points ascending in u >= 0, first point (0, 0).
  static ErrorFunction table(std::vector<TablePoint> points);
  static ErrorFunction zero();

  /// "pow:c,p" | "quad:c" | "zero" | "table:path.csv" (CSV rows u,value).
  static ErrorFunction parse(std::string_view spec);

  Kind kind() const { return kind_; }
  double domain_radius() const { return domain_radius_; }
  ErrorFunction with_domain_radius(double radius) const;

  /// Exact rational evaluation is available for the symbolic kinds with an
  /// integer exponent.
  bool has_exact_eval() const;
  Rational eval_exact(const Rational& u) const;
  double eval(double u) const;

  const Rational& coefficient() const { return c_; }
  const Rational& exponent() const { return p_; }
  const std::vector<TablePoint>& points() const { return points_; }

  std::string spec_string() const;

  friend bool operator==(const ErrorFunction&, const ErrorFunction&) = default;

 private:
  Kind kind_ = Kind::Zero;
  Rational c_;
  Rational p_;
  std::vector<TablePoint> points_;
  double domain_radius_ = std::numeric_limits<double>::infinity();
};

/// phi*(u) = inf over positive integers m of m^2 phi(u/m), resolved
/// symbolically for the power family and by bounded search for tables.
class RegularizedErrorFunction {
 public:
  enum class Mode { AnalyticExact, BoundedSearch };

  const ErrorFunction& base() const { return base_; }
  const ErrorFunction& resolved() const;
  Mode mode() const { return mode_; }
  unsigned m_max() const { return m_max_; }
  bool certified() const { return certified_; }

  bool has_exact_eval() const;
  Rational eval_exact(const Rational& u) const;
  double eval(double u) const;

 private:
  friend RegularizedErrorFunction regularize(const ErrorFunction&, unsigned);

  ErrorFunction base_;
  ErrorFunction resolved_;  // meaningful in AnalyticExact mode only
  Mode mode_ = Mode::AnalyticExact;
  unsigned m_max_ = 0;
  bool certified_ = true;
};

/// Throws UnboundedRegularization when phi* would be -infinity.
RegularizedErrorFunction regularize(const ErrorFunction& phi, unsigned table_m_max = 64);

double eval_phi_star(const RegularizedErrorFunction& reg, double u);
Rational eval_phi_star_exact(const RegularizedErrorFunction& reg, const Rational& u);

/// Verifies (phi*)* = phi* at the sample points (AnalyticExact mode only).
bool idempotence_check(const RegularizedErrorFunction& reg, const std::vector<double>& samples);

}  // namespace ajc
