#include "ajc/errfun.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ajc {

namespace {

Rational rational_pow(const Rational& base, const BigInt& exp) {
  Rational result(1);
  BigInt e = exp;
  Rational b = base;
  while (e > 0) {
    if ((e & 1) == 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace

ErrorFunction ErrorFunction::power(Rational c, Rational p) {
  if (p.sign() < 0) throw std::invalid_argument("ErrorFunction: power exponent must be >= 0");
  ErrorFunction out;
  out.kind_ = Kind::Power;
  out.c_ = std::move(c);
  out.p_ = std::move(p);
  return out;
}

ErrorFunction ErrorFunction::quadratic(Rational c) {
  ErrorFunction out;
  out.kind_ = Kind::Quadratic;
  out.c_ = std::move(c);
  out.p_ = Rational(2);
  return out;
}

ErrorFunction ErrorFunction::table(std::vector<TablePoint> points) {
  if (points.empty()) throw std::invalid_argument("ErrorFunction: empty table");
  if (!points.front().u.is_zero() || points.front().value != 0.0)
    throw std::invalid_argument("ErrorFunction: table must start with (0, 0)");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].u <= points[i - 1].u)
      throw std::invalid_argument("ErrorFunction: table abscissae must be strictly increasing");
  }
  ErrorFunction out;
  out.kind_ = Kind::Table;
  out.domain_radius_ = points.back().u.to_double();
  out.points_ = std::move(points);
  return out;
}

ErrorFunction ErrorFunction::zero() { return {}; }

ErrorFunction ErrorFunction::parse(std::string_view spec) {
  if (spec == "zero") return zero();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("ErrorFunction: bad spec '" + std::string(spec) + "'");
  const std::string_view head = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (head == "quad") return quadratic(Rational::parse(args));
  if (head == "pow") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("ErrorFunction: pow spec needs 'pow:c,p'");
    return power(Rational::parse(args.substr(0, comma)), Rational::parse(args.substr(comma + 1)));
  }
  if (head == "table") {
    std::ifstream in{std::string(args)};
    if (!in) throw std::invalid_argument("ErrorFunction: cannot open '" + std::string(args) + "'");
    std::vector<TablePoint> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("ErrorFunction: bad table row '" + line + "'");
      pts.push_back({Rational::parse(std::string_view(line).substr(0, comma)),
                     std::stod(line.substr(comma + 1))});
    }
    return table(std::move(pts));
  }
  throw std::invalid_argument("ErrorFunction: unknown kind '" + std::string(head) + "'");
}

ErrorFunction ErrorFunction::with_domain_radius(double radius) const {
  if (!(radius > 0)) throw std::invalid_argument("ErrorFunction: domain radius must be positive");
  ErrorFunction out = *this;
  out.domain_radius_ = radius;
  return out;
}

bool ErrorFunction::has_exact_eval() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Quadratic:
      return true;
    case Kind::Power:
      return p_.is_integer();
    case Kind::Table:
      return false;
  }
  return false;
}

Rational ErrorFunction::eval_exact(const Rational& u) const {
  if (!has_exact_eval()) throw std::logic_error("ErrorFunction: no exact evaluation for this kind");
  if (u.is_zero()) return Rational(0);
  const Rational a = u.abs();
  if (a.to_double() > domain_radius_)
    throw std::out_of_range("ErrorFunction: |u| exceeds the domain radius");
  switch (kind_) {
    case Kind::Zero:
      return Rational(0);
    case Kind::Quadratic:
      return c_ * a * a;
    case Kind::Power:
      return c_ * rational_pow(a, p_.numerator());
    case Kind::Table:
      break;
  }
  throw std::logic_error("ErrorFunction: unreachable");
}

double ErrorFunction::eval(double u) const {
  const double a = std::fabs(u);
  if (a > domain_radius_)
    throw std::out_of_range("ErrorFunction: |u| exceeds the domain radius");
  if (a == 0.0) return 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Quadratic:
      return c_.to_double() * a * a;
    case Kind::Power:
      return c_.to_double() * std::pow(a, p_.to_double());
    case Kind::Table: {
      // linear interpolation on |u|
      std::size_t hi = 1;
      while (hi < points_.size() && points_[hi].u.to_double() < a) ++hi;
      if (hi == points_.size()) return points_.back().value;  // a == radius exactly
      const double x0 = points_[hi - 1].u.to_double();
      const double x1 = points_[hi].u.to_double();
      const double y0 = points_[hi - 1].value;
      const double y1 = points_[hi].value;
      return y0 + (y1 - y0) * (a - x0) / (x1 - x0);
    }
  }
  return 0.0;
}

std::string ErrorFunction::spec_string() const {
  switch (kind_) {
    case Kind::Zero:
      return "zero";
    case Kind::Quadratic:
      return "quad:" + c_.str();
    case Kind::Power:
      return "pow:" + c_.str() + "," + p_.str();
    case Kind::Table: {
      std::ostringstream os;
      os << "table[" << points_.size() << " points, radius " << domain_radius_ << "]";
      return os.str();
    }
  }
  return "zero";
}

const ErrorFunction& RegularizedErrorFunction::resolved() const {
  if (mode_ != Mode::AnalyticExact)
    throw std::logic_error("RegularizedErrorFunction: no resolved form in BoundedSearch mode");
  return resolved_;
}

bool RegularizedErrorFunction::has_exact_eval() const {
  return mode_ == Mode::AnalyticExact && resolved_.has_exact_eval();
}

Rational RegularizedErrorFunction::eval_exact(const Rational& u) const {
  if (!has_exact_eval())
    throw std::logic_error("RegularizedErrorFunction: no exact evaluation available");
  return resolved_.eval_exact(u);
}

double RegularizedErrorFunction::eval(double u) const {
  if (mode_ == Mode::AnalyticExact) return resolved_.eval(u);
  double best = base_.eval(u);
  for (unsigned m = 2; m <= m_max_; ++m) {
    best = std::min(best, static_cast<double>(m) * m * base_.eval(u / m));
  }
  return best;
}

RegularizedErrorFunction regularize(const ErrorFunction& phi, unsigned table_m_max) {
  RegularizedErrorFunction out;
  out.base_ = phi;
  if (phi.kind() == ErrorFunction::Kind::Table) {
    if (table_m_max < 1) throw std::invalid_argument("regularize: m_max must be >= 1");
    out.mode_ = RegularizedErrorFunction::Mode::BoundedSearch;
    out.m_max_ = table_m_max;
    out.certified_ = false;  // a truncated infimum is only an upper approximation
    return out;
  }
  out.mode_ = RegularizedErrorFunction::Mode::AnalyticExact;
  out.certified_ = true;
  // m^2 phi(u/m) = c m^(2-p) |u|^p: monotone in m, so the infimum sits at
  // m = 1 or in the m -> infinity limit depending on sign(c) and p vs 2.
  const int sign = phi.coefficient().sign();
  const Rational& p = phi.exponent();
  if (phi.kind() == ErrorFunction::Kind::Zero || sign == 0) {
    out.resolved_ = ErrorFunction::zero().with_domain_radius(phi.domain_radius());
    return out;
  }
  if (sign > 0) {
    out.resolved_ = p <= Rational(2) ? phi : ErrorFunction::zero().with_domain_radius(phi.domain_radius());
    return out;
  }
  if (p < Rational(2))
    throw UnboundedRegularization(
        "regularize: phi* = -infinity for negative coefficient and exponent below 2");
  out.resolved_ = phi;
  return out;
}

double eval_phi_star(const RegularizedErrorFunction& reg, double u) { return reg.eval(u); }

Rational eval_phi_star_exact(const RegularizedErrorFunction& reg, const Rational& u) {
  return reg.eval_exact(u);
}

bool idempotence_check(const RegularizedErrorFunction& reg, const std::vector<double>& samples) {
  if (reg.mode() != RegularizedErrorFunction::Mode::AnalyticExact)
    throw std::invalid_argument("idempotence_check: requires AnalyticExact mode");
  const RegularizedErrorFunction twice = regularize(reg.resolved());
  for (const double u : samples) {
    if (reg.eval(u) != twice.eval(u)) return false;
  }
  return true;
}

}  // namespace ajc
