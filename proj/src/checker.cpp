#include "ajc/checker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ajc {

namespace {

Rational horner(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void require_domain(const Rational& lo, const Rational& hi) {
  if (lo >= hi) throw std::invalid_argument("TestFunction: domain requires lo < hi");
}

// best certified estimate; falls back to the least uncertified one with a
// marked rule name (search-mode phi* only).
std::pair<Value, std::string> best_bound(const BoundReport& report) {
  if (const Estimate* best = report.best_estimate()) {
    return {best->value, std::string(bound_rule_name(best->rule))};
  }
  if (report.estimates.empty())
    throw UnboundedRegularization("no estimate available: phi* is unbounded below");
  std::size_t arg = 0;
  for (std::size_t i = 1; i < report.estimates.size(); ++i) {
    if (value_less(report.estimates[i].value, report.estimates[arg].value)) arg = i;
  }
  return {report.estimates[arg].value,
          std::string(bound_rule_name(report.estimates[arg].rule)) + " (uncertified)"};
}

bool value_violates(const Value& lhs, const Value& rhs) {
  if (is_exact(lhs) && is_exact(rhs)) return std::get<Rational>(lhs) > std::get<Rational>(rhs);
  const double l = to_double(lhs);
  const double r = to_double(rhs);
  return l > r + kAbsTolerance + kRelTolerance * std::max(std::fabs(l), std::fabs(r));
}

}  // namespace

TestFunction TestFunction::quadratic(Rational a, Rational b, Rational c,
                                     Rational lo, Rational hi) {
  require_domain(lo, hi);
  TestFunction f;
  f.kind_ = Kind::Quadratic;
  f.coeffs_ = {std::move(c), std::move(b), std::move(a)};
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

TestFunction TestFunction::neg_quadratic(Rational a, Rational lo, Rational hi) {
  require_domain(lo, hi);
  TestFunction f;
  f.kind_ = Kind::NegQuadratic;
  f.coeffs_ = {Rational(0), Rational(0), -a};
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

TestFunction TestFunction::polynomial(std::vector<Rational> coeffs, Rational lo, Rational hi) {
  require_domain(lo, hi);
  if (coeffs.empty()) coeffs.push_back(Rational(0));
  TestFunction f;
  f.kind_ = Kind::Polynomial;
  f.coeffs_ = std::move(coeffs);
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

TestFunction TestFunction::abs_value(Rational lo, Rational hi) {
  require_domain(lo, hi);
  TestFunction f;
  f.kind_ = Kind::AbsValue;
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

TestFunction TestFunction::sampled_table(std::vector<SamplePoint> points) {
  if (points.size() < 2) throw std::invalid_argument("TestFunction: table needs >= 2 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].x <= points[i - 1].x)
      throw std::invalid_argument("TestFunction: table abscissae must be strictly increasing");
  }
  TestFunction f;
  f.kind_ = Kind::SampledTable;
  f.lo_ = points.front().x;
  f.hi_ = points.back().x;
  f.points_ = std::move(points);
  return f;
}

TestFunction TestFunction::parse(std::string_view spec, const Rational& lo, const Rational& hi) {
  auto split_args = [](std::string_view args) {
    std::vector<Rational> out;
    while (!args.empty()) {
      const auto comma = args.find(',');
      out.push_back(Rational::parse(args.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      args.remove_prefix(comma + 1);
    }
    return out;
  };
  if (spec == "abs") return abs_value(lo, hi);
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "quad") {
    const auto a = split_args(args);
    if (a.size() != 3) throw std::invalid_argument("TestFunction: quad spec needs 'quad:a,b,c'");
    return quadratic(a[0], a[1], a[2], lo, hi);
  }
  if (head == "negquad") {
    const auto a = split_args(args);
    if (a.size() != 1) throw std::invalid_argument("TestFunction: negquad spec needs 'negquad:a'");
    return neg_quadratic(a[0], lo, hi);
  }
  if (head == "poly") return polynomial(split_args(args), lo, hi);
  if (head == "table") {
    std::ifstream in{std::string(args)};
    if (!in) throw std::invalid_argument("TestFunction: cannot open '" + std::string(args) + "'");
    std::vector<SamplePoint> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("TestFunction: bad table row '" + line + "'");
      pts.push_back({Rational::parse(std::string_view(line).substr(0, comma)),
                     std::stod(line.substr(comma + 1))});
    }
    return sampled_table(std::move(pts));
  }
  throw std::invalid_argument("TestFunction: bad spec '" + std::string(spec) + "'");
}

Rational TestFunction::eval_exact(const Rational& x) const {
  if (x < lo_ || x > hi_) throw std::out_of_range("TestFunction: x outside the domain");
  switch (kind_) {
    case Kind::Quadratic:
    case Kind::NegQuadratic:
    case Kind::Polynomial:
      return horner(coeffs_, x);
    case Kind::AbsValue:
      return x.abs();
    case Kind::SampledTable:
      throw std::logic_error("TestFunction: sampled tables have no exact evaluation");
  }
  return Rational(0);
}

double TestFunction::eval(double x) const {
  if (x < lo_.to_double() || x > hi_.to_double())
    throw std::out_of_range("TestFunction: x outside the domain");
  if (kind_ == Kind::AbsValue) return std::fabs(x);
  if (kind_ != Kind::SampledTable) {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
  }
  std::size_t hi = 1;
  while (hi < points_.size() && points_[hi].x.to_double() < x) ++hi;
  if (hi == points_.size()) return points_.back().value;
  const double x0 = points_[hi - 1].x.to_double();
  const double x1 = points_[hi].x.to_double();
  const double y0 = points_[hi - 1].value;
  const double y1 = points_[hi].value;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

namespace {

// f(lambda x + (1-lambda) y) - lambda f(x) - (1-lambda) f(y)
Value convexity_gap(const TestFunction& f, const Rational& lambda, const Rational& x,
                    const Rational& y) {
  if (f.has_exact_eval()) {
    const Rational mix = lambda * x + (Rational(1) - lambda) * y;
    return f.eval_exact(mix) - lambda * f.eval_exact(x) -
           (Rational(1) - lambda) * f.eval_exact(y);
  }
  const double lam = lambda.to_double();
  const double xd = x.to_double();
  const double yd = y.to_double();
  return f.eval(lam * xd + (1.0 - lam) * yd) - lam * f.eval(xd) - (1.0 - lam) * f.eval(yd);
}

std::vector<Rational> uniform_grid(const Rational& lo, const Rational& hi, int count) {
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(count));
  const Rational span = hi - lo;
  for (int i = 0; i < count; ++i) {
    grid.push_back(lo + span * Rational(i, count - 1));
  }
  return grid;
}

}  // namespace

std::vector<ViolationCertificate> verify_midconvex(const TestFunction& f,
                                                   const ErrorFunction& phi, int grid_count) {
  if (grid_count < 2) throw std::invalid_argument("verify_midconvex: grid_count must be >= 2");
  const std::vector<Rational> grid = uniform_grid(f.lo(), f.hi(), grid_count);
  const bool exact = f.has_exact_eval() && phi.has_exact_eval();
  std::vector<ViolationCertificate> violations;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = i; k < grid.size(); ++k) {
      const Rational& x = grid[i];
      const Rational& y = grid[k];
      Value lhs, rhs;
      if (exact) {
        const Rational half(1, 2);
        lhs = f.eval_exact(half * (x + y));
        rhs = half * f.eval_exact(x) + half * f.eval_exact(y) +
              phi.eval_exact(half * (x - y));
      } else {
        const double xd = x.to_double();
        const double yd = y.to_double();
        lhs = f.eval(0.5 * (xd + yd));
        rhs = 0.5 * f.eval(xd) + 0.5 * f.eval(yd) + phi.eval(0.5 * (xd - yd));
      }
      if (value_violates(lhs, rhs)) {
        violations.push_back({x, y, Rational(1, 2), lhs, rhs, "midconvex"});
      }
    }
  }
  return violations;
}

std::vector<ViolationCertificate> verify_lambda_bound(const TestFunction& f,
                                                      const ErrorFunction& phi,
                                                      const Rational& lambda, int pair_count,
                                                      std::uint64_t seed) {
  if (pair_count < 1) throw std::invalid_argument("verify_lambda_bound: pair_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_dist(1, 32);
  const Rational span = f.hi() - f.lo();
  auto random_point = [&] {
    const int den = den_dist(rng);
    std::uniform_int_distribution<int> num_dist(0, den);
    return f.lo() + span * Rational(num_dist(rng), den);
  };

  std::vector<ViolationCertificate> violations;
  for (int i = 0; i < pair_count; ++i) {
    const Rational x = random_point();
    const Rational y = random_point();
    const Value gap = convexity_gap(f, lambda, x, y);
    const Value u = f.has_exact_eval() && phi.has_exact_eval()
                        ? Value(x - y)
                        : Value(x.to_double() - y.to_double());
    const auto [bound, rule] = best_bound(build_report(lambda, u, phi));
    if (value_violates(gap, bound)) {
      violations.push_back({x, y, lambda, gap, bound, rule});
    }
  }
  return violations;
}

std::vector<Rational> enumerate_reduced(int denominator_max) {
  if (denominator_max < 1) throw std::invalid_argument("enumerate_reduced: bound must be >= 1");
  std::vector<Rational> out;
  out.emplace_back(0);
  out.emplace_back(1);
  for (int q = 2; q <= denominator_max; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(BigInt(p), BigInt(q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GapRow> gap_profile(const TestFunction& f, const ErrorFunction& phi,
                                const Rational& x, const Rational& y, int denominator_max) {
  if (x < f.lo() || x > f.hi() || y < f.lo() || y > f.hi())
    throw std::invalid_argument("gap_profile: x, y must lie in the domain");
  std::vector<GapRow> rows;
  for (const Rational& lambda : enumerate_reduced(denominator_max)) {
    const Value gap = convexity_gap(f, lambda, x, y);
    const Value u = f.has_exact_eval() && phi.has_exact_eval()
                        ? Value(x - y)
                        : Value(x.to_double() - y.to_double());
    const auto [bound, rule] = best_bound(build_report(lambda, u, phi));
    if (value_violates(gap, bound)) {
      throw std::logic_error("gap_profile: gap exceeds the bound at lambda = " + lambda.str() +
                             " (f is not midconvex for this phi)");
    }
    rows.push_back({lambda, gap, bound, rule});
  }
  return rows;
}

std::string certificates_to_csv(const std::vector<ViolationCertificate>& certs) {
  std::ostringstream os;
  os << "x,y,lambda,lhs,rhs,rule\n";
  for (const ViolationCertificate& c : certs) {
    os << c.x.str() << ',' << c.y.str() << ',' << c.lambda.str() << ',' << value_str(c.lhs)
       << ',' << value_str(c.rhs) << ',' << c.rule << '\n';
  }
  return os.str();
}

std::string gap_profile_to_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os << "lambda,num,den,gap,bound,rule\n";
  for (const GapRow& r : rows) {
    os << r.lambda.str() << ',' << r.lambda.numerator().str() << ',' << r.lambda.denominator().str()
       << ',' << value_str(r.gap) << ',' << value_str(r.bound) << ',' << r.rule << '\n';
  }
  return os.str();
}

}  // namespace ajc
