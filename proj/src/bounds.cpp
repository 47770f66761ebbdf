#include "ajc/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ajc/takagi.hpp"

namespace ajc {

namespace {

bool exact_path(const Value& u, const RegularizedErrorFunction& reg) {
  return is_exact(u) && reg.has_exact_eval();
}

PsiFunction phi_star_of_scaled(const Value& u, const RegularizedErrorFunction& reg) {
  const double ud = to_double(u);
  auto approx = [ud, reg](double t) { return reg.eval(t * ud); };
  if (exact_path(u, reg)) {
    const Rational ur = std::get<Rational>(u);
    return PsiFunction::from_dual(
        [ur, reg](const Rational& t) { return reg.eval_exact(t * ur); }, approx, "phi*(t*u)");
  }
  return PsiFunction::from_approx(approx, "phi*(t*u)");
}

Value scale_value(const Rational& factor, const Value& v) {
  if (is_exact(v)) return factor * std::get<Rational>(v);
  return factor.to_double() * std::get<double>(v);
}

Value add_values(const Value& a, const Value& b) {
  if (is_exact(a) && is_exact(b)) return std::get<Rational>(a) + std::get<Rational>(b);
  return to_double(a) + to_double(b);
}

// Strict comparison for best-estimate selection: a float value displaces an
// exact one only when smaller beyond the float-path tolerance, so rounding
// never pushes the report off the exact path.
bool definitely_less(const Value& a, const Value& b) {
  if (is_exact(a) && is_exact(b)) return std::get<Rational>(a) < std::get<Rational>(b);
  const double x = to_double(a);
  const double y = to_double(b);
  return x < y - (kAbsTolerance + kRelTolerance * std::max(std::fabs(x), std::fabs(y)));
}

}  // namespace

std::string_view bound_rule_name(BoundRule rule) {
  switch (rule) {
    case BoundRule::RationalNK: return "rational_nk";
    case BoundRule::TakagiClosedForm: return "takagi_closed_form";
    case BoundRule::TakagiTruncated: return "takagi_truncated";
    case BoundRule::Composition: return "composition";
    case BoundRule::IntroSpecialCase: return "intro_special_case";
  }
  return "unknown";
}

Value rational_nk_bound(const BigInt& n, const BigInt& k, const Value& u,
                        const RegularizedErrorFunction& reg) {
  if (n < 1 || k < 1) throw std::invalid_argument("rational_nk_bound: n, k must be >= 1");
  const Rational nk = Rational(n) * Rational(k);
  const Rational denom(n + k);
  if (exact_path(u, reg)) {
    return nk * reg.eval_exact(std::get<Rational>(u) / denom);
  }
  return nk.to_double() * reg.eval(to_double(u) / denom.to_double());
}

Value takagi_bound(const Rational& lambda, const Value& u, const RegularizedErrorFunction& reg) {
  const TakagiClosedForm form = closed_form(lambda);
  const PsiFunction psi = phi_star_of_scaled(u, reg);
  if (exact_path(u, reg)) return eval_closed(form, psi);
  return eval_closed_approx(form, psi);
}

Value composition_bound(const Rational& lambda, const Rational& mu, const Value& u,
                        const RegularizedErrorFunction& reg) {
  const Value outer = takagi_bound(mu, u, reg);
  const Value inner = takagi_bound(lambda, scale_value(mu, u), reg);
  return add_values(scale_value(lambda, outer), inner);
}

std::optional<Value> intro_special_case(const Rational& lambda, const Value& u,
                                        const ErrorFunction& phi) {
  const bool exact = is_exact(u) && phi.has_exact_eval();
  auto eval_scaled = [&](const Rational& factor, const Rational& multiplier) -> Value {
    if (exact) return multiplier * phi.eval_exact(std::get<Rational>(u) * factor);
    return multiplier.to_double() * phi.eval(to_double(u) * factor.to_double());
  };
  if (lambda == Rational(0) || lambda == Rational(1)) {
    if (exact) return Value(Rational(0));
    return Value(0.0);
  }
  if (lambda == Rational(1, 2)) return eval_scaled(Rational(1, 2), Rational(1));
  if (lambda == Rational(1, 3) || lambda == Rational(2, 3))
    return eval_scaled(Rational(1, 3), Rational(2));
  return std::nullopt;
}

bool sharpness_check(const BigInt& n, const BigInt& m, const Value& u,
                     const RegularizedErrorFunction& reg) {
  const Rational lambda(n, n + m);
  const Value takagi = takagi_bound(lambda, u, reg);
  const Value nk = rational_nk_bound(n, m, u, reg);
  if (is_exact(takagi) && is_exact(nk)) {
    const Rational& t = std::get<Rational>(takagi);
    const Rational& b = std::get<Rational>(nk);
    if (t > b)
      throw std::logic_error("sharpness_check: series bound exceeds the nk bound at lambda = " +
                             lambda.str());
    return t == b;
  }
  const double t = to_double(takagi);
  const double b = to_double(nk);
  const double tol = kAbsTolerance + kRelTolerance * std::max(std::fabs(t), std::fabs(b));
  if (t > b + tol)
    throw std::logic_error("sharpness_check: series bound exceeds the nk bound at lambda = " +
                           lambda.str());
  return std::fabs(t - b) <= tol;
}

BoundReport build_report(const Rational& lambda, const Value& u, const ErrorFunction& phi) {
  if (lambda < Rational(0) || lambda > Rational(1))
    throw std::invalid_argument("build_report: lambda must lie in [0,1]");
  BoundReport report;
  report.lambda = lambda;
  report.u = u;
  report.phi_spec = phi.spec_string();

  RegularizedErrorFunction reg;
  try {
    reg = regularize(phi);
  } catch (const UnboundedRegularization&) {
    report.unbounded = true;
    return report;  // no estimate can be certified from an unbounded phi*
  }
  const bool certified = reg.certified();

  // rational_nk: lambda = n/(n+k) with n = numerator, k = denominator - numerator.
  if (lambda != Rational(0) && lambda != Rational(1)) {
    const BigInt n = lambda.numerator();
    const BigInt k = lambda.denominator() - lambda.numerator();
    report.estimates.push_back(
        {BoundRule::RationalNK, rational_nk_bound(n, k, u, reg), certified});
  }

  report.estimates.push_back(
      {BoundRule::TakagiClosedForm, takagi_bound(lambda, u, reg), certified});

  // Truncated series with the exact remainder: a float-grade upper estimate
  // computed without the finite evaluation; skipped if phi's domain cannot
  // host the remainder's max term.
  try {
    const PsiFunction psi = phi_star_of_scaled(u, reg);
    const TruncatedSeries ts =
        truncated_series(lambda.to_double(), psi, 64, denominator_order(lambda));
    report.estimates.push_back(
        {BoundRule::TakagiTruncated, Value(ts.value + ts.tail_bound), certified});
  } catch (const std::out_of_range&) {
  }

  // Composition through the halving split lambda = (1/2) * (2*lambda),
  // mirrored through 1-lambda on the upper half.
  {
    const Rational target = lambda <= Rational(1, 2) ? lambda : Rational(1) - lambda;
    Value comp;
    if (target.is_zero()) {
      comp = exact_path(u, reg) ? Value(Rational(0)) : Value(0.0);
    } else {
      comp = composition_bound(Rational(1, 2), Rational(2) * target, u, reg);
    }
    report.estimates.push_back({BoundRule::Composition, comp, certified});
  }

  if (const std::optional<Value> intro = intro_special_case(lambda, u, phi)) {
    report.estimates.push_back({BoundRule::IntroSpecialCase, *intro, true});
  }

  for (std::size_t i = 0; i < report.estimates.size(); ++i) {
    if (!report.estimates[i].certified) continue;
    if (report.best < 0 ||
        definitely_less(report.estimates[i].value,
                        report.estimates[static_cast<std::size_t>(report.best)].value)) {
      report.best = static_cast<int>(i);
    }
  }
  return report;
}

std::string report_to_json_string(const BoundReport& report, int indent) {
  nlohmann::ordered_json j;
  j["lambda"] = report.lambda.str();
  if (is_exact(report.u)) {
    j["u"] = std::get<Rational>(report.u).str();
  } else {
    j["u"] = std::get<double>(report.u);
  }
  j["phi"] = report.phi_spec;
  j["estimates"] = nlohmann::ordered_json::array();
  for (const Estimate& e : report.estimates) {
    nlohmann::ordered_json je;
    je["rule"] = std::string(bound_rule_name(e.rule));
    if (is_exact(e.value)) {
      je["value"] = std::get<Rational>(e.value).str();
    } else {
      je["value"] = std::get<double>(e.value);
    }
    je["certified"] = e.certified;
    j["estimates"].push_back(je);
  }
  j["best"] = report.best;
  if (report.unbounded) j["unbounded"] = true;
  return j.dump(indent);
}

}  // namespace ajc
