#include "ajc/takagi.hpp"

#include <cmath>
#include <stdexcept>

namespace ajc {

namespace {

Rational rational_pow_u(Rational base, unsigned exp) {
  Rational result(1);
  while (exp > 0) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

}  // namespace

PsiFunction PsiFunction::power(Rational c, unsigned p) {
  PsiFunction out;
  out.description_ = "pow:" + c.str() + "," + std::to_string(p);
  out.exact_ = [c, p](const Rational& t) { return c * rational_pow_u(t, p); };
  const double cd = c.to_double();
  out.approx_ = [cd, p](double t) { return cd * std::pow(t, static_cast<double>(p)); };
  return out;
}

PsiFunction PsiFunction::zero() {
  PsiFunction out;
  out.description_ = "zero";
  out.exact_ = [](const Rational&) { return Rational(0); };
  out.approx_ = [](double) { return 0.0; };
  return out;
}

PsiFunction PsiFunction::from_approx(std::function<double(double)> f, std::string description) {
  PsiFunction out;
  out.approx_ = std::move(f);
  out.description_ = std::move(description);
  return out;
}

PsiFunction PsiFunction::from_exact(std::function<Rational(const Rational&)> f,
                                    std::string description) {
  PsiFunction out;
  out.exact_ = f;
  // float entry: every double is an exact dyadic rational
  out.approx_ = [f](double t) { return f(Rational::from_double(t)).to_double(); };
  out.description_ = std::move(description);
  return out;
}

PsiFunction PsiFunction::from_dual(std::function<Rational(const Rational&)> exact,
                                   std::function<double(double)> approx,
                                   std::string description) {
  PsiFunction out;
  out.exact_ = std::move(exact);
  out.approx_ = std::move(approx);
  out.description_ = std::move(description);
  return out;
}

PsiFunction PsiFunction::parse(std::string_view spec) {
  if (spec == "zero") return zero();
  constexpr std::string_view kPow = "pow:";
  if (spec.substr(0, kPow.size()) == kPow) {
    const std::string_view args = spec.substr(kPow.size());
    const auto comma = args.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("PsiFunction: pow spec needs 'pow:c,p'");
    const Rational c = Rational::parse(args.substr(0, comma));
    const Rational p = Rational::parse(args.substr(comma + 1));
    if (p.sign() < 0) throw std::invalid_argument("PsiFunction: exponent must be >= 0");
    if (p.is_integer()) return power(c, p.numerator().convert_to<unsigned>());
    const double cd = c.to_double();
    const double pd = p.to_double();
    return from_approx([cd, pd](double t) { return cd * std::pow(t, pd); },
                       "pow:" + c.str() + "," + p.str());
  }
  throw std::invalid_argument("PsiFunction: bad spec '" + std::string(spec) + "'");
}

Rational PsiFunction::eval_exact(const Rational& t) const {
  if (!exact_) throw std::logic_error("PsiFunction: no exact evaluator");
  return exact_(t);
}

double PsiFunction::eval(double t) const {
  if (!approx_) throw std::logic_error("PsiFunction: no evaluator");
  return approx_(t);
}

TakagiClosedForm closed_form(const Rational& lambda, bool keep_zero_scales) {
  if (lambda < Rational(0) || lambda > Rational(1))
    throw std::invalid_argument("closed_form: lambda must lie in [0,1]");

  TakagiClosedForm form;
  form.lambda_requested = lambda;
  if (lambda == Rational(0) || lambda == Rational(1)) {
    form.lambda = lambda;
    form.source = TakagiClosedForm::Source::ZeroEndpoint;
    return form;
  }

  // Canonical representative: dz(2^k lambda) = dz(2^k (1-lambda)) for all k,
  // so both halves share one form and the smaller one satisfies m <= 2^(j-1) n.
  const Rational canonical = lambda <= Rational(1, 2) ? lambda : Rational(1) - lambda;
  form.lambda = canonical;
  form.source = TakagiClosedForm::Source::PeriodicOrbit;
  const ReducedLambda reduced = reduce_lambda(canonical);
  form.reduced = reduced;

  const DyadicOrbit orb = orbit(reduced);
  const unsigned j = reduced.j;
  const std::int64_t n = reduced.n_i64();
  const std::int64_t ell = n >= 3 ? reduced.ell() : 0;

  for (unsigned k = 0; k < j; ++k) {
    form.terms.push_back({Rational::pow2(-static_cast<long long>(k)), orb.preperiod[k]});
  }
  form.preperiod_count = form.terms.size();

  // Cycle block: weights 1/(2^k - 2^(k-ell)) = 2^(ell-t-j) / (2^ell - 1) for
  // k = j + t. Powers of two are coprime to the odd 2^ell - 1, so the reduced
  // parts can be assembled directly.
  if (ell > 0) {
    const BigInt odd_block = (BigInt(1) << static_cast<unsigned>(ell)) - 1;
    const std::int64_t jj = j;
    for (std::int64_t t = 0; t < ell; ++t) {
      const std::int64_t s = ell - t;  // weight = 2^(s-j) / odd_block
      const Rational weight =
          s >= jj ? Rational::from_coprime(BigInt(1) << static_cast<unsigned>(s - jj), odd_block)
                  : Rational::from_coprime(1, odd_block << static_cast<unsigned>(jj - s));
      const Rational scale = orb.value_at(static_cast<std::uint64_t>(j) + t);
      if (!scale.is_zero() || keep_zero_scales) form.terms.push_back({weight, scale});
    }
  }

  // Construction-time self-check: sum weight * scale^2 == lambda (1 - lambda).
  static const PsiFunction square = PsiFunction::power(Rational(1), 2);
  if (eval_closed(form, square) != canonical * (Rational(1) - canonical))
    throw std::logic_error("closed_form: weight/scale self-check failed for lambda = " +
                           lambda.str());
  return form;
}

Rational eval_closed(const TakagiClosedForm& form, const PsiFunction& psi_star) {
  if (!psi_star.has_exact()) throw std::logic_error("eval_closed: psi has no exact path");

  // Preperiod terms have small denominators; sum them directly.
  Rational preperiod_sum(0);
  for (std::size_t k = 0; k < form.preperiod_count; ++k) {
    preperiod_sum += form.terms[k].weight * psi_star.eval_exact(form.terms[k].scale);
  }

  const std::size_t cycle_terms = form.terms.size() - form.preperiod_count;
  if (cycle_terms == 0) return preperiod_sum;

  // The factored accumulation below assumes the standard layout (one term per
  // cycle offset); any other shape gets the plain term-by-term sum.
  const bool standard_layout =
      form.reduced &&
      form.cycle_block_length() == (form.reduced->n >= 3 ? form.reduced->ell() : 0);
  if (!standard_layout) {
    Rational sum = preperiod_sum;
    for (std::size_t t = form.preperiod_count; t < form.terms.size(); ++t) {
      sum += form.terms[t].weight * psi_star.eval_exact(form.terms[t].scale);
    }
    return sum;
  }

  // Cycle terms share the denominator 2^j (2^ell - 1): the weight at offset t
  // is 2^(ell - t) / (2^j (2^ell - 1)). The psi values have small denominators
  // (scales are i/n), so accumulate sum_t 2^(ell-t) psi_t as a plain integer
  // over their lcm and reduce once at the end.
  const std::int64_t ell = form.cycle_block_length();
  const unsigned j = form.reduced ? form.reduced->j : 0;
  std::vector<Rational> psi_values;
  psi_values.reserve(cycle_terms);
  BigInt common_den = 1;
  for (std::size_t t = 0; t < cycle_terms; ++t) {
    psi_values.push_back(psi_star.eval_exact(form.terms[form.preperiod_count + t].scale));
    const BigInt den = psi_values.back().denominator();
    common_den = common_den / boost::multiprecision::gcd(common_den, den) * den;
  }
  BigInt accum = 0;  // Horner: after the loop, accum = sum_t 2^(ell-1-t) v_t
  for (const Rational& v : psi_values) {
    accum <<= 1;
    accum += v.numerator() * (common_den / v.denominator());
  }
  accum <<= 1;  // lift 2^(ell-1-t) to 2^(ell-t)
  const BigInt block_denominator =
      (BigInt(1) << j) * ((BigInt(1) << static_cast<unsigned>(ell)) - 1) * common_den;
  return preperiod_sum + Rational(accum, block_denominator);
}

double eval_closed_approx(const TakagiClosedForm& form, const PsiFunction& psi_star) {
  double sum = 0.0;
  for (const ClosedFormTerm& term : form.terms) {
    sum += term.weight.to_double() * psi_star.eval(term.scale.to_double());
  }
  return sum;
}

BigInt denominator_order(const Rational& lambda) { return lambda.denominator(); }

TruncatedSeries truncated_series(double lambda, const PsiFunction& psi, unsigned terms,
                                 std::optional<BigInt> denominator_order) {
  if (terms < 1) throw std::invalid_argument("truncated_series: terms must be >= 1");
  TruncatedSeries out;
  double t = lambda;
  double weight = 1.0;
  double observed_max = 0.0;
  for (unsigned k = 0; k < terms; ++k) {
    const double scale = dz(t);
    out.value += weight * psi.eval(scale);
    observed_max = std::max(observed_max, std::fabs(psi.eval(scale)));
    t = 2.0 * scale;
    weight *= 0.5;
  }
  if (!denominator_order) {
    out.tail_bound = std::ldexp(observed_max, 1 - static_cast<int>(terms));
    return out;
  }
  BigInt q = *denominator_order;
  if (q < 1) throw std::invalid_argument("truncated_series: denominator order must be >= 1");
  // Orbits with odd part 1 die out after j halvings; the tail is exactly zero.
  BigInt odd = q;
  unsigned j = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++j;
  }
  if (odd == 1 && terms >= j) {
    out.tail_bound = 0.0;
    return out;
  }
  const std::int64_t qi = q.convert_to<std::int64_t>();
  double psi_max = 0.0;
  for (std::int64_t m = 1; m <= qi; ++m) {
    psi_max = std::max(psi_max, std::fabs(psi.eval(1.0 / static_cast<double>(m))));
  }
  out.tail_bound = std::ldexp(static_cast<double>(qi) * static_cast<double>(qi) * psi_max,
                              -static_cast<int>(terms) - 2);
  return out;
}

GridFunction fixed_point_solve(const PsiFunction& psi, unsigned grid_exponent,
                               unsigned iterations) {
  if (grid_exponent > 26)
    throw std::invalid_argument("fixed_point_solve: grid exponent too large");
  if (psi.eval(0.0) != 0.0)
    throw std::invalid_argument("fixed_point_solve: psi(0) must be 0 for the endpoint condition");
  // Grid is { i * 2^-N : 0 <= i <= 2^N }, so the doubling maps i -> 2i and
  // i -> 2i - 2^N stay on the grid; no interpolation error enters.
  const std::size_t last = std::size_t{1} << grid_exponent;
  const std::size_t points = last + 1;
  GridFunction f;
  f.grid_exponent = grid_exponent;
  f.values.assign(points, 0.0);
  std::vector<double> next(points, 0.0);

  const double step = std::ldexp(1.0, -static_cast<int>(grid_exponent));
  for (unsigned it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < points; ++i) {
      const std::size_t twice = 2 * i;
      if (twice <= last) {
        next[i] = 0.5 * f.values[twice] + psi.eval(static_cast<double>(i) * step);
      } else {
        next[i] = 0.5 * f.values[twice - last] +
                  psi.eval(static_cast<double>(last - i) * step);
      }
    }
    f.values.swap(next);
  }
  return f;
}

double functional_equation_residual(const GridFunction& f, const PsiFunction& psi) {
  const std::size_t last = std::size_t{1} << f.grid_exponent;
  if (f.values.size() != last + 1)
    throw std::invalid_argument("functional_equation_residual: grid is not dyadic of the stated exponent");
  const double step = std::ldexp(1.0, -static_cast<int>(f.grid_exponent));
  double residual = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const std::size_t twice = 2 * i;
    double rhs;
    if (twice <= last) {
      rhs = 0.5 * f.values[twice] + psi.eval(static_cast<double>(i) * step);
    } else {
      rhs = 0.5 * f.values[twice - last] + psi.eval(static_cast<double>(last - i) * step);
    }
    residual = std::max(residual, std::fabs(f.values[i] - rhs));
  }
  return residual;
}

}  // namespace ajc
