#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ajc/takagi.hpp"
#include "helpers.hpp"

using ajc::BigInt;
using ajc::PsiFunction;
using ajc::Rational;
using ajc::TakagiClosedForm;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

std::vector<std::pair<std::string, std::string>> term_strings(const TakagiClosedForm& form) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& t : form.terms) out.emplace_back(t.weight.str(), t.scale.str());
  return out;
}

// the plain term-by-term sum (the factored accumulation must match it)
Rational naive_eval(const TakagiClosedForm& form, const PsiFunction& psi) {
  Rational sum(0);
  for (const auto& t : form.terms) sum += t.weight * psi.eval_exact(t.scale);
  return sum;
}

}  // namespace

TEST_CASE("closed_form reproduces the worked examples exactly") {
  using P = std::pair<std::string, std::string>;
  CHECK(term_strings(ajc::closed_form(R("1/2"))) == std::vector<P>{{"1", "1/2"}});
  CHECK(term_strings(ajc::closed_form(R("1/3"))) == std::vector<P>{{"2", "1/3"}});
  CHECK(term_strings(ajc::closed_form(R("2/3"))) == std::vector<P>{{"2", "1/3"}});
  CHECK(term_strings(ajc::closed_form(R("1/4"))) ==
        std::vector<P>{{"1", "1/4"}, {"1/2", "1/2"}});
  CHECK(term_strings(ajc::closed_form(R("3/4"))) ==
        std::vector<P>{{"1", "1/4"}, {"1/2", "1/2"}});
  CHECK(term_strings(ajc::closed_form(R("1/5"))) ==
        std::vector<P>{{"4/3", "1/5"}, {"2/3", "2/5"}});
  CHECK(term_strings(ajc::closed_form(R("4/5"))) ==
        std::vector<P>{{"4/3", "1/5"}, {"2/3", "2/5"}});
  CHECK(term_strings(ajc::closed_form(R("2/5"))) ==
        std::vector<P>{{"4/3", "2/5"}, {"2/3", "1/5"}});
  CHECK(term_strings(ajc::closed_form(R("3/5"))) ==
        std::vector<P>{{"4/3", "2/5"}, {"2/3", "1/5"}});
  CHECK(term_strings(ajc::closed_form(R("1/6"))) ==
        std::vector<P>{{"1", "1/6"}, {"1", "1/3"}});
  CHECK(term_strings(ajc::closed_form(R("5/6"))) ==
        std::vector<P>{{"1", "1/6"}, {"1", "1/3"}});
}

TEST_CASE("closed_form endpoints are empty") {
  CHECK(ajc::closed_form(R("0")).terms.empty());
  CHECK(ajc::closed_form(R("1")).terms.empty());
  CHECK(ajc::closed_form(R("0")).source == TakagiClosedForm::Source::ZeroEndpoint);
  CHECK_THROWS_AS(ajc::closed_form(R("7/5")), std::invalid_argument);
}

TEST_CASE("closed_form term layout: j preperiod weights then the cycle block") {
  auto rng = ajc::testing::seeded_rng(23);
  for (int i = 0; i < 150; ++i) {
    const Rational lambda = ajc::testing::random_unit_rational(rng, 500);
    const TakagiClosedForm form = ajc::closed_form(lambda);
    REQUIRE(form.reduced.has_value());
    const unsigned j = form.reduced->j;
    const std::int64_t n = form.reduced->n_i64();
    const std::int64_t ell = n >= 3 ? form.reduced->ell() : 0;
    REQUIRE(form.preperiod_count == j);
    REQUIRE(form.cycle_block_length() == ell);
    for (unsigned k = 0; k < j; ++k) {
      CHECK(form.terms[k].weight == Rational::pow2(-static_cast<long long>(k)));
    }
    for (std::int64_t t = 0; t < ell; ++t) {
      const long long k = static_cast<long long>(j) + t;
      CHECK(form.terms[j + static_cast<std::size_t>(t)].weight ==
            Rational(1) / (Rational::pow2(k) - Rational::pow2(k - ell)));
      CHECK(form.terms[j + static_cast<std::size_t>(t)].scale > Rational(0));
    }
  }
}

TEST_CASE("closed_form symmetry: lambda and 1 - lambda share the same terms") {
  auto rng = ajc::testing::seeded_rng(29);
  for (int i = 0; i < 200; ++i) {
    const Rational lambda = ajc::testing::random_unit_rational(rng, 1000);
    CHECK(term_strings(ajc::closed_form(lambda)) ==
          term_strings(ajc::closed_form(Rational(1) - lambda)));
  }
}

TEST_CASE("eval_closed worked examples") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  CHECK(ajc::eval_closed(ajc::closed_form(R("1/3")), square) == R("2/9"));
  CHECK(ajc::eval_closed(ajc::closed_form(R("1/6")), square) == R("5/36"));
  CHECK(ajc::eval_closed(ajc::closed_form(R("0")), square) == Rational(0));
}

TEST_CASE("eval_closed matches the plain term-by-term sum") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  const PsiFunction linear = PsiFunction::power(Rational(1), 1);
  for (int q = 2; q <= 120; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const TakagiClosedForm form = ajc::closed_form(Rational(BigInt(p), BigInt(q)));
      CHECK(ajc::eval_closed(form, square) == naive_eval(form, square));
      CHECK(ajc::eval_closed(form, linear) == naive_eval(form, linear));
    }
  }
}

TEST_CASE("square-sum identity over all reduced denominators up to 60") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  for (int q = 2; q <= 60; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational lambda{BigInt(p), BigInt(q)};
      CHECK(ajc::eval_closed(ajc::closed_form(lambda), square) ==
            lambda * (Rational(1) - lambda));
    }
  }
}

TEST_CASE("closed form equals the minimal-period geometric oracle") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  const PsiFunction linear = PsiFunction::power(Rational(1), 1);
  auto rng = ajc::testing::seeded_rng(31);
  for (int i = 0; i < 100; ++i) {
    const Rational lambda = ajc::testing::random_unit_rational(rng, 500);
    const TakagiClosedForm form = ajc::closed_form(lambda);
    const ajc::DyadicOrbit orb = ajc::orbit(lambda);
    CHECK(ajc::eval_closed(form, square) == ajc::testing::orbit_series_sum(orb, square));
    CHECK(ajc::eval_closed(form, linear) == ajc::testing::orbit_series_sum(orb, linear));
  }
}

TEST_CASE("denominator_order") {
  CHECK(ajc::denominator_order(R("3/7")) == 7);
  CHECK(ajc::denominator_order(R("1/2")) == 2);
  CHECK(ajc::denominator_order(R("6/8")) == 4);
  CHECK(ajc::denominator_order(R("5")) == 1);
}

TEST_CASE("truncated_series values and tail bounds") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  const auto a = ajc::truncated_series(1.0 / 3.0, square, 30, BigInt(3));
  CHECK(a.value == doctest::Approx(2.0 / 9.0).epsilon(1e-8));
  CHECK(a.tail_bound == doctest::Approx(9.0 * std::ldexp(1.0, -32)));

  const auto zero = ajc::truncated_series(0.0, square, 5, BigInt(1));
  CHECK(zero.value == 0.0);
  CHECK(zero.tail_bound == 0.0);
  const auto zero_observed = ajc::truncated_series(0.0, square, 5);
  CHECK(zero_observed.value == 0.0);
  CHECK(zero_observed.tail_bound == 0.0);

  const auto half = ajc::truncated_series(0.5, square, 1, BigInt(2));
  CHECK(half.value == 0.25);
  CHECK(half.tail_bound == 0.0);  // orbit dead after one halving
}

TEST_CASE("truncated series brackets the exact value") {
  auto rng = ajc::testing::seeded_rng(37);
  for (const unsigned p : {1u, 2u}) {
    const PsiFunction psi = PsiFunction::power(Rational(1), p);
    for (int i = 0; i < 100; ++i) {
      const Rational lambda = ajc::testing::random_unit_rational(rng, 300);
      const double exact = ajc::eval_closed(ajc::closed_form(lambda), psi).to_double();
      for (const unsigned terms : {4u, 12u, 40u}) {
        const auto ts = ajc::truncated_series(lambda.to_double(), psi, terms,
                                              lambda.denominator());
        CHECK(ts.value <= exact + 1e-12);
        CHECK(exact <= ts.value + ts.tail_bound + 1e-12);
      }
    }
  }
}

TEST_CASE("fixed point solve: square summand converges to lambda(1-lambda)") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  const ajc::GridFunction f = ajc::fixed_point_solve(square, 10, 40);
  REQUIRE(f.values.size() == 1025);
  CHECK(f.values.front() == f.values.back());
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double lambda = static_cast<double>(i) / 1024.0;
    worst = std::max(worst, std::fabs(f.values[i] - lambda * (1.0 - lambda)));
  }
  CHECK(worst <= 1e-9);
  CHECK(ajc::functional_equation_residual(f, square) <= 1e-9);
}

TEST_CASE("fixed point solve: zero summand and the classical value at 1/2") {
  const ajc::GridFunction zero = ajc::fixed_point_solve(PsiFunction::zero(), 6, 25);
  for (const double v : zero.values) CHECK(v == 0.0);

  const PsiFunction linear = PsiFunction::power(Rational(1), 1);
  const ajc::GridFunction f = ajc::fixed_point_solve(linear, 8, 40);
  CHECK(f.values[128] == doctest::Approx(0.5).epsilon(1e-9));  // lambda = 1/2
}

TEST_CASE("fixed point iteration obeys the contraction estimate") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  const double sup_psi = 0.25;
  for (const unsigned iters : {3u, 8u, 16u, 24u}) {
    const ajc::GridFunction f = ajc::fixed_point_solve(square, 6, iters);
    const double residual = ajc::functional_equation_residual(f, square);
    CHECK(residual <= std::ldexp(sup_psi, 1 - static_cast<int>(iters)));
  }
}

TEST_CASE("functional equation residual oracle values") {
  const PsiFunction square = PsiFunction::power(Rational(1), 2);
  // exact solution sampled on the grid
  ajc::GridFunction exact;
  exact.grid_exponent = 8;
  for (int i = 0; i <= 256; ++i) {
    const double lambda = i / 256.0;
    exact.values.push_back(lambda * (1.0 - lambda));
  }
  CHECK(ajc::functional_equation_residual(exact, square) <= 1e-15);

  ajc::GridFunction zero;
  zero.grid_exponent = 8;
  zero.values.assign(257, 0.0);
  CHECK(ajc::functional_equation_residual(zero, square) == 0.25);

  ajc::GridFunction bogus = zero;
  bogus.values[13] = 0.5;
  CHECK(ajc::functional_equation_residual(bogus, square) > 0.0);

  ajc::GridFunction wrong_size = zero;
  wrong_size.values.pop_back();
  CHECK_THROWS_AS(ajc::functional_equation_residual(wrong_size, square),
                  std::invalid_argument);
}

TEST_CASE("fixed point solver rejects bad inputs") {
  CHECK_THROWS_AS(ajc::fixed_point_solve(PsiFunction::power(Rational(1), 2), 30, 4),
                  std::invalid_argument);
  const PsiFunction shifted =
      PsiFunction::from_approx([](double) { return 1.0; }, "constant 1");
  CHECK_THROWS_AS(ajc::fixed_point_solve(shifted, 4, 4), std::invalid_argument);
}

TEST_CASE("psi parsing") {
  CHECK(PsiFunction::parse("pow:1,2").has_exact());
  CHECK(PsiFunction::parse("pow:1,2").eval_exact(R("1/3")) == R("1/9"));
  CHECK_FALSE(PsiFunction::parse("pow:1,1.5").has_exact());
  CHECK(PsiFunction::parse("zero").eval(0.3) == 0.0);
  CHECK_THROWS_AS(PsiFunction::parse("pow:1"), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::parse("wavelet"), std::invalid_argument);
}
