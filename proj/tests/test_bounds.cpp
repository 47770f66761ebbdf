#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ajc/bounds.hpp"
#include "ajc/takagi.hpp"
#include "helpers.hpp"

using ajc::BigInt;
using ajc::BoundReport;
using ajc::BoundRule;
using ajc::ErrorFunction;
using ajc::Rational;
using ajc::Value;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

const ajc::RegularizedErrorFunction& quad_reg() {
  static const auto reg = ajc::regularize(ErrorFunction::quadratic(Rational(1)));
  return reg;
}

Rational exact(const Value& v) { return std::get<Rational>(v); }

const ajc::Estimate* find_rule(const BoundReport& report, BoundRule rule) {
  for (const auto& e : report.estimates) {
    if (e.rule == rule) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("rational_nk_bound") {
  CHECK(exact(ajc::rational_nk_bound(BigInt(1), BigInt(1), Value(Rational(1)), quad_reg())) ==
        R("1/4"));
  CHECK(exact(ajc::rational_nk_bound(BigInt(1), BigInt(2), Value(Rational(1)), quad_reg())) ==
        R("2/9"));
  CHECK(exact(ajc::rational_nk_bound(BigInt(2), BigInt(3), Value(Rational(1)), quad_reg())) ==
        R("6/25"));
  CHECK(ajc::rational_nk_bound(BigInt(2), BigInt(3), Value(Rational(1)), quad_reg()) ==
        Value(R("0.24")));
  CHECK_THROWS_AS(ajc::rational_nk_bound(BigInt(0), BigInt(1), Value(Rational(1)), quad_reg()),
                  std::invalid_argument);
}

TEST_CASE("takagi_bound worked examples") {
  CHECK(exact(ajc::takagi_bound(R("1/2"), Value(Rational(1)), quad_reg())) == R("1/4"));
  CHECK(exact(ajc::takagi_bound(R("1/6"), Value(Rational(1)), quad_reg())) == R("5/36"));
  const auto abs_reg = ajc::regularize(ErrorFunction::power(Rational(1), Rational(1)));
  CHECK(exact(ajc::takagi_bound(R("1/3"), Value(Rational(1)), abs_reg)) == R("2/3"));
  CHECK(exact(ajc::takagi_bound(R("1/3"), Value(R("1/2")), abs_reg)) == R("1/3"));
}

TEST_CASE("takagi_bound for the quadratic equals lambda(1-lambda)u^2 exactly") {
  auto rng = ajc::testing::seeded_rng(41);
  for (int i = 0; i < 200; ++i) {
    const Rational lambda = ajc::testing::random_unit_rational(rng, 400);
    const Rational u = ajc::testing::random_rational(rng, 60, 4);
    CHECK(exact(ajc::takagi_bound(lambda, Value(u), quad_reg())) ==
          lambda * (Rational(1) - lambda) * u * u);
  }
}

TEST_CASE("composition bound at the halving split") {
  // (1/2)(1/4) + (1/4)(1/4): both routes give 3/16 for the quadratic
  const Value comp =
      ajc::composition_bound(R("1/2"), R("1/2"), Value(Rational(1)), quad_reg());
  CHECK(exact(comp) == R("3/16"));
  CHECK(exact(ajc::takagi_bound(R("1/4"), Value(Rational(1)), quad_reg())) == R("3/16"));
  // lambda = 1 annihilates the outer term
  CHECK(exact(ajc::composition_bound(R("1"), R("2/5"), Value(Rational(1)), quad_reg())) ==
        exact(ajc::takagi_bound(R("2/5"), Value(Rational(1)), quad_reg())));
  // mu = 0 gives zero
  CHECK(exact(ajc::composition_bound(R("1/2"), R("0"), Value(Rational(1)), quad_reg())) ==
        Rational(0));
}

TEST_CASE("intro special case") {
  const ErrorFunction quad = ErrorFunction::quadratic(Rational(1));
  const auto third = ajc::intro_special_case(R("1/3"), Value(Rational(1)), quad);
  REQUIRE(third.has_value());
  CHECK(exact(*third) == R("2/9"));
  const auto half = ajc::intro_special_case(R("1/2"), Value(Rational(1)), quad);
  REQUIRE(half.has_value());
  CHECK(exact(*half) == R("1/4"));
  CHECK(exact(*ajc::intro_special_case(R("0"), Value(Rational(5)), quad)) == Rational(0));
  CHECK_FALSE(ajc::intro_special_case(R("1/7"), Value(Rational(1)), quad).has_value());
}

TEST_CASE("sharpness_check: equality for the quadratic, inequality in general") {
  auto rng = ajc::testing::seeded_rng(43);
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<int> small(1, 30);
    const BigInt n(small(rng));
    const BigInt m(small(rng));
    const Rational u = ajc::testing::random_rational(rng, 20, 3);
    CHECK(ajc::sharpness_check(n, m, Value(u), quad_reg()));  // equality case
  }
  const auto abs_reg = ajc::regularize(ErrorFunction::power(Rational(1), Rational(1)));
  CHECK(ajc::sharpness_check(BigInt(1), BigInt(2), Value(Rational(1)), abs_reg));  // 2/3 = 2/3
  const auto p15 = ajc::regularize(ErrorFunction::power(Rational(1), R("3/2")));
  CHECK_NOTHROW(ajc::sharpness_check(BigInt(1), BigInt(1), Value(Rational(1)), p15));
  // the series route never exceeds the nk route on random inputs
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<int> small(1, 20);
    CHECK_NOTHROW(ajc::sharpness_check(BigInt(small(rng)), BigInt(small(rng)),
                                       Value(ajc::testing::random_rational(rng, 20, 3)),
                                       abs_reg));
  }
}

TEST_CASE("build_report ties at 1/3 for the quadratic") {
  const BoundReport report =
      ajc::build_report(R("1/3"), Value(Rational(1)), ErrorFunction::quadratic(Rational(1)));
  const auto* nk = find_rule(report, BoundRule::RationalNK);
  const auto* takagi = find_rule(report, BoundRule::TakagiClosedForm);
  const auto* intro = find_rule(report, BoundRule::IntroSpecialCase);
  const auto* comp = find_rule(report, BoundRule::Composition);
  REQUIRE(nk);
  REQUIRE(takagi);
  REQUIRE(intro);
  REQUIRE(comp);
  CHECK(exact(nk->value) == R("2/9"));
  CHECK(exact(takagi->value) == R("2/9"));
  CHECK(exact(intro->value) == R("2/9"));
  CHECK(exact(comp->value) == R("2/9"));
  CHECK(report.best >= 0);
  CHECK(exact(report.best_estimate()->value) == R("2/9"));
}

TEST_CASE("build_report: quadratic at 1/4 matches both routes") {
  const BoundReport report =
      ajc::build_report(R("1/4"), Value(Rational(1)), ErrorFunction::quadratic(Rational(1)));
  CHECK(exact(find_rule(report, BoundRule::RationalNK)->value) == R("3/16"));
  CHECK(exact(find_rule(report, BoundRule::TakagiClosedForm)->value) == R("3/16"));
}

TEST_CASE("build_report: the series route is strictly sharper at 1/4 for pow:1,1") {
  const BoundReport report = ajc::build_report(R("1/4"), Value(Rational(1)),
                                               ErrorFunction::power(Rational(1), Rational(1)));
  CHECK(exact(find_rule(report, BoundRule::RationalNK)->value) == R("3/4"));
  CHECK(exact(find_rule(report, BoundRule::TakagiClosedForm)->value) == R("1/2"));
  CHECK(exact(report.best_estimate()->value) == R("1/2"));
  CHECK(report.best_estimate()->rule != BoundRule::RationalNK);
}

TEST_CASE("build_report zeros (endpoints and u = 0) across every rule") {
  const ErrorFunction quad = ErrorFunction::quadratic(Rational(1));
  for (const char* lambda : {"0", "1"}) {
    const BoundReport report = ajc::build_report(R(lambda), Value(Rational(7)), quad);
    for (const auto& e : report.estimates) {
      if (is_exact(e.value)) {
        CHECK(exact(e.value) == Rational(0));
      } else {
        CHECK(ajc::to_double(e.value) == 0.0);
      }
    }
    CHECK(report.best >= 0);
  }
  const BoundReport at_zero_u = ajc::build_report(R("2/7"), Value(Rational(0)), quad);
  for (const auto& e : at_zero_u.estimates) {
    if (is_exact(e.value)) {
      CHECK(exact(e.value) == Rational(0));
    } else {
      CHECK(ajc::to_double(e.value) == 0.0);
    }
  }
}

TEST_CASE("report symmetry: (lambda, u) against (1-lambda, -u)") {
  auto rng = ajc::testing::seeded_rng(47);
  const ErrorFunction quad = ErrorFunction::quadratic(Rational(1));
  const ErrorFunction linear = ErrorFunction::power(Rational(1), Rational(1));
  for (const ErrorFunction& phi : {quad, linear}) {
    for (int i = 0; i < 60; ++i) {
      const Rational lambda = ajc::testing::random_unit_rational(rng, 200);
      const Rational u = ajc::testing::random_rational(rng, 30, 3);
      const BoundReport a = ajc::build_report(lambda, Value(u), phi);
      const BoundReport b = ajc::build_report(Rational(1) - lambda, Value(-u), phi);
      REQUIRE(a.estimates.size() == b.estimates.size());
      for (std::size_t k = 0; k < a.estimates.size(); ++k) {
        CHECK(a.estimates[k].rule == b.estimates[k].rule);
        if (is_exact(a.estimates[k].value) && is_exact(b.estimates[k].value)) {
          CHECK(exact(a.estimates[k].value) == exact(b.estimates[k].value));
        } else {
          CHECK(ajc::to_double(a.estimates[k].value) ==
                doctest::Approx(ajc::to_double(b.estimates[k].value)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("best never exceeds any certified estimate") {
  auto rng = ajc::testing::seeded_rng(53);
  for (int i = 0; i < 80; ++i) {
    const Rational lambda = ajc::testing::random_unit_rational(rng, 150);
    const Rational u = ajc::testing::random_rational(rng, 25, 2);
    const BoundReport report =
        ajc::build_report(lambda, Value(u), ErrorFunction::quadratic(Rational(2)));
    REQUIRE(report.best >= 0);
    for (const auto& e : report.estimates) {
      if (!e.certified) continue;
      const Value& best = report.best_estimate()->value;
      if (is_exact(e.value) && is_exact(best)) {
        CHECK_FALSE(exact(e.value) < exact(best));
      } else {
        // float-grade rows may sit a rounding error below the exact minimum
        const double ev = ajc::to_double(e.value);
        const double bv = ajc::to_double(best);
        CHECK(ev >= bv - (ajc::kAbsTolerance +
                          ajc::kRelTolerance * std::max(std::fabs(ev), std::fabs(bv))));
      }
    }
  }
}

TEST_CASE("unbounded regularization yields a report with no estimates") {
  const BoundReport report = ajc::build_report(R("1/3"), Value(Rational(1)),
                                               ErrorFunction::power(Rational(-1), Rational(1)));
  CHECK(report.unbounded);
  CHECK(report.estimates.empty());
  CHECK(report.best == -1);
  CHECK(report.best_estimate() == nullptr);
}

TEST_CASE("table-kind phi taints certification but intro stays certified") {
  std::vector<ErrorFunction::TablePoint> pts{{Rational(0), 0.0}, {Rational(4), 4.0}};
  const ErrorFunction table = ErrorFunction::table(pts);
  const BoundReport report = ajc::build_report(R("1/3"), Value(0.5), table);
  const auto* takagi = find_rule(report, BoundRule::TakagiClosedForm);
  REQUIRE(takagi);
  CHECK_FALSE(takagi->certified);
  const auto* intro = find_rule(report, BoundRule::IntroSpecialCase);
  REQUIRE(intro);
  CHECK(intro->certified);
  REQUIRE(report.best >= 0);
  CHECK(report.best_estimate()->rule == BoundRule::IntroSpecialCase);
}

TEST_CASE("strong convexity: negative quadratic bounds are negative") {
  const auto reg = ajc::regularize(ErrorFunction::quadratic(Rational(-1)));
  const Rational lambda = R("1/3");
  CHECK(exact(ajc::takagi_bound(lambda, Value(Rational(1)), reg)) == R("-2/9"));
}

TEST_CASE("report JSON is stable and schema-shaped") {
  const BoundReport report =
      ajc::build_report(R("1/3"), Value(Rational(1)), ErrorFunction::quadratic(Rational(1)));
  const std::string a = ajc::report_to_json_string(report);
  const std::string b = ajc::report_to_json_string(report);
  CHECK(a == b);
  CHECK(a.find("\"lambda\":\"1/3\"") != std::string::npos);
  CHECK(a.find("\"rule\":\"rational_nk\"") != std::string::npos);
  CHECK(a.find("\"best\":") != std::string::npos);
}
