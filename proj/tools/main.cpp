#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ajc/bounds.hpp"
#include "ajc/checker.hpp"
#include "ajc/dyadic.hpp"
#include "ajc/errfun.hpp"
#include "ajc/numtheory.hpp"
#include "ajc/takagi.hpp"

namespace {

using ajc::Rational;
using json = nlohmann::ordered_json;

// exit codes: 0 ok, 1 mathematical violation, 2 usage error, 3 unbounded phi*
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnbounded = 3;

json orbit_to_json(const ajc::DyadicOrbit& orb) {
  json out;
  out["lambda"] = orb.lambda.str();
  out["preperiod"] = json::array();
  for (const Rational& v : orb.preperiod) out["preperiod"].push_back(v.str());
  out["cycle"] = json::array();
  for (const Rational& v : orb.cycle) out["cycle"].push_back(v.str());
  out["minimal_period"] = orb.minimal_period;
  out["ell"] = orb.reduced && orb.reduced->n >= 3 ? orb.reduced->ell() : 0;
  out["cross_check"] = "ok";  // orbit() throws when the two paths disagree
  return out;
}

void print_rational_list(std::ostream& os, const std::vector<Rational>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << values[i].str();
  }
  os << ']';
}

int cmd_dz(const std::string& x_text, std::uint64_t k, const std::string& output) {
  const Rational x = Rational::parse(x_text);
  const Rational value = ajc::dz_iterate(x, k);
  if (output == "json") {
    json out;
    out["x"] = x.str();
    out["k"] = k;
    out["dz"] = value.str();
    std::cout << out.dump() << '\n';
  } else {
    std::cout << value.str() << '\n';
  }
  return kExitOk;
}

int cmd_orbit(const std::optional<std::string>& lambda_text, std::optional<std::int64_t> n,
              std::optional<std::int64_t> m, const std::string& output) {
  if (lambda_text) {
    const ajc::DyadicOrbit orb = ajc::orbit(Rational::parse(*lambda_text));
    const json out = orbit_to_json(orb);
    if (output == "json") {
      std::cout << out.dump() << '\n';
    } else {
      std::cout << "lambda         = " << orb.lambda.str() << '\n';
      std::cout << "preperiod      = ";
      print_rational_list(std::cout, orb.preperiod);
      std::cout << '\n' << "cycle          = ";
      print_rational_list(std::cout, orb.cycle);
      std::cout << '\n';
      std::cout << "minimal_period = " << orb.minimal_period << '\n';
      std::cout << "ell            = " << out["ell"].get<std::int64_t>() << '\n';
      std::cout << "cross_check    = ok\n";
    }
    return kExitOk;
  }
  if (!n || !m) throw std::invalid_argument("orbit: need --lambda or both --n and --m");
  const ajc::MuOrbit orb = ajc::mu_orbit(*n, *m);
  // Doubling-map cross-check at lambda = m/n.
  ajc::orbit(Rational(ajc::BigInt(*m), ajc::BigInt(*n)));
  if (output == "json") {
    json out;
    out["n"] = orb.n;
    out["m"] = orb.start;
    out["states"] = orb.states;
    out["period"] = orb.period;
    out["ell"] = ajc::half_totient(orb.n);
    out["cross_check"] = "ok";
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "states         = [";
    for (std::size_t i = 0; i < orb.states.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << orb.states[i];
    }
    std::cout << "]\n";
    std::cout << "period         = " << orb.period << '\n';
    std::cout << "ell            = " << ajc::half_totient(orb.n) << '\n';
    std::cout << "cross_check    = ok\n";
  }
  return kExitOk;
}

int cmd_closed_form(const std::string& lambda_text, bool keep_zero_scales,
                    const std::string& output) {
  const Rational lambda = Rational::parse(lambda_text);
  const ajc::TakagiClosedForm form = ajc::closed_form(lambda, keep_zero_scales);
  if (output == "text") {
    for (const ajc::ClosedFormTerm& t : form.terms) {
      std::cout << t.weight.str() << " * phi*(" << t.scale.str() << " u)\n";
    }
    return kExitOk;
  }
  json out = json::array();
  for (const ajc::ClosedFormTerm& t : form.terms) {
    out.push_back(json::array({t.weight.str(), t.scale.str()}));
  }
  std::cout << out.dump() << '\n';
  return kExitOk;
}

int cmd_bound(const std::string& lambda_text, const std::string& u_text,
              const std::string& phi_spec) {
  const Rational lambda = Rational::parse(lambda_text);
  const ajc::ErrorFunction phi = ajc::ErrorFunction::parse(phi_spec);
  const ajc::Value u = phi.has_exact_eval() ? ajc::Value(Rational::parse(u_text))
                                            : ajc::Value(std::stod(u_text));
  const ajc::BoundReport report = ajc::build_report(lambda, u, phi);
  std::cout << ajc::report_to_json_string(report, 2) << '\n';
  return report.unbounded ? kExitUnbounded : kExitOk;
}

int cmd_identity(int denominator_max) {
  if (denominator_max < 2) throw std::invalid_argument("identity: --denominator-max must be >= 2");
  const ajc::PsiFunction square = ajc::PsiFunction::power(Rational(1), 2);
  std::uint64_t checked = 0;
  for (const Rational& lambda : ajc::enumerate_reduced(denominator_max)) {
    if (lambda.is_zero() || lambda == Rational(1)) continue;
    const Rational lhs = ajc::eval_closed(ajc::closed_form(lambda), square);
    const Rational rhs = lambda * (Rational(1) - lambda);
    if (lhs != rhs) {
      std::cout << "FAIL at lambda = " << lambda.str() << ": " << lhs.str()
                << " != " << rhs.str() << '\n';
      return kExitViolation;
    }
    ++checked;
  }
  std::cout << "all " << checked << " reduced fractions pass\n";
  return kExitOk;
}

int cmd_fixed_point(const std::string& psi_spec, unsigned grid_exp, unsigned iters) {
  const ajc::PsiFunction psi = ajc::PsiFunction::parse(psi_spec);
  const ajc::GridFunction f = ajc::fixed_point_solve(psi, grid_exp, iters);
  const double residual = ajc::functional_equation_residual(f, psi);
  std::cout << "lambda,value\n";
  std::cout.precision(17);
  const double step = 1.0 / static_cast<double>(std::size_t{1} << grid_exp);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::cout << static_cast<double>(i) * step << ',' << f.values[i] << '\n';
  }
  std::cout << "residual," << residual << '\n';
  return kExitOk;
}

int cmd_check(const std::string& f_spec, const std::string& phi_spec,
              const std::string& domain_text, int grid, int lambda_den_max, int pairs,
              const std::optional<std::string>& gap_x, const std::optional<std::string>& gap_y,
              std::uint64_t seed, const std::string& output) {
  const auto comma = domain_text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("check: --domain needs 'lo,hi'");
  const Rational lo = Rational::parse(std::string_view(domain_text).substr(0, comma));
  const Rational hi = Rational::parse(std::string_view(domain_text).substr(comma + 1));
  const ajc::TestFunction f = ajc::TestFunction::parse(f_spec, lo, hi);
  const ajc::ErrorFunction phi = ajc::ErrorFunction::parse(phi_spec);

  if (gap_x.has_value() != gap_y.has_value())
    throw std::invalid_argument("check: --gap-x and --gap-y go together");
  if (gap_x) {
    const auto rows = ajc::gap_profile(f, phi, Rational::parse(*gap_x),
                                       Rational::parse(*gap_y), lambda_den_max);
    std::cout << ajc::gap_profile_to_csv(rows);
    return kExitOk;  // gap_profile throws on any gap > bound row
  }

  std::vector<ajc::ViolationCertificate> certs = ajc::verify_midconvex(f, phi, grid);
  for (const Rational& lambda : ajc::enumerate_reduced(lambda_den_max)) {
    if (lambda.is_zero() || lambda == Rational(1)) continue;
    auto more = ajc::verify_lambda_bound(f, phi, lambda, pairs, seed);
    certs.insert(certs.end(), more.begin(), more.end());
  }
  if (output == "text") {
    std::cout << (certs.empty() ? "certified on grid: no violations\n"
                                : "violations found: " + std::to_string(certs.size()) + "\n");
  } else {
    std::cout << ajc::certificates_to_csv(certs);
  }
  return certs.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Takagi-type error estimates for approximately midpoint convex functions"};
  app.require_subcommand(1);
  std::string output = "default";
  std::uint64_t seed = 20250808;
  app.add_option("--output", output, "Output format: json|csv|text")
      ->check(CLI::IsMember({"default", "json", "csv", "text"}));
  app.add_option("--seed", seed, "Seed for randomized sweeps");

  auto* dz_cmd = app.add_subcommand("dz", "Exact distance to the nearest integer of 2^k x")->fallthrough();
  std::string dz_x;
  std::uint64_t dz_k = 0;
  dz_cmd->add_option("--x", dz_x, "Point x as a rational 'm/q'")->required();
  dz_cmd->add_option("--k", dz_k, "Doubling exponent (default 0)");

  auto* orbit_cmd = app.add_subcommand("orbit", "Dyadic orbit of lambda, or the mu_n orbit of m")->fallthrough();
  std::optional<std::string> orbit_lambda;
  std::optional<std::int64_t> orbit_n, orbit_m;
  orbit_cmd->add_option("--lambda", orbit_lambda, "Rational lambda in [0,1]");
  orbit_cmd->add_option("--n", orbit_n, "Odd modulus n >= 3");
  orbit_cmd->add_option("--m", orbit_m, "Element of M_n");

  auto* cf_cmd = app.add_subcommand("closed-form", "Finite evaluation weights and scales")->fallthrough();
  std::string cf_lambda;
  bool cf_keep_zero = false;
  cf_cmd->add_option("--lambda", cf_lambda, "Rational lambda in [0,1]")->required();
  cf_cmd->add_flag("--keep-zero-scales", cf_keep_zero, "Keep terms with scale 0");

  auto* bound_cmd = app.add_subcommand("bound", "Upper-estimate report for (lambda, u, phi)")->fallthrough();
  std::string bound_lambda, bound_u, bound_phi;
  bound_cmd->add_option("--lambda", bound_lambda, "Rational lambda in [0,1]")->required();
  bound_cmd->add_option("--u", bound_u, "Displacement u (rational)")->required();
  bound_cmd->add_option("--phi", bound_phi, "Error function: pow:c,p | quad:c | zero | table:path")
      ->required();

  auto* id_cmd = app.add_subcommand("identity", "Exact square-sum identity sweep")->fallthrough();
  int id_den_max = 0;
  id_cmd->add_option("--denominator-max", id_den_max, "Largest denominator to sweep")->required();

  auto* fp_cmd = app.add_subcommand("fixed-point", "Banach iteration for the functional equation")->fallthrough();
  std::string fp_psi;
  unsigned fp_grid = 10, fp_iters = 40;
  fp_cmd->add_option("--psi", fp_psi, "Summand: pow:c,p | zero")->required();
  fp_cmd->add_option("--grid-exp", fp_grid, "Dyadic grid exponent N (grid 2^N + 1 points)");
  fp_cmd->add_option("--iters", fp_iters, "Iteration count");

  auto* check_cmd = app.add_subcommand("check", "Certify midconvexity and the lambda bounds")->fallthrough();
  std::string check_f, check_phi, check_domain;
  int check_grid = 20, check_den_max = 6, check_pairs = 20;
  std::optional<std::string> check_gap_x, check_gap_y;
  check_cmd->add_option("--f", check_f, "Test function: quad:a,b,c | negquad:a | poly:... | abs | table:path")
      ->required();
  check_cmd->add_option("--phi", check_phi, "Error function spec")->required();
  check_cmd->add_option("--domain", check_domain, "Domain 'lo,hi' (rationals)")->required();
  check_cmd->add_option("--grid", check_grid, "Midconvexity grid point count");
  check_cmd->add_option("--lambda-den-max", check_den_max, "Sweep lambdas up to this denominator");
  check_cmd->add_option("--pairs", check_pairs, "Sampled pairs per lambda");
  check_cmd->add_option("--gap-x", check_gap_x, "Gap profile mode: endpoint x");
  check_cmd->add_option("--gap-y", check_gap_y, "Gap profile mode: endpoint y");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(dz_cmd))
      return cmd_dz(dz_x, dz_k, output == "default" ? "text" : output);
    if (app.got_subcommand(orbit_cmd))
      return cmd_orbit(orbit_lambda, orbit_n, orbit_m, output == "default" ? "text" : output);
    if (app.got_subcommand(cf_cmd))
      return cmd_closed_form(cf_lambda, cf_keep_zero, output == "default" ? "json" : output);
    if (app.got_subcommand(bound_cmd)) return cmd_bound(bound_lambda, bound_u, bound_phi);
    if (app.got_subcommand(id_cmd)) return cmd_identity(id_den_max);
    if (app.got_subcommand(fp_cmd)) return cmd_fixed_point(fp_psi, fp_grid, fp_iters);
    if (app.got_subcommand(check_cmd))
      return cmd_check(check_f, check_phi, check_domain, check_grid, check_den_max, check_pairs,
                       check_gap_x, check_gap_y, seed, output == "default" ? "csv" : output);
  } catch (const ajc::UnboundedRegularization& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnbounded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // internal assertions: a failure here falsifies a proved identity
    std::cerr << "violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
