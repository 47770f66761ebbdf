#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "ajc/bounds.hpp"
#include "ajc/checker.hpp"
#include "ajc/dyadic.hpp"
#include "ajc/errfun.hpp"
#include "ajc/numtheory.hpp"
#include "ajc/takagi.hpp"

namespace py = pybind11;

namespace {

ajc::Rational rat(const std::string& text) { return ajc::Rational::parse(text); }

py::object value_to_py(const ajc::Value& v) {
  if (ajc::is_exact(v)) return py::str(std::get<ajc::Rational>(v).str());
  return py::float_(std::get<double>(v));
}

ajc::Value exact_or_float(const std::string& u, const ajc::ErrorFunction& phi) {
  if (phi.has_exact_eval()) return ajc::Value(rat(u));
  return ajc::Value(std::stod(u));
}

py::dict orbit_to_dict(const ajc::DyadicOrbit& orb) {
  py::dict out;
  out["lambda"] = orb.lambda.str();
  py::list pre, cyc;
  for (const auto& v : orb.preperiod) pre.append(v.str());
  for (const auto& v : orb.cycle) cyc.append(v.str());
  out["preperiod"] = pre;
  out["cycle"] = cyc;
  out["minimal_period"] = orb.minimal_period;
  out["ell"] = orb.reduced && orb.reduced->n >= 3 ? orb.reduced->ell() : 0;
  return out;
}

}  // namespace

PYBIND11_MODULE(_ajc, m) {
  m.doc() = "Exact Takagi-type error estimates for approximately midpoint convex functions";

  // number theory
  m.def("gcd", [](std::int64_t a, std::int64_t b) {
    return ajc::gcd(ajc::BigInt(a), ajc::BigInt(b)).convert_to<std::int64_t>();
  });
  m.def("totient", &ajc::totient);
  m.def("half_totient", &ajc::half_totient);
  m.def("residue_set", &ajc::residue_set);
  m.def("mu", &ajc::mu);
  m.def("mu_orbit", [](std::int64_t n, std::int64_t mm) {
    const ajc::MuOrbit orb = ajc::mu_orbit(n, mm);
    py::dict out;
    out["n"] = orb.n;
    out["start"] = orb.start;
    out["states"] = orb.states;
    out["period"] = orb.period;
    return out;
  });
  m.def("euler_sharpened_check", [](std::int64_t n, std::int64_t a) {
    return ajc::euler_sharpened_check(n, a) == ajc::EulerDivisibility::DividesMinus
               ? "divides_minus"
               : "divides_plus";
  });
  m.def("reduce_lambda", [](const std::string& lambda) {
    const ajc::ReducedLambda r = ajc::reduce_lambda(rat(lambda));
    py::dict out;
    out["m"] = r.m.str();
    out["j"] = r.j;
    out["n"] = r.n.str();
    out["value"] = r.value.str();
    out["canonical"] = r.canonical;
    return out;
  });

  // dyadic orbit
  m.def("dz", [](const std::string& x) { return ajc::dz(rat(x)).str(); });
  m.def("dz_float", [](double x) { return ajc::dz(x); });
  m.def("dz_iterate",
        [](const std::string& x, std::uint64_t k) { return ajc::dz_iterate(rat(x), k).str(); });
  m.def("orbit", [](const std::string& lambda) { return orbit_to_dict(ajc::orbit(rat(lambda))); });

  // finite evaluation
  m.def("closed_form", [](const std::string& lambda) {
    const ajc::TakagiClosedForm form = ajc::closed_form(rat(lambda));
    py::list out;
    for (const auto& t : form.terms) out.append(py::make_tuple(t.weight.str(), t.scale.str()));
    return out;
  });
  m.def("eval_closed", [](const std::string& lambda, const std::string& psi_spec) {
    return ajc::eval_closed(ajc::closed_form(rat(lambda)), ajc::PsiFunction::parse(psi_spec)).str();
  });
  m.def("denominator_order",
        [](const std::string& lambda) { return ajc::denominator_order(rat(lambda)).str(); });
  m.def(
      "truncated_series",
      [](double lambda, const std::string& psi_spec, unsigned terms,
         std::optional<std::int64_t> q) {
        const auto ts = ajc::truncated_series(
            lambda, ajc::PsiFunction::parse(psi_spec), terms,
            q ? std::optional<ajc::BigInt>(ajc::BigInt(*q)) : std::nullopt);
        return py::make_tuple(ts.value, ts.tail_bound);
      },
      py::arg("lambda"), py::arg("psi"), py::arg("terms"), py::arg("q") = py::none());
  m.def("fixed_point_solve",
        [](const std::string& psi_spec, unsigned grid_exp, unsigned iters) {
          const ajc::PsiFunction psi = ajc::PsiFunction::parse(psi_spec);
          const ajc::GridFunction f = ajc::fixed_point_solve(psi, grid_exp, iters);
          py::dict out;
          out["grid_exponent"] = f.grid_exponent;
          out["values"] = f.values;
          out["residual"] = ajc::functional_equation_residual(f, psi);
          return out;
        });

  // error functions
  m.def("eval_phi", [](const std::string& phi, double u) {
    return ajc::ErrorFunction::parse(phi).eval(u);
  });
  m.def("eval_phi_star", [](const std::string& phi, double u) {
    return ajc::regularize(ajc::ErrorFunction::parse(phi)).eval(u);
  });
  m.def("regularize_info", [](const std::string& phi) {
    const auto reg = ajc::regularize(ajc::ErrorFunction::parse(phi));
    py::dict out;
    out["mode"] = reg.mode() == ajc::RegularizedErrorFunction::Mode::AnalyticExact
                      ? "analytic_exact"
                      : "bounded_search";
    out["certified"] = reg.certified();
    if (reg.mode() == ajc::RegularizedErrorFunction::Mode::AnalyticExact)
      out["resolved"] = reg.resolved().spec_string();
    return out;
  });

  // bound engine
  m.def("rational_nk_bound",
        [](std::int64_t n, std::int64_t k, const std::string& u, const std::string& phi_spec) {
          const auto phi = ajc::ErrorFunction::parse(phi_spec);
          return value_to_py(ajc::rational_nk_bound(ajc::BigInt(n), ajc::BigInt(k),
                                                    exact_or_float(u, phi),
                                                    ajc::regularize(phi)));
        });
  m.def("takagi_bound", [](const std::string& lambda, const std::string& u,
                           const std::string& phi_spec) {
    const auto phi = ajc::ErrorFunction::parse(phi_spec);
    return value_to_py(ajc::takagi_bound(rat(lambda), exact_or_float(u, phi),
                                         ajc::regularize(phi)));
  });
  m.def("composition_bound", [](const std::string& lambda, const std::string& mu,
                                const std::string& u, const std::string& phi_spec) {
    const auto phi = ajc::ErrorFunction::parse(phi_spec);
    return value_to_py(ajc::composition_bound(rat(lambda), rat(mu), exact_or_float(u, phi),
                                              ajc::regularize(phi)));
  });
  m.def("intro_special_case",
        [](const std::string& lambda, const std::string& u,
           const std::string& phi_spec) -> py::object {
          const auto phi = ajc::ErrorFunction::parse(phi_spec);
          const auto v = ajc::intro_special_case(rat(lambda), exact_or_float(u, phi), phi);
          if (!v) return py::none();
          return value_to_py(*v);
        });
  m.def("sharpness_check", [](std::int64_t n, std::int64_t mm, const std::string& u,
                              const std::string& phi_spec) {
    const auto phi = ajc::ErrorFunction::parse(phi_spec);
    return ajc::sharpness_check(ajc::BigInt(n), ajc::BigInt(mm), exact_or_float(u, phi),
                                ajc::regularize(phi));
  });
  m.def("build_report_json", [](const std::string& lambda, const std::string& u,
                                const std::string& phi_spec) {
    const auto phi = ajc::ErrorFunction::parse(phi_spec);
    return ajc::report_to_json_string(ajc::build_report(rat(lambda), exact_or_float(u, phi), phi));
  });

  // checker
  m.def("verify_midconvex_csv",
        [](const std::string& f, const std::string& phi, const std::string& lo,
           const std::string& hi, int grid) {
          const auto fn = ajc::TestFunction::parse(f, rat(lo), rat(hi));
          return ajc::certificates_to_csv(
              ajc::verify_midconvex(fn, ajc::ErrorFunction::parse(phi), grid));
        });
  m.def(
      "verify_lambda_bound_csv",
      [](const std::string& f, const std::string& phi, const std::string& lo,
         const std::string& hi, const std::string& lambda, int pairs, std::uint64_t seed) {
        const auto fn = ajc::TestFunction::parse(f, rat(lo), rat(hi));
        return ajc::certificates_to_csv(ajc::verify_lambda_bound(
            fn, ajc::ErrorFunction::parse(phi), rat(lambda), pairs, seed));
      },
      py::arg("f"), py::arg("phi"), py::arg("lo"), py::arg("hi"), py::arg("lambda"),
      py::arg("pairs") = 20, py::arg("seed") = 20250808);
  m.def("gap_profile_csv",
        [](const std::string& f, const std::string& phi, const std::string& lo,
           const std::string& hi, const std::string& x, const std::string& y, int den_max) {
          const auto fn = ajc::TestFunction::parse(f, rat(lo), rat(hi));
          return ajc::gap_profile_to_csv(
              ajc::gap_profile(fn, ajc::ErrorFunction::parse(phi), rat(x), rat(y), den_max));
        });

  py::register_exception<ajc::UnboundedRegularization>(m, "UnboundedRegularizationError");
}
