#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcalib/adapters.hpp"
#include "pcalib/adaptive_alpha.hpp"
#include "pcalib/bayes_factors.hpp"
#include "pcalib/calibration.hpp"
#include "pcalib/harness.hpp"
#include "pcalib/numerics.hpp"

namespace py = pybind11;
using namespace pcalib;

namespace {

GOption g_from_name(const std::string& name) {
  if (name == "chi2") return GOption::chi2;
  if (name == "f_deviance") return GOption::f_deviance;
  throw std::domain_error("unknown g option: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-value calibration: minimum Bayes factor bounds, posterior "
            "probabilities of the null, adaptive significance levels, and "
            "the verification harness";

  // calibration
  m.def("rlb", &rlb, py::arg("p"),
        "minimum Bayes factor bound -e p ln p (1 for p >= 1/e)");
  m.def("rlb_xi", &rlb_xi, py::arg("p"), py::arg("xi0"),
        "pseudo-p-value bound -e xi0 p^xi0 ln p");
  m.def("rlb_complement", &rlb_complement, py::arg("p"));
  m.def("invert_rlb", &invert_rlb, py::arg("alpha"), py::arg("xi"));
  m.def("posterior_from_bf", &posterior_from_bf, py::arg("bf"),
        py::arg("pi0") = kDefaultPriorNull);

  // numerics
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("beta_function", &beta_function, py::arg("a"), py::arg("b"));
  m.def(
      "chi2_quantile",
      [](double alpha, double dof, const std::string& tail) {
        return chi2_quantile(alpha, dof,
                             tail == "lower" ? Tail::lower : Tail::upper);
      },
      py::arg("alpha"), py::arg("dof"), py::arg("tail") = "upper");
  m.def(
      "f_quantile",
      [](double alpha, double d1, double d2, const std::string& tail) {
        return f_quantile(alpha, d1, d2,
                          tail == "lower" ? Tail::lower : Tail::upper);
      },
      py::arg("alpha"), py::arg("d1"), py::arg("d2"),
      py::arg("tail") = "upper");

  // adaptive levels
  m.def(
      "adaptive_alpha_bic",
      [](double alpha, int q, double n, double c_alpha) {
        AdaptiveAlphaInputs in;
        in.alpha = alpha;
        in.q = q;
        in.n = n;
        in.C_alpha = c_alpha;
        return adaptive_alpha_bic(in);
      },
      py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("c_alpha"));
  m.def(
      "adaptive_alpha_pbic_adjusted",
      [](double alpha, int q, double n, double C) {
        AdaptiveAlphaInputs in;
        in.alpha = alpha;
        in.q = q;
        in.n = n;
        in.C = C;
        return adaptive_alpha_pbic_adjusted(in);
      },
      py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("C") = 0.0);
  m.def(
      "adaptive_alpha_pbic_linear",
      [](double alpha, int q, double n, double j, double b, double C,
         const std::string& g) {
        AdaptiveAlphaInputs in;
        in.alpha = alpha;
        in.q = q;
        in.n = n;
        in.j = j;
        in.b = b;
        in.C = C;
        in.g_option = g_from_name(g);
        return adaptive_alpha_pbic_linear(in);
      },
      py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("j"), py::arg("b"),
      py::arg("C") = 0.0, py::arg("g") = "chi2");
  m.def("adaptive_alpha_anova",
        [](int k, int r, double alpha, double C, const std::string& g,
           bool strict_linear) {
          return adaptive_alpha_anova(k, r, alpha, C, g_from_name(g),
                                      strict_linear);
        },
        py::arg("k"), py::arg("r"), py::arg("alpha"), py::arg("C") = 0.0,
        py::arg("g") = "chi2", py::arg("strict_linear") = false);

  // Bayes factors
  m.def(
      "bf_bic",
      [](double alpha, int q, double n, double xi0, double C) {
        BfInputs in;
        in.alpha = alpha;
        in.q = q;
        in.n = n;
        in.xi0 = xi0;
        in.C = C;
        return bf_bic(in);
      },
      py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("xi0") = 1.0,
      py::arg("C") = 0.0);
  m.def(
      "bf_pbic_linear",
      [](double alpha, int q, double n, double j, double b, double C,
         const std::string& g) {
        BfInputs in;
        in.alpha = alpha;
        in.q = q;
        in.n = n;
        in.j = j;
        in.b = b;
        in.C = C;
        in.g_option = g_from_name(g);
        return bf_pbic_linear(in);
      },
      py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("j"), py::arg("b"),
      py::arg("C") = 0.0, py::arg("g") = "chi2");
  m.def("bf_anova",
        [](int k, int r, double alpha, double C, const std::string& g,
           bool strict_linear) {
          return bf_anova(k, r, alpha, C, g_from_name(g), strict_linear);
        },
        py::arg("k"), py::arg("r"), py::arg("alpha"), py::arg("C") = 0.0,
        py::arg("g") = "chi2", py::arg("strict_linear") = false);
  m.def(
      "bf_ttest",
      [](double t, int n, double tau0) {
        TTestInputs in;
        in.t = t;
        in.n = n;
        in.tau0 = tau0;
        return bf_ttest(in);
      },
      py::arg("t"), py::arg("n"), py::arg("tau0"));
  m.def(
      "bf_fisher_exact",
      [](int s, int n1, int n2, double a, double b_prior) {
        FisherBfInputs in;
        in.s = s;
        in.n1 = n1;
        in.n2 = n2;
        in.a = a;
        in.b_prior = b_prior;
        in.p0 = a / (a + b_prior);
        return bf_fisher_exact(in);
      },
      py::arg("s"), py::arg("n1"), py::arg("n2"), py::arg("a") = 1.0,
      py::arg("b_prior") = 1.0);

  // adapters
  m.def("fisher_pseudo_p", &fisher_pseudo_p, py::arg("s1"), py::arg("s2"),
        py::arg("n1"), py::arg("n2"));
  m.def("anova_design_ratio", &anova_design_ratio, py::arg("k"), py::arg("r"));
  m.def(
      "tess_two_proportions",
      [](int n1, int n2, int s1, int s2, py::object sigma1_sq,
         py::object sigma2_sq, py::object p_hat) {
        TwoProportionData d;
        d.n1 = n1;
        d.n2 = n2;
        d.s1 = s1;
        d.s2 = s2;
        if (!sigma1_sq.is_none()) d.sigma1_sq = sigma1_sq.cast<double>();
        if (!sigma2_sq.is_none()) d.sigma2_sq = sigma2_sq.cast<double>();
        if (!p_hat.is_none()) d.p_hat_diff = p_hat.cast<double>();
        const TessQuantities t = tess_two_proportions(d);
        py::dict out;
        out["d"] = t.d;
        out["n_e"] = t.n_e;
        out["v"] = t.v;
        out["C"] = t.C;
        out["b"] = t.b;
        out["degenerate_v"] = t.degenerate_v;
        return out;
      },
      py::arg("n1"), py::arg("n2"), py::arg("s1") = 0, py::arg("s2") = 0,
      py::arg("sigma1_sq") = py::none(), py::arg("sigma2_sq") = py::none(),
      py::arg("p_hat") = py::none());
  m.def(
      "tess_two_means",
      [](int n1, int n2, double sigma1_sq, double sigma2_sq, double beta_hat,
         bool equal_variance, const std::string& ne_form) {
        TwoMeansData d;
        d.n1 = n1;
        d.n2 = n2;
        d.sigma1_sq = sigma1_sq;
        d.sigma2_sq = sigma2_sq;
        d.beta_hat = beta_hat;
        d.equal_variance = equal_variance;
        d.ne_form = ne_form == "min" ? NeForm::min_form : NeForm::max_form;
        const TessQuantities t = tess_two_means(d);
        py::dict out;
        out["d"] = t.d;
        out["n_e"] = t.n_e;
        out["v"] = t.v;
        out["C"] = t.C;
        out["b"] = t.b;
        return out;
      },
      py::arg("n1"), py::arg("n2"), py::arg("sigma1_sq"),
      py::arg("sigma2_sq"), py::arg("beta_hat") = 0.0,
      py::arg("equal_variance") = false, py::arg("ne_form") = "max");
  m.def(
      "regression_nested_quantities",
      [](const std::vector<double>& y, const std::vector<double>& x2,
         const std::vector<double>& x3, py::object sigma_sq) {
        NestedRegressionData d;
        d.y = y;
        d.x2 = x2;
        d.x3 = x3;
        std::optional<double> s;
        if (!sigma_sq.is_none()) s = sigma_sq.cast<double>();
        const NestedRegressionQuantities q = regression_nested_quantities(d, s);
        py::dict out;
        out["n"] = q.n;
        out["b"] = q.b;
        out["s3_sq"] = q.s3_sq;
        out["rho23"] = q.rho23;
        out["beta2_hat"] = q.beta2_hat;
        out["beta3_hat"] = q.beta3_hat;
        out["sigma_sq"] = q.sigma_sq;
        out["d2"] = q.d2;
        out["n_e2"] = q.n_e2;
        out["v2"] = q.v2;
        out["d3"] = q.d3;
        out["n_e3"] = q.n_e3;
        out["v3"] = q.v3;
        out["C"] = q.C;
        out["f_stat"] = q.f_stat;
        out["f_pvalue"] = q.f_pvalue;
        return out;
      },
      py::arg("y"), py::arg("x2"), py::arg("x3"),
      py::arg("sigma_sq") = py::none());
  m.def(
      "findley_quantities",
      [](int n, double theta_hat) {
        const FindleyQuantities f = findley_quantities(n, theta_hat);
        py::dict out;
        out["n"] = f.n;
        out["h_n"] = f.h_n;
        out["d"] = f.d;
        out["n_e"] = f.n_e;
        out["v"] = f.v;
        out["C"] = f.C;
        out["b"] = f.b;
        return out;
      },
      py::arg("n"), py::arg("theta_hat") = 0.0);

  // harness
  m.def(
      "estimate_xi0",
      [](const std::vector<double>& samples) {
        const XiEstimate e = estimate_xi0(samples);
        py::dict out;
        out["xi_hat"] = e.xi_hat;
        out["se"] = e.se;
        out["m"] = e.m;
        return out;
      },
      py::arg("samples"));
  m.def(
      "verify_rlb_validity",
      [](double xi, long samples, std::uint64_t seed,
         const std::vector<double>& alpha_grid) {
        SimulationPlan plan;
        plan.xi = xi;
        plan.samples = samples;
        plan.seed = seed;
        plan.alpha_grid = alpha_grid;
        const ValidationResult r = verify_rlb_validity(plan);
        py::dict out;
        out["pass"] = r.pass;
        out["worst_margin"] = r.worst_margin;
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict cj;
          cj["alpha"] = c.alpha;
          cj["empirical"] = c.empirical;
          cj["exact"] = c.exact;
          cj["se"] = c.se;
          cj["ok"] = c.bound_ok && c.exact_ok;
          checks.append(cj);
        }
        out["checks"] = checks;
        return out;
      },
      py::arg("xi"), py::arg("samples"), py::arg("seed"),
      py::arg("alpha_grid"));
  m.def(
      "verify_fisher_validity",
      [](int n1, int n2, const std::vector<double>& p_grid) {
        const ValidationResult r = verify_fisher_validity(n1, n2, p_grid);
        py::dict out;
        out["pass"] = r.pass;
        out["exact"] = r.exact;
        out["worst_margin"] = r.worst_margin;
        return out;
      },
      py::arg("n1"), py::arg("n2"), py::arg("p_grid"));

  m.attr("INV_E") = kInvE;
  m.attr("__version__") = "0.1.0";
}
