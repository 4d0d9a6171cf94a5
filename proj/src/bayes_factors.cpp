#include "pcalib/bayes_factors.hpp"

#include <cmath>
#include <stdexcept>

#include "pcalib/numerics.hpp"

namespace pcalib {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("bayes_factor: alpha inside (0,1)");
}

AdaptiveAlphaInputs g_inputs(const BfInputs& in) {
  AdaptiveAlphaInputs gi;
  gi.alpha = in.alpha;
  gi.q = in.q;
  gi.n = in.n;
  gi.j = in.j;
  gi.b = in.b;
  gi.C = in.C;
  gi.g_option = in.g_option;
  if (in.custom_g) {
    gi.custom_g = in.custom_g;
  }
  return gi;
}

}  // namespace

double bf_bic(const BfInputs& in) {
  check_alpha(in.alpha);
  if (in.q < 1) throw std::domain_error("bf_bic: q >= 1");
  if (!(in.n > 0.0)) throw std::domain_error("bf_bic: n > 0");
  if (!(in.xi0 >= 1.0)) throw std::domain_error("bf_bic: xi0 >= 1");
  const double chi = chi2_quantile(in.alpha, in.q, Tail::upper);
  const double q = in.q;
  const double bracket = chi + q * std::log(in.n) + in.C;
  if (!(bracket > 0.0)) throw std::domain_error("bf_bic: degenerate bracket");
  // bracket exponent xi0 q/2 - (xi0 - 1); may go negative for large xi0 at
  // q = 1, which is permitted
  const double expo = in.xi0 * q / 2.0 - (in.xi0 - 1.0);
  const double log_bf = in.xi0 * std::log(in.alpha) +
                        std::log(-std::log(in.alpha)) +
                        in.xi0 * log_gamma(q / 2.0) +
                        in.xi0 * q / 2.0 * std::log(in.n) +
                        expo * (std::log(2.0) - std::log(bracket));
  return std::exp(log_bf);
}

double bf_pbic_core(double alpha, double g, double b, double C, int q,
                    double n_minus_j, double n_minus_1) {
  check_alpha(alpha);
  if (!(b > 0.0)) throw std::domain_error("bf_pbic: design ratio b > 0");
  if (!(n_minus_j > 0.0))
    throw std::domain_error("bf_pbic: no residual degrees of freedom");
  const double bracket = g + std::log(b) + C;
  if (!(bracket > 0.0)) throw std::domain_error("bf_pbic: degenerate bracket");
  const double qh = q / 2.0;
  const double log_bf = std::log(alpha) + std::log(-std::log(alpha)) +
                        log_gamma(qh) +
                        n_minus_j / (2.0 * n_minus_1) * std::log(b) +
                        qh * (std::log(2.0 * n_minus_1) -
                              std::log(bracket * n_minus_j));
  return std::exp(log_bf);
}

double bf_pbic_linear(const BfInputs& in) {
  if (in.xi0 != 1.0)
    throw std::domain_error(
        "bf_pbic_linear: defined for xi0 = 1 only (the level here is not a "
        "pseudo p-value)");
  if (in.q < 1) throw std::domain_error("bf_pbic_linear: q >= 1");
  if (!(in.j >= 1.0)) throw std::domain_error("bf_pbic_linear: j >= 1");
  if (!(in.n > in.j))
    throw std::domain_error(
        "bf_pbic_linear: no residual degrees of freedom (n <= j)");
  const double g = reference_quantile_g(g_inputs(in));
  return bf_pbic_core(in.alpha, g, in.b, in.C, in.q, in.n - in.j, in.n - 1.0);
}

double bf_anova(int k, int r, double alpha, double C, GOption g_option,
                bool strict_linear) {
  if (k < 2) throw std::domain_error("bf_anova: k >= 2");
  if (r < 2) throw std::domain_error("bf_anova: r >= 2");
  const int q = k - 1;
  const double b = std::pow(static_cast<double>(r), k - 1) / k;
  AdaptiveAlphaInputs gi;
  gi.alpha = alpha;
  gi.q = q;
  gi.g_option = g_option;
  if (strict_linear) {
    gi.n = static_cast<double>(k) * r;
    gi.j = k;
    const double g = reference_quantile_g(gi);
    return bf_pbic_core(alpha, g, b, C, q, gi.n - gi.j, gi.n - 1.0);
  }
  gi.n = r;
  gi.j = 1;
  const double g = reference_quantile_g(gi);
  return bf_pbic_core(alpha, g, b, C, q, r - 1.0, r - 1.0 / k);
}

double bf_ttest(const TTestInputs& in) {
  if (in.n < 2) throw std::domain_error("bf_ttest: n >= 2");
  if (!(in.tau0 > 0.0)) throw std::domain_error("bf_ttest: tau0 > 0");
  const double l = in.n - 1.0;
  const double t2 = in.t * in.t;
  const double shrink = in.tau0 / (in.n + in.tau0);
  const double log_bf =
      0.5 * std::log((in.n + in.tau0) / in.tau0) +
      (l + 1.0) / 2.0 * (std::log(t2 * shrink + l) - std::log(t2 + l));
  return std::exp(log_bf);
}

double bf_fisher_exact(const FisherBfInputs& in) {
  if (in.n1 < 1 || in.n2 < 1)
    throw std::domain_error("bf_fisher_exact: n1, n2 >= 1");
  if (in.s < 0 || in.s > in.n1 + in.n2)
    throw std::domain_error("bf_fisher_exact: s in [0, n1+n2]");
  if (!(in.a > 0.0 && in.b_prior > 0.0))
    throw std::domain_error("bf_fisher_exact: prior parameters > 0");
  const int n = in.n1 + in.n2;
  const bool interior = in.s > 0 && in.s < n;
  if ((in.p0 == 0.0 || in.p0 == 1.0) && interior)
    throw std::domain_error(
        "bf_fisher_exact: degenerate likelihood (p0 on the boundary with "
        "interior s)");
  const double mean = in.a / (in.a + in.b_prior);
  if (std::fabs(mean - in.p0) > 1e-12)
    throw std::domain_error(
        "bf_fisher_exact: prior mean a/(a+b) must equal the null p0");
  const double log_bf = log_beta(in.a, in.b_prior) -
                        log_beta(in.s + in.a, n - in.s + in.b_prior) +
                        in.s * std::log(in.p0) +
                        (n - in.s) * std::log1p(-in.p0);
  return std::exp(log_bf);
}

}  // namespace pcalib
