#include "pcalib/adaptive_alpha.hpp"

#include <cmath>
#include <stdexcept>

#include "pcalib/numerics.hpp"

namespace pcalib {

namespace {

void check_common(const AdaptiveAlphaInputs& in) {
  if (!(in.alpha > 0.0 && in.alpha < 1.0))
    throw std::domain_error("adaptive_alpha: alpha inside (0,1)");
  if (in.q < 1) throw std::domain_error("adaptive_alpha: q >= 1");
  if (!(in.n > 0.0)) throw std::domain_error("adaptive_alpha: n > 0");
}

}  // namespace

double reference_quantile_g(const AdaptiveAlphaInputs& in) {
  switch (in.g_option) {
    case GOption::chi2:
      return chi2_quantile(in.alpha, in.q, Tail::upper);
    case GOption::f_deviance: {
      if (!(in.n > in.j))
        throw std::domain_error("reference_quantile_g: requires n > j");
      const double nmj = in.n - in.j;
      const double f = f_quantile(in.alpha, in.q, nmj, Tail::upper);
      return (in.n - 1.0) * std::log1p(in.q * f / nmj);
    }
    case GOption::custom:
      if (!in.custom_g)
        throw std::invalid_argument(
            "reference_quantile_g: custom option without a callable");
      return in.custom_g(in);
  }
  throw std::invalid_argument("reference_quantile_g: unknown option");
}

double adaptive_alpha_bic(const AdaptiveAlphaInputs& in) {
  check_common(in);
  if (!in.C_alpha || !(*in.C_alpha > 0.0))
    throw std::invalid_argument(
        "adaptive_alpha_bic: C_alpha must be supplied (it is never "
        "defaulted); without it use adaptive_alpha_pbic_adjusted");
  const double chi = chi2_quantile(in.alpha, in.q, Tail::upper);
  const double q = in.q;
  const double bracket = chi + q * std::log(in.n);
  if (!(bracket > 0.0))
    throw std::domain_error("adaptive_alpha_bic: degenerate bracket");
  const double log_val = (q / 2.0 - 1.0) * (std::log(bracket) - std::log(2.0)) -
                         (q / 2.0) * std::log(in.n) - log_gamma(q / 2.0);
  return std::exp(log_val) * *in.C_alpha;
}

double adaptive_alpha_pbic_adjusted(const AdaptiveAlphaInputs& in) {
  check_common(in);
  const double chi = chi2_quantile(in.alpha, in.q, Tail::upper);
  const double q = in.q;
  const double bracket = chi + q * std::log(in.n) + in.C;
  if (!(bracket > 0.0))
    throw std::domain_error("adaptive_alpha_pbic_adjusted: degenerate bracket");
  const double log_val = (q / 2.0 - 1.0) * (std::log(bracket) - std::log(2.0)) -
                         (q / 2.0) * std::log(in.n) - log_gamma(q / 2.0) -
                         0.5 * (chi + in.C);
  return std::exp(log_val);
}

double adaptive_alpha_pbic_core(double g, double b, double C, int q,
                                double n_minus_j, double n_minus_1) {
  if (!(b > 0.0)) throw std::domain_error("adaptive_alpha: design ratio b > 0");
  if (!(n_minus_j > 0.0))
    throw std::domain_error("adaptive_alpha: no residual degrees of freedom");
  const double bracket = g + std::log(b) + C;
  if (!(bracket > 0.0))
    throw std::domain_error("adaptive_alpha: degenerate bracket");
  const double w = n_minus_j / (2.0 * n_minus_1);
  const double qh = q / 2.0;
  const double log_val = (qh - 1.0) * std::log(bracket) - w * std::log(b) -
                         (qh - 1.0) * std::log(2.0 * n_minus_1 / n_minus_j) -
                         log_gamma(qh) - w * (g + C);
  return std::exp(log_val);
}

double adaptive_alpha_pbic_linear(const AdaptiveAlphaInputs& in) {
  check_common(in);
  if (!(in.j >= 1.0))
    throw std::domain_error("adaptive_alpha_pbic_linear: j >= 1");
  if (!(in.n > in.j))
    throw std::domain_error(
        "adaptive_alpha_pbic_linear: no residual degrees of freedom (n <= j)");
  const double g = reference_quantile_g(in);
  return adaptive_alpha_pbic_core(g, in.b, in.C, in.q, in.n - in.j,
                                  in.n - 1.0);
}

double adaptive_alpha_anova(int k, int r, double alpha, double C,
                            GOption g_option, bool strict_linear) {
  if (k < 2) throw std::domain_error("adaptive_alpha_anova: k >= 2");
  if (r < 2)
    throw std::domain_error(
        "adaptive_alpha_anova: r >= 2 (one replica leaves no degrees of "
        "freedom)");
  const int q = k - 1;
  const double b = std::pow(static_cast<double>(r), k - 1) / k;
  AdaptiveAlphaInputs gi;
  gi.alpha = alpha;
  gi.q = q;
  gi.g_option = g_option;
  if (strict_linear) {
    // plain nested-linear reading: n = k r observations, j = k means
    gi.n = static_cast<double>(k) * r;
    gi.j = k;
    const double g = reference_quantile_g(gi);
    return adaptive_alpha_pbic_core(g, b, C, q, gi.n - gi.j, gi.n - 1.0);
  }
  // as printed: r is the effective sample size and the degree-of-freedom
  // terms are (r-1) and (r-1/k)
  gi.n = r;
  gi.j = 1;
  const double g = reference_quantile_g(gi);
  return adaptive_alpha_pbic_core(g, b, C, q, r - 1.0, r - 1.0 / k);
}

}  // namespace pcalib
