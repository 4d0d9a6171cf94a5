#include "pcalib/adapters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcalib/numerics.hpp"

namespace pcalib {

namespace {

double log_choose(int n, int k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

TessQuantities finish_tess(double d, double n_e, double theta_hat, double b) {
  TessQuantities out;
  out.d = d;
  out.n_e = n_e;
  out.v = theta_hat * theta_hat / (d * (1.0 + n_e));
  out.degenerate_v = out.v == 0.0;
  out.C = -2.0 * pbic_log_term(out.v);
  out.b = b;
  return out;
}

}  // namespace

double pbic_log_term(double v) {
  if (v < 0.0) throw std::domain_error("pbic_log_term: v >= 0");
  if (v == 0.0) return -0.5 * std::log(2.0);  // analytic limit
  // (1 - e^-v)/v via expm1 so small v does not cancel
  return std::log(-std::expm1(-v) / v) - 0.5 * std::log(2.0);
}

double TwoProportionData::sigma1() const {
  if (sigma1_sq) return *sigma1_sq;
  const double p = static_cast<double>(s1) / n1;
  const double var = p * (1.0 - p);
  return var > 0.0 ? var : 1.0 / (4.0 * n1);  // continuity floor at p in {0,1}
}

double TwoProportionData::sigma2() const {
  if (sigma2_sq) return *sigma2_sq;
  const double p = static_cast<double>(s2) / n2;
  const double var = p * (1.0 - p);
  return var > 0.0 ? var : 1.0 / (4.0 * n2);
}

double TwoProportionData::p_hat() const {
  if (p_hat_diff) return *p_hat_diff;
  return static_cast<double>(s1) / n1 - static_cast<double>(s2) / n2;
}

TessQuantities tess_two_proportions(const TwoProportionData& data) {
  if (data.n1 < 1 || data.n2 < 1)
    throw std::domain_error("tess_two_proportions: n1, n2 >= 1");
  if (data.s1 < 0 || data.s1 > data.n1 || data.s2 < 0 || data.s2 > data.n2)
    throw std::domain_error("tess_two_proportions: 0 <= s_i <= n_i");
  const double v1 = data.sigma1();
  const double v2 = data.sigma2();
  if (!(v1 > 0.0 && v2 > 0.0))
    throw std::domain_error("tess_two_proportions: variances > 0");
  const double d = v1 / data.n1 + v2 / data.n2;
  const double n_e =
      std::max(data.n1 * static_cast<double>(data.n1) / v1,
               data.n2 * static_cast<double>(data.n2) / v2) *
      d;
  const double b =
      4.0 * data.n1 * static_cast<double>(data.n2) / (data.n1 + data.n2);
  return finish_tess(d, n_e, data.p_hat(), b);
}

TessQuantities tess_two_means(const TwoMeansData& data) {
  if (data.n1 < 1 || data.n2 < 1)
    throw std::domain_error("tess_two_means: n1, n2 >= 1");
  if (!(data.sigma1_sq > 0.0 && data.sigma2_sq > 0.0))
    throw std::domain_error("tess_two_means: variances > 0");
  if (data.ne_form == NeForm::min_form && !data.equal_variance)
    throw std::invalid_argument(
        "tess_two_means: the min form is printed only for the equal-variance "
        "case");
  const double d = data.sigma1_sq / data.n1 + data.sigma2_sq / data.n2;
  double n_e;
  if (data.ne_form == NeForm::min_form) {
    const double r1 = static_cast<double>(data.n1) / data.n2;
    n_e = std::min(data.n1 * (1.0 + r1), data.n2 * (1.0 + 1.0 / r1));
  } else {
    n_e = std::max(data.n1 * static_cast<double>(data.n1) / data.sigma1_sq,
                   data.n2 * static_cast<double>(data.n2) / data.sigma2_sq) *
          d;
  }
  const double b =
      4.0 * data.n1 * static_cast<double>(data.n2) / (data.n1 + data.n2);
  return finish_tess(d, n_e, data.beta_hat, b);
}

double anova_design_ratio(int k, int r) {
  if (k < 1 || r < 1) throw std::domain_error("anova_design_ratio: k, r >= 1");
  return std::pow(static_cast<double>(r), k - 1) / k;
}

double fisher_pseudo_p(int s1, int s2, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::domain_error("fisher_pseudo_p: n1, n2 >= 1");
  if (s1 < 0 || s1 > n1 || s2 < 0 || s2 > n2)
    throw std::domain_error("fisher_pseudo_p: 0 <= s_i <= n_i");
  const int s = s1 + s2;
  const int hi = std::min(n1, s);
  const double log_den = log_choose(n1 + n2, s);
  // log-space tail accumulation, largest term factored out
  double max_log = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(hi - s1 + 1);
  for (int j = s1; j <= hi; ++j) {
    const double lp = log_choose(n1, j) + log_choose(n2, s - j) - log_den;
    logs.push_back(lp);
    max_log = std::max(max_log, lp);
  }
  double acc = 0;
  for (double lp : logs) acc += std::exp(lp - max_log);
  return std::min(1.0, std::exp(max_log) * acc);
}

NestedRegressionQuantities regression_nested_quantities(
    const NestedRegressionData& data, std::optional<double> sigma_sq) {
  const std::size_t n = data.y.size();
  if (data.x2.size() != n || data.x3.size() != n)
    throw std::invalid_argument(
        "regression_nested_quantities: column lengths differ");
  if (n < 4)
    throw std::domain_error(
        "regression_nested_quantities: need n > number of alternative-model "
        "parameters (n >= 4)");

  const double m2 = mean(data.x2);
  const double m3 = mean(data.x3);
  const double my = mean(data.y);

  double ss2 = 0, ss3 = 0, s23 = 0, ssy = 0, s2y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = data.x2[i] - m2;
    const double c = data.x3[i] - m3;
    const double w = data.y[i] - my;
    ss2 += a * a;
    ss3 += c * c;
    s23 += a * c;
    ssy += w * w;
    s2y += a * w;
  }
  if (!(ss2 > 0.0) || !(ss3 > 0.0))
    throw std::domain_error(
        "regression_nested_quantities: constant predictor column");

  NestedRegressionQuantities out;
  out.n = static_cast<int>(n);
  out.rho23 = s23 / std::sqrt(ss2 * ss3);
  if (!(std::fabs(out.rho23) < 1.0 - 1e-12))
    throw std::domain_error(
        "regression_nested_quantities: predictors are collinear (|rho23| = 1 "
        "degenerates the design ratio)");
  out.s3_sq = ss3 / (n - 1.0);
  out.b = (n - 1.0) * out.s3_sq * (1.0 - out.rho23 * out.rho23);

  // null model y ~ 1 + x2
  out.beta2_hat = s2y / ss2;
  const double rss_null = ssy - out.beta2_hat * out.beta2_hat * ss2;

  // residual of x3 on (1 | x2); spans the alternative model's new direction
  const double slope32 = s23 / ss2;
  double sst = 0, sty = 0, max_t2 = 0;
  double dot_ones = 0, dot_x2 = 0, norm2_x2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (data.x3[i] - m3) - slope32 * (data.x2[i] - m2);
    sst += t * t;
    sty += t * data.y[i];
    max_t2 = std::max(max_t2, t * t);
    dot_ones += t;
    dot_x2 += t * data.x2[i];
    norm2_x2 += data.x2[i] * data.x2[i];
  }
  out.beta3_hat = sty / sst;
  const double rss_alt = rss_null - out.beta3_hat * out.beta3_hat * sst;
  out.sigma_sq = sigma_sq ? *sigma_sq : rss_alt / (n - 3.0);
  if (!(out.sigma_sq > 0.0))
    throw std::domain_error("regression_nested_quantities: sigma_sq > 0");

  double max_c2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = data.x2[i] - m2;
    max_c2 = std::max(max_c2, a * a);
  }
  out.d2 = out.sigma_sq / ss2;
  out.n_e2 = ss2 / max_c2;
  out.v2 = out.beta2_hat * out.beta2_hat / (out.d2 * (1.0 + out.n_e2));
  out.d3 = out.sigma_sq / sst;
  out.n_e3 = sst / max_t2;
  out.v3 = out.beta3_hat * out.beta3_hat / (out.d3 * (1.0 + out.n_e3));
  out.C = 2.0 * pbic_log_term(out.v2) - 2.0 * pbic_log_term(out.v3);

  out.f_stat = (rss_null - rss_alt) / (rss_alt / (n - 3.0));
  out.f_pvalue = 1.0 - f_cdf(out.f_stat, 1.0, n - 3.0);

  const double tnorm = std::sqrt(sst);
  out.proj_max_abs_dot =
      std::max(std::fabs(dot_ones) / (tnorm * std::sqrt(double(n))),
               std::fabs(dot_x2) / (tnorm * std::sqrt(norm2_x2)));
  return out;
}

FindleyQuantities findley_quantities(int n, double theta_hat) {
  if (n < 1) throw std::domain_error("findley_quantities: n >= 1");
  long double h = 0.0L;
  for (int i = n; i >= 1; --i) h += 1.0L / i;  // ascending magnitudes
  FindleyQuantities out;
  out.n = n;
  out.h_n = static_cast<double>(h);
  out.d = 1.0 / out.h_n;
  out.n_e = out.h_n;
  out.v = theta_hat * theta_hat * out.h_n / (1.0 + out.h_n);
  out.C = -2.0 * pbic_log_term(out.v);
  out.b = out.h_n;
  return out;
}

}  // namespace pcalib
