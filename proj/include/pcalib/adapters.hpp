#pragma once

#include <optional>
#include <string>
#include <vector>

// Scenario-specific derivation of the information quantities (d, n_e, v,
// C) and design ratios b feeding the adaptive levels and calibrated Bayes
// factors: two proportions, two means, balanced ANOVA, the conditional
// binomial test, nested regression, and the harmonic-information design.

namespace pcalib {

struct TessQuantities {
  double d = 0;        // unit information
  double n_e = 0;      // effective sample size
  double v = 0;        // standardized effect, theta_hat^2 / [d (1 + n_e)]
  double C = 0;        // PBIC correction constant
  double b = 1;        // design determinant ratio for the linear forms
  bool degenerate_v = false;  // v = 0 handled by the analytic limit
};

/// log((1 - e^-v)/(sqrt(2) v)) with the v -> 0 limit -log(2)/2; evaluated
/// via expm1 for small v to avoid cancellation.
double pbic_log_term(double v);

struct TwoProportionData {
  int n1 = 1, n2 = 1;
  int s1 = 0, s2 = 0;   // successes
  // Variances default to p_i (1 - p_i) with a 1/(4 n_i) floor at the
  // degenerate p_i in {0, 1}; callers may override.
  std::optional<double> sigma1_sq, sigma2_sq;
  std::optional<double> p_hat_diff;  // defaults to s1/n1 - s2/n2

  double sigma1() const;
  double sigma2() const;
  double p_hat() const;
};

/// d = s1^2/n1 + s2^2/n2, n_e = max{n1^2/s1^2, n2^2/s2^2} d,
/// v = p_hat^2/[d(1+n_e)], C = -2 log((1-e^-v)/(sqrt(2) v)).
/// b is the two-group design ratio 4 n1 n2 / (n1 + n2).
TessQuantities tess_two_proportions(const TwoProportionData& data);

// The general effective-sample-size display uses a max; the printed
// equal-variance special case uses a min. Both are implemented; max_form
// is the default and reports should surface the conflict when the forms
// disagree.
enum class NeForm { max_form, min_form };

struct TwoMeansData {
  int n1 = 1, n2 = 1;
  double sigma1_sq = 1, sigma2_sq = 1;
  double beta_hat = 0;   // estimate of (mu1 - mu2)/2
  double t_stat = 0;
  bool equal_variance = false;
  NeForm ne_form = NeForm::max_form;
};

TessQuantities tess_two_means(const TwoMeansData& data);

/// Balanced one-way ANOVA Gram-determinant ratio r^{k-1}/k.
double anova_design_ratio(int k, int r);

/// Conditional pseudo p-value of the two-binomial equality test: the
/// hypergeometric upper tail sum_{j=s1}^{min(n1,s)} f(j|s) with
/// s = s1 + s2, accumulated in log space.
double fisher_pseudo_p(int s1, int s2, int n1, int n2);

struct NestedRegressionData {
  std::vector<double> y;
  std::vector<double> x2;  // predictor shared by both models
  std::vector<double> x3;  // predictor added by the alternative model
  std::string response_name = "y";
  std::string null_predictor = "x2";
  std::string added_predictor = "x3";
};

struct NestedRegressionQuantities {
  int n = 0;
  double b = 0;            // (n-1) s3^2 (1 - rho23^2)
  double s3_sq = 0;
  double rho23 = 0;
  double beta2_hat = 0;    // slope of the null model fit
  double beta3_hat = 0;    // added-predictor coefficient, alternative fit
  double sigma_sq = 0;     // residual variance used for d2, d3
  double d2 = 0, n_e2 = 0, v2 = 0;
  double d3 = 0, n_e3 = 0, v3 = 0;
  double C = 0;            // 2 L(v2) - 2 L(v3), L = pbic_log_term
  double f_stat = 0;       // nested F statistic, 1 and n-3 dof
  double f_pvalue = 1;
  double proj_max_abs_dot = 0;  // orthogonality residual of the projection
};

/// Quantities for comparing y ~ 1 + x2 against y ~ 1 + x2 + x3.
/// sigma_sq defaults to the alternative-model residual mean square.
/// Throws on collinearity (|rho23| = 1 makes b degenerate).
NestedRegressionQuantities regression_nested_quantities(
    const NestedRegressionData& data,
    std::optional<double> sigma_sq = std::nullopt);

struct FindleyQuantities {
  int n = 0;
  double h_n = 0;       // harmonic number, the accumulated information
  double d = 0;         // 1/h_n
  double n_e = 0;       // h_n
  double v = 0;
  double C = 0;
  double b = 0;         // Gram determinant of the 1/sqrt(i) regressor: h_n
};

FindleyQuantities findley_quantities(int n, double theta_hat);

}  // namespace pcalib
