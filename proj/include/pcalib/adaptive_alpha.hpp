#pragma once

#include <functional>
#include <optional>

// Sample-size-adaptive significance levels. The BIC form scales a
// caller-supplied constant; the PBIC-adjusted form replaces that constant
// with an information correction C derived from the scenario (see
// adapters); the linear form further replaces the raw sample size with a
// design-determinant ratio b and effective degrees of freedom.

namespace pcalib {

// The reference-statistic quantile g entering the linear forms is not
// uniquely pinned down; two interpretations are built in and callers may
// inject their own.
//   chi2       : upper-alpha chi-square critical value with q dof (default)
//   f_deviance : (n-1) ln(1 + q F_alpha(q, n-j)/(n-j)), a deviance-based
//                candidate
enum class GOption { chi2, f_deviance, custom };

struct AdaptiveAlphaInputs {
  double alpha = 0.05;  // nominal level, in (0,1)
  int q = 1;            // number of parameters tested, >= 1
  double n = 0;         // sample size or effective sample size
  double C = 0.0;       // PBIC correction constant
  std::optional<double> C_alpha;  // BIC-form constant; never defaulted
  double j = 0;         // alternative-model parameter count (linear form)
  double b = 1.0;       // design determinant ratio, > 0
  GOption g_option = GOption::chi2;
  std::function<double(const AdaptiveAlphaInputs&)> custom_g;
};

/// g_{n,alpha}(q) under the selected interpretation.
double reference_quantile_g(const AdaptiveAlphaInputs& in);

/// BIC-structured adaptive level:
///   [chi2_a(q) + q ln n]^{q/2-1} / (2^{q/2-1} n^{q/2} Gamma(q/2)) * C_alpha.
/// Throws std::invalid_argument when C_alpha is missing (use
/// adaptive_alpha_pbic_adjusted instead of guessing a constant).
double adaptive_alpha_bic(const AdaptiveAlphaInputs& in);

/// PBIC-adjusted level:
///   [chi2_a(q) + q ln n + C]^{q/2-1} / (n^{q/2} 2^{q/2-1} Gamma(q/2))
///     * exp{-(chi2_a(q) + C)/2}.
double adaptive_alpha_pbic_adjusted(const AdaptiveAlphaInputs& in);

/// Nested-linear-model level:
///   [g + ln b + C]^{q/2-1}
///     / (b^{(n-j)/(2(n-1))} (2(n-1)/(n-j))^{q/2-1} Gamma(q/2))
///     * exp{-(n-j)/(2(n-1)) (g + C)}.
double adaptive_alpha_pbic_linear(const AdaptiveAlphaInputs& in);

/// The shared linear-form kernel, parameterized on the two effective
/// degree-of-freedom terms so the balanced-ANOVA substitution can be
/// expressed exactly.
double adaptive_alpha_pbic_core(double g, double b, double C, int q,
                                double n_minus_j, double n_minus_1);

/// Balanced one-way ANOVA with k groups of r replicas: q = k-1,
/// b = r^{k-1}/k, effective terms (r-1) and (r-1/k), and the number of
/// replicas r acting as the effective sample size. strict_linear = true
/// instead treats the problem as a plain nested linear model with
/// n = k r and j = k (sensitivity mode).
double adaptive_alpha_anova(int k, int r, double alpha, double C,
                            GOption g_option = GOption::chi2,
                            bool strict_linear = false);

}  // namespace pcalib
