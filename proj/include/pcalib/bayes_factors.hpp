#pragma once

#include <functional>

#include "pcalib/adaptive_alpha.hpp"

// Calibrated Bayes factors: the minimum-bound family evaluated at an
// adaptive significance level (BIC and nested-linear PBIC versions), plus
// the two exact Bayes factors used as comparators (two-sample t and
// beta-binomial). Values > 1 favor the null; no clamping. Products of
// powers are evaluated in log space.

namespace pcalib {

struct BfInputs {
  double alpha = 0.05;  // observed or nominal level, in (0,1)
  int q = 1;            // parameters tested
  double n = 0;         // sample size or effective sample size
  double xi0 = 1.0;     // pseudo-p-value shape, >= 1
  double C = 0.0;       // PBIC correction constant
  double b = 1.0;       // design determinant ratio (linear form)
  double j = 0;         // alternative-model parameter count (linear form)
  GOption g_option = GOption::chi2;
  std::function<double(const AdaptiveAlphaInputs&)> custom_g;
};

/// BIC-calibrated Bayes factor,
///   -alpha^xi0 ln(alpha) Gamma(q/2)^xi0 n^{xi0 q/2}
///     [2/(chi2_a(q) + q ln n + C)]^{xi0 q/2 - (xi0-1)}.
/// At xi0 = 1 this is the plain BIC-structured factor; there is one
/// implementation and no separate xi0 = 1 code path.
double bf_bic(const BfInputs& in);

/// Nested-linear PBIC-calibrated Bayes factor (xi0 fixed at 1),
///   -alpha ln(alpha) Gamma(q/2) b^{(n-j)/(2(n-1))}
///     [2(n-1)/((g + ln b + C)(n-j))]^{q/2}.
double bf_pbic_linear(const BfInputs& in);

/// Linear-form kernel on explicit effective degree-of-freedom terms.
double bf_pbic_core(double alpha, double g, double b, double C, int q,
                    double n_minus_j, double n_minus_1);

/// Balanced one-way ANOVA factor: q = k-1, b = r^{k-1}/k, effective terms
/// (r-1) and (r-1/k). The k = 2 case is evaluated through the same
/// general kernel. strict_linear as in adaptive_alpha_anova.
double bf_anova(int k, int r, double alpha, double C,
                GOption g_option = GOption::chi2,
                bool strict_linear = false);

struct TTestInputs {
  double t = 0;      // t statistic
  int n = 2;         // total sample size n1 + n2
  double tau0 = 1;   // prior precision ratio, > 0
};

/// Exact two-sample Bayes factor under a Normal(0, sigma^2/tau0) prior on
/// the mean difference:
///   sqrt((n+tau0)/tau0) [(t^2 tau0/(n+tau0) + l)/(t^2 + l)]^{(l+1)/2},
/// with l = n-1.
double bf_ttest(const TTestInputs& in);

struct FisherBfInputs {
  int s = 0;             // total successes s1 + s2
  int n1 = 1;
  int n2 = 1;
  double a = 1;          // Beta(a, b) prior on the common proportion
  double b_prior = 1;
  double p0 = 0.5;       // point null; must equal a/(a + b_prior)
};

/// Beta-binomial test Bayes factor
///   B(a, b)/B(s+a, n1+n2-s+b) p0^s (1-p0)^{n1+n2-s},  in log space.
double bf_fisher_exact(const FisherBfInputs& in);

}  // namespace pcalib
