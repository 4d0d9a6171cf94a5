#pragma once

// Minimum Bayes factor bounds for (pseudo) p-values and their
// transformation into posterior probabilities of the null hypothesis.
//
// A pseudo p-value is modeled as Beta(xi0, 1) under the null with
// xi0 >= 1; xi0 = 1 recovers an exact p-value and rlb_xi reduces to rlb.

namespace pcalib {

inline constexpr double kDefaultPriorNull = 0.5;

/// Robust Lower Bound: -e p ln p for p < 1/e, else 1.
/// p = 0 returns the limit value 0 (degenerate input; see degenerate_p).
double rlb(double p);

/// Pseudo-p-value generalization: -e xi0 p^xi0 ln p for p < 1/e, else 1.
/// Requires xi0 >= 1; equals rlb(p) at xi0 = 1.
double rlb_xi(double p, double xi0);

/// The complement calibration: rlb applied to q = 1 - p.
double rlb_complement(double p);

/// Unique rho in (0, 1/e] with -e xi rho^xi ln(rho) = alpha; residual
/// <= 1e-12. Accepts any xi > 0 (the alternative family allows xi < 1).
/// For xi >= 1 the map's maximum over (0, 1/e] is xi e^{1-xi}; larger
/// alpha saturates to 1/e, matching the sub-level-set reading.
double invert_rlb(double alpha, double xi);

/// [1 + (pi1/pi0) / bf]^{-1}; with pi0 = 0.5 this is the equal-odds
/// minimum posterior probability of the null.
double posterior_from_bf(double bf, double pi0 = kDefaultPriorNull);

/// True when p sits exactly on the degenerate boundary {0, 1}; the rlb
/// family returns limit values there and pipelines should surface a
/// warning instead of failing.
bool degenerate_p(double p);

}  // namespace pcalib
