#pragma once

#include <functional>

// Special functions and scalar solvers shared by every formula in the
// library: log-gamma, regularized incomplete gamma/beta, chi-square and F
// quantiles, and a bracketed monotone root finder. All functions are pure
// and reentrant; domain violations throw std::domain_error.

namespace pcalib {

inline constexpr double kInvE = 0.36787944117144232160;  // 1/e

enum class Tail { lower, upper };

/// ln Gamma(x) for x > 0; relative error well under 1e-12 on [0.5, 1e6].
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a).
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Chi-square CDF with dof degrees of freedom.
double chi2_cdf(double x, double dof);

/// Critical value of the chi-square distribution. tail=upper (default)
/// returns x with P(X > x) = alpha, i.e. the rejection-region critical
/// value; tail=lower returns the literal alpha-quantile P(X <= x) = alpha.
double chi2_quantile(double alpha, double dof, Tail tail = Tail::upper);

/// B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
double beta_function(double a, double b);

/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b).
double regularized_beta(double x, double a, double b);

/// F distribution CDF with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);

/// F critical value; tail semantics as in chi2_quantile.
double f_quantile(double alpha, double d1, double d2, Tail tail = Tail::upper);

/// Student t CDF with dof degrees of freedom.
double student_t_cdf(double x, double dof);

/// Student t critical value; tail=upper returns x with P(T > x) = alpha.
double student_t_quantile(double alpha, double dof, Tail tail = Tail::upper);

/// Root of f(x) = target for f continuous and strictly monotone on
/// [lo, hi]. Bracketing bisection with a secant step when it helps;
/// always terminates. Throws if target is not between f(lo) and f(hi).
double solve_monotone(const std::function<double(double)>& f, double lo,
                      double hi, double target, double tol = 1e-12);

}  // namespace pcalib
