#include "pcalib/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcalib {

namespace {

constexpr int kMaxIter = 500;

// Lentz continued fraction for the upper incomplete gamma Q(a,x), x > a+1.
double gamma_q_cf(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

// Series for the lower incomplete gamma P(a,x), x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 10000; ++i) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * std::numeric_limits<double>::epsilon())
      break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Textbook continued fraction for the regularized incomplete beta.
double beta_cf(double x, double a, double b) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

// Bisection of a CDF to full double resolution, then returns the midpoint.
double invert_cdf(const std::function<double(double)>& cdf, double level,
                  double hi_seed) {
  double lo = 0.0;
  double hi = hi_seed;
  while (cdf(hi) < level) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::runtime_error("cdf inversion overflow");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted
    if (cdf(mid) < level)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  // Lanczos, g = 671/128, 14 coefficients; relative error ~ 1e-15.
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  const double y0 = x;
  double y = y0;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / y0);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_gamma_p: a > 0");
  if (x < 0.0) throw std::domain_error("regularized_gamma_p: x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_gamma_q: a > 0");
  if (x < 0.0) throw std::domain_error("regularized_gamma_q: x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("chi2_cdf: dof > 0");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(dof / 2.0, x / 2.0);
}

double chi2_quantile(double alpha, double dof, Tail tail) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("chi2_quantile: alpha must be inside (0,1)");
  if (!(dof > 0.0)) throw std::domain_error("chi2_quantile: dof > 0");
  const double level = (tail == Tail::upper) ? 1.0 - alpha : alpha;
  const double seed = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
  return invert_cdf([dof](double x) { return chi2_cdf(x, dof); }, level, seed);
}

double log_beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("log_beta: a, b > 0");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_function(double a, double b) { return std::exp(log_beta(a, b)); }

double regularized_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0))
    throw std::domain_error("regularized_beta: a, b > 0");
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("regularized_beta: x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(a, b)) *
                   beta_cf(1.0 - x, b, a) / b;
}

double f_cdf(double x, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw std::domain_error("f_cdf: dof > 0");
  if (x <= 0.0) return 0.0;
  return regularized_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0);
}

double f_quantile(double alpha, double d1, double d2, Tail tail) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("f_quantile: alpha must be inside (0,1)");
  if (!(d1 > 0.0 && d2 > 0.0)) throw std::domain_error("f_quantile: dof > 0");
  const double level = (tail == Tail::upper) ? 1.0 - alpha : alpha;
  return invert_cdf([d1, d2](double x) { return f_cdf(x, d1, d2); }, level,
                    2.0);
}

double student_t_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("student_t_cdf: dof > 0");
  if (x == 0.0) return 0.5;
  const double tail =
      0.5 * regularized_beta(dof / (x * x + dof), dof / 2.0, 0.5);
  return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double alpha, double dof, Tail tail) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("student_t_quantile: alpha must be inside (0,1)");
  const double level = (tail == Tail::upper) ? 1.0 - alpha : alpha;
  if (level == 0.5) return 0.0;
  // exploit symmetry so the bisection runs on the positive half-line
  const bool flip = level < 0.5;
  const double lv = flip ? 1.0 - level : level;
  const double x =
      invert_cdf([dof](double t) { return student_t_cdf(t, dof); }, lv, 2.0);
  return flip ? -x : x;
}

double solve_monotone(const std::function<double(double)>& f, double lo,
                      double hi, double target, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("solve_monotone: lo < hi");
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::domain_error("solve_monotone: target outside bracket");

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < kMaxIter; ++i) {
    // secant candidate, fall back to the midpoint when it leaves the bracket
    double cand = lo - flo * (hi - lo) / (fhi - flo);
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    if (i % 2 == 1) cand = 0.5 * (lo + hi);  // guarantee geometric shrink
    const double fc = f(cand) - target;
    x = cand;
    if (std::fabs(fc) <= tol) return x;
    if ((fc > 0.0) == (fhi > 0.0)) {
      hi = cand;
      fhi = fc;
    } else {
      lo = cand;
      flo = fc;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::fabs(lo)))
      break;
  }
  return x;
}

}  // namespace pcalib
