#include "pcalib/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "pcalib/numerics.hpp"

namespace pcalib {

namespace {

// Value of the bound at rho, as a function of t = ln(rho); increasing in t
// on t <= -1/xi.
double bound_at_log(double t, double xi) {
  return -std::exp(1.0 + xi * t) * xi * t;
}

}  // namespace

bool degenerate_p(double p) { return p == 0.0 || p == 1.0; }

namespace {

// Shared kernel so the xi0 = 1 case of rlb_xi IS rlb, bit for bit.
double rlb_kernel(double p, double xi0) {
  if (p == 0.0) return 0.0;  // degenerate limit
  if (p >= kInvE) return 1.0;
  // -e xi0 p^xi0 ln p, the power kept in log space
  const double lp = std::log(p);
  return -std::exp(1.0 + xi0 * lp) * xi0 * lp;
}

}  // namespace

double rlb(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("rlb: p in [0,1]");
  return rlb_kernel(p, 1.0);
}

double rlb_xi(double p, double xi0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("rlb_xi: p in [0,1]");
  if (!(xi0 >= 1.0))
    throw std::domain_error("rlb_xi: the evidence bound requires xi0 >= 1");
  return rlb_kernel(p, xi0);
}

double rlb_complement(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("rlb_complement: p in [0,1]");
  return rlb(1.0 - p);
}

double invert_rlb(double alpha, double xi) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("invert_rlb: alpha in (0,1]");
  if (!(xi > 0.0)) throw std::domain_error("invert_rlb: xi > 0");

  // The map rho -> -e xi rho^xi ln(rho) increases on (0, e^{-1/xi}];
  // restrict to (0, 1/e] and saturate when alpha exceeds the attainable
  // maximum there (xi e^{1-xi} for xi >= 1, exactly 1 for xi <= 1).
  const double t_hi = std::min(-1.0, -1.0 / xi);
  const double top = bound_at_log(t_hi, xi);
  if (alpha >= top) return std::exp(t_hi);

  double lo = -745.0;  // exp underflows below; bound value there is 0
  double hi = t_hi;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bound_at_log(mid, xi) < alpha)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-18 * std::max(1.0, std::fabs(lo))) break;
  }
  return std::exp(0.5 * (lo + hi));
}

double posterior_from_bf(double bf, double pi0) {
  if (!(bf > 0.0)) throw std::domain_error("posterior_from_bf: bf > 0");
  if (!(pi0 > 0.0 && pi0 < 1.0))
    throw std::domain_error("posterior_from_bf: pi0 inside (0,1)");
  return 1.0 / (1.0 + (1.0 - pi0) / pi0 / bf);
}

}  // namespace pcalib
