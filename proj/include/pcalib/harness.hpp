#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Deterministic verification harness: seeded Monte Carlo for the validity
// of the bound as a p-value, exact enumeration for the conditional
// binomial test, the Beta(xi,1) shape estimator, and the harmonic-design
// consistency curves.

namespace pcalib {

// Splittable counter-style generator: (seed, stream) fully determines the
// sequence, so parallel batches draw from non-overlapping streams and
// results merge order-independently.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next();
  double uniform();        // in (0, 1)
  double normal();         // standard normal, Box-Muller

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

struct SimulationPlan {
  std::uint64_t seed = 0;
  long samples = 100000;
  double xi = 1.0;                  // null shape, >= 1
  std::vector<double> alpha_grid;   // strictly increasing, within (0,1)
};

struct ValidityCheck {
  double alpha = 0;       // threshold tested
  double null_p = 0;      // null parameter the check ran under (enumeration)
  double empirical = 0;   // estimated or exact P(bound <= alpha)
  double exact = 0;       // exact CDF value where known
  double se = 0;          // Monte Carlo standard error; 0 when exact
  double margin = 0;      // slack left in the validity inequality
  bool bound_ok = false;
  bool exact_ok = true;   // empirical within 3 se of the exact value
};

struct ValidationResult {
  std::string suite;
  std::uint64_t seed = 0;
  long samples = 0;       // 0 for exact enumeration
  bool exact = false;
  std::vector<ValidityCheck> checks;
  double worst_margin = 0;
  bool pass = false;
  std::vector<std::string> warnings;
};

/// Draws p ~ Beta(xi, 1) by inverse transform, evaluates the bound, and
/// checks P(bound <= alpha) <= alpha + 3 se on the grid, cross-checking
/// the empirical CDF against the exact value rho^xi from invert_rlb.
ValidationResult verify_rlb_validity(const SimulationPlan& plan);

/// Exact enumeration over all (s1, s2) outcomes: verifies that the
/// conditional pseudo p-value satisfies P(p <= alpha) <= alpha at every
/// achievable alpha, for each null proportion in p_grid. Uses exact
/// integer arithmetic whenever p is a multiple of 1/10 and the table is
/// small enough. Tables beyond n1, n2 <= 14 fall back to the Monte Carlo
/// variant below, with a warning in the result.
ValidationResult verify_fisher_validity(int n1, int n2,
                                        const std::vector<double>& p_grid);

/// Seeded Monte Carlo fallback for large tables.
ValidationResult verify_fisher_validity_mc(int n1, int n2,
                                           const std::vector<double>& p_grid,
                                           long samples = 100000,
                                           std::uint64_t seed = 0);

struct XiEstimate {
  double xi_hat = 0;
  double se = 0;       // large-sample standard error xi_hat/sqrt(m)
  std::size_t m = 0;
};

/// Beta(xi, 1) maximum likelihood: xi_hat = -m / sum(ln p_i). Requires at
/// least two samples, all strictly inside (0, 1).
XiEstimate estimate_xi0(std::span<const double> samples);

enum class FindleyMode { fixed_theta, simulate };

struct FindleyCurveRow {
  int n = 0;
  double alpha = 0;
  double h_n = 0;
  double theta_hat = 0;
  double v = 0;
  double C = 0;
  double bf_bic_raw_n = 0;   // BIC form fed the raw sample size
  double bf_bic_tess = 0;    // BIC form fed the effective size h_n
  double bf_pbic = 0;        // linear form with b = h_n
  double post_bic_raw_n = 0;
  double post_bic_tess = 0;
  double post_pbic = 0;
};

/// One row per (n, alpha). fixed_theta uses the supplied theta_hat;
/// simulate draws y under theta = 0 with the given seed and uses the
/// least-squares estimate.
std::vector<FindleyCurveRow> findley_curves(const std::vector<int>& n_grid,
                                            const std::vector<double>& alphas,
                                            FindleyMode mode,
                                            double theta_hat = 0.0,
                                            std::uint64_t seed = 0);

}  // namespace pcalib
