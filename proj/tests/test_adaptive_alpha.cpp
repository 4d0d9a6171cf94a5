#include "pcalib/adaptive_alpha.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "pcalib/numerics.hpp"

using namespace pcalib;

namespace {

AdaptiveAlphaInputs generic(double alpha, int q, double n, double C) {
  AdaptiveAlphaInputs in;
  in.alpha = alpha;
  in.q = q;
  in.n = n;
  in.C = C;
  return in;
}

}  // namespace

TEST_CASE("bic form: frozen value, q=2 closed form, scaling") {
  AdaptiveAlphaInputs in = generic(0.05, 1, 100, 0);
  in.C_alpha = 1.0;
  CHECK(adaptive_alpha_bic(in) ==
        doctest::Approx(0.027453539948590977578).epsilon(1e-12));

  // q = 2 kills the bracket exponent: C_alpha / (n Gamma(1)) = C_alpha / n
  AdaptiveAlphaInputs q2 = generic(0.2, 2, 50, 0);
  q2.C_alpha = 2.0;
  CHECK(adaptive_alpha_bic(q2) == doctest::Approx(2.0 / 50.0).epsilon(1e-13));

  // doubling n at q = 1 shrinks by more than the bare n^{-1/2} factor
  AdaptiveAlphaInputs big = in;
  big.n = 200;
  CHECK(adaptive_alpha_bic(big) <
        adaptive_alpha_bic(in) * std::pow(2.0, -0.5));

  AdaptiveAlphaInputs missing = generic(0.05, 1, 100, 0);
  CHECK_THROWS_AS(adaptive_alpha_bic(missing), std::invalid_argument);
  CHECK_THROWS_WITH_AS(adaptive_alpha_bic(missing),
                       doctest::Contains("pbic_adjusted"),
                       std::invalid_argument);
}

TEST_CASE("pbic-adjusted form: frozen values") {
  CHECK(adaptive_alpha_pbic_adjusted(generic(0.05, 1, 100, 0)) ==
        doctest::Approx(0.0040219453728398661556).epsilon(1e-12));
  // the two-proportion correction C = 0.731121..., at the stated level
  const double C = 0.73112148285393748477;
  CHECK(adaptive_alpha_pbic_adjusted(generic(0.5, 1, 20, C)) ==
        doctest::Approx(0.048216395693881289416).epsilon(1e-12));
  // and at level 0.05, where it matches the two-proportion table scale
  CHECK(adaptive_alpha_pbic_adjusted(generic(0.05, 1, 20, C)) ==
        doctest::Approx(0.0065917744157008524796).epsilon(1e-12));

  // q = 2: exponent-zero case, exp{-(chi2+C)/2}/n with chi2 = -2 ln(alpha)
  const double direct = std::exp(-0.5 * (-2.0 * std::log(0.05) + 0.3)) / 40.0;
  CHECK(adaptive_alpha_pbic_adjusted(generic(0.05, 2, 40, 0.3)) ==
        doctest::Approx(direct).epsilon(1e-12));

  CHECK_THROWS_AS(adaptive_alpha_pbic_adjusted(generic(0.5, 1, 2, -10.0)),
                  std::domain_error);
}

TEST_CASE("pbic-adjusted: monotone vanishing in n") {
  double prev = 1.0;
  for (double n : {10.0, 30.0, 100.0, 1e3, 1e5, 1e8}) {
    const double a = adaptive_alpha_pbic_adjusted(generic(0.05, 1, n, 0.7));
    CHECK(a < prev);
    CHECK(a > 0.0);
    prev = a;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("linear form: frozen value and reductions") {
  AdaptiveAlphaInputs in = generic(0.05, 1, 82, 0);
  in.j = 3;
  in.b = 100;
  CHECK(adaptive_alpha_pbic_linear(in) ==
        doctest::Approx(0.0045201524932749361778).epsilon(1e-12));

  // q = 2: both bracket exponents vanish
  AdaptiveAlphaInputs q2 = generic(0.05, 2, 30, 0.4);
  q2.j = 3;
  q2.b = 7.0;
  const double w = (30.0 - 3.0) / (2.0 * 29.0);
  const double g = chi2_quantile(0.05, 2);
  const double direct = std::exp(-w * (g + 0.4)) / std::pow(7.0, w);
  CHECK(adaptive_alpha_pbic_linear(q2) == doctest::Approx(direct).epsilon(1e-12));

  // b = 1, C = 0, huge n: collapses to the n-free part of the adjusted form
  AdaptiveAlphaInputs flat = generic(0.05, 1, 1e6, 0);
  flat.j = 1;
  flat.b = 1.0;
  const double chi = chi2_quantile(0.05, 1);
  const double limit = std::pow(chi, -0.5) /
                       (std::pow(2.0, -0.5) * std::exp(log_gamma(0.5))) *
                       std::exp(-0.5 * chi);
  CHECK(adaptive_alpha_pbic_linear(flat) ==
        doctest::Approx(limit).epsilon(1e-6));

  AdaptiveAlphaInputs bad = in;
  bad.b = -1.0;
  CHECK_THROWS_AS(adaptive_alpha_pbic_linear(bad), std::domain_error);
  bad = in;
  bad.n = 3.0;
  CHECK_THROWS_AS(adaptive_alpha_pbic_linear(bad), std::domain_error);
}

TEST_CASE("anova form: frozen value and linear-form consistency") {
  CHECK(adaptive_alpha_anova(3, 10, 0.05, 0.0) ==
        doctest::Approx(0.012016276095662808227).epsilon(1e-12));
  CHECK(adaptive_alpha_anova(2, 10, 0.5, 0.0) ==
        doctest::Approx(0.21458853675156800498).epsilon(1e-12));
  CHECK_THROWS_AS(adaptive_alpha_anova(2, 1, 0.05, 0.0), std::domain_error);

  // identical to the linear form under the effective-term substitution
  for (int k = 2; k <= 6; ++k) {
    for (int r = 5; r <= 50; r += 5) {
      const double direct = adaptive_alpha_anova(k, r, 0.05, 0.2);
      AdaptiveAlphaInputs in = generic(0.05, k - 1, r + 1.0 - 1.0 / k, 0.2);
      in.j = 2.0 - 1.0 / k;
      in.b = std::pow(static_cast<double>(r), k - 1) / k;
      CHECK(adaptive_alpha_pbic_linear(in) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("f_deviance and custom g options") {
  AdaptiveAlphaInputs in = generic(0.05, 1, 82, 0);
  in.j = 3;
  in.b = 100;
  in.g_option = GOption::f_deviance;
  CHECK(reference_quantile_g(in) ==
        doctest::Approx(3.9636149451065577062).epsilon(1e-11));
  const double dev = adaptive_alpha_pbic_linear(in);
  in.g_option = GOption::chi2;
  const double chi = adaptive_alpha_pbic_linear(in);
  CHECK(dev > 0.0);
  CHECK(dev < 1.0);
  CHECK(dev != chi);

  in.g_option = GOption::custom;
  CHECK_THROWS_AS(reference_quantile_g(in), std::invalid_argument);
  in.custom_g = [](const AdaptiveAlphaInputs& i) {
    return chi2_quantile(i.alpha, i.q);
  };
  CHECK(adaptive_alpha_pbic_linear(in) == doctest::Approx(chi).epsilon(1e-14));
}

TEST_CASE("outputs stay inside (0,1) on the documented grid") {
  for (double alpha : {0.05, 0.5}) {
    for (int q : {1, 2, 3, 4}) {
      for (double n : {10.0, 100.0, 1e4, 1e6}) {
        for (double C : {0.0, 0.73}) {
          const double a = adaptive_alpha_pbic_adjusted(generic(alpha, q, n, C));
          CHECK(a > 0.0);
          CHECK(a < 1.0);
        }
      }
    }
  }
}
