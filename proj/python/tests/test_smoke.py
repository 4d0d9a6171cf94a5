#!/usr/bin/env python3
"""Smoke tests for the python bindings: a handful of golden values and the
determinism of the seeded harness. Runs as a plain script so it needs no
test framework."""
import math

import pcalib


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol * max(1.0, abs(a), abs(b)), (a, b)


def main():
    approx(pcalib.rlb(0.05), 0.40716223010650577, 1e-12)
    approx(pcalib.rlb_xi(0.05, 2.0), 0.040716223010650577, 1e-12)
    approx(pcalib.posterior_from_bf(pcalib.rlb(0.05)), 0.28934988546110162, 1e-12)
    approx(pcalib.invert_rlb(pcalib.rlb(0.05), 1.0), 0.05, 1e-10)
    approx(pcalib.rlb_complement(0.95), pcalib.rlb(0.05), 1e-13)

    approx(pcalib.log_gamma(5.0), math.log(24.0), 1e-13)
    approx(pcalib.beta_function(2, 3), 1.0 / 12.0, 1e-13)
    approx(pcalib.chi2_quantile(0.05, 1), 3.8414588206941259584, 1e-12)
    approx(pcalib.f_quantile(0.05, 1, 79), 3.9618920394051644977, 1e-10)

    approx(pcalib.adaptive_alpha_pbic_adjusted(0.05, 1, 100), 0.0040219453728398662, 1e-11)
    approx(pcalib.adaptive_alpha_bic(0.05, 1, 100, 1.0), 0.027453539948590978, 1e-11)
    approx(pcalib.adaptive_alpha_anova(3, 10, 0.05), 0.012016276095662808, 1e-11)

    approx(pcalib.bf_bic(0.05, 1, 100), 1.2918771803369433, 1e-11)
    approx(pcalib.bf_pbic_linear(0.05, 1, 82, 3, 100), 1.2358302820775598, 1e-11)
    approx(pcalib.bf_ttest(0.0, 50, 6.0), math.sqrt(56.0 / 6.0), 1e-12)
    approx(pcalib.bf_fisher_exact(1, 1, 1), 1.5, 1e-12)

    approx(pcalib.fisher_pseudo_p(2, 0, 2, 2), 1.0 / 6.0, 1e-12)
    approx(pcalib.anova_design_ratio(2, 10), 5.0, 1e-13)

    t = pcalib.tess_two_proportions(10, 10, sigma1_sq=0.25, sigma2_sq=0.25, p_hat=0.2)
    approx(t["d"], 0.05, 1e-13)
    approx(t["n_e"], 20.0, 1e-13)
    approx(t["C"], 0.73112148285393748, 1e-11)

    q = pcalib.regression_nested_quantities(
        [4.2, 5.4, 9.1, 10.3, 14.6, 16.0],
        [1, 2, 3, 4, 5, 6],
        [2, 1, 4, 3, 7, 6],
    )
    approx(q["b"], 7.2761904761904762, 1e-11)
    approx(q["f_pvalue"], 0.00019834490731880914, 1e-8)

    f = pcalib.findley_quantities(100)
    approx(f["h_n"], 5.1873775176396203, 1e-13)

    est = pcalib.estimate_xi0([0.25, 0.25])
    approx(est["xi_hat"], 1.0 / math.log(4.0), 1e-12)

    grid = [i / 100.0 for i in range(1, 31)]
    r1 = pcalib.verify_rlb_validity(1.0, 20000, 7, grid)
    r2 = pcalib.verify_rlb_validity(1.0, 20000, 7, grid)
    assert r1["pass"] and r2["pass"]
    assert [c["empirical"] for c in r1["checks"]] == [
        c["empirical"] for c in r2["checks"]
    ]

    fr = pcalib.verify_fisher_validity(5, 5, [0.3, 0.5])
    assert fr["pass"] and fr["exact"] and fr["worst_margin"] >= 0.0

    try:
        pcalib.rlb_xi(0.05, 0.5)
        raise AssertionError("expected a domain error")
    except ValueError:
        pass

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
