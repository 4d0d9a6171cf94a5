"""p-value calibration: minimum Bayes factor bounds, posterior probabilities
of the null hypothesis, information-adaptive significance levels, and a
seeded verification harness. The implementation lives in the C++ extension
module; this package re-exports it."""

from pcalib._core import (  # noqa: F401
    INV_E,
    __version__,
    adaptive_alpha_anova,
    adaptive_alpha_bic,
    adaptive_alpha_pbic_adjusted,
    adaptive_alpha_pbic_linear,
    anova_design_ratio,
    beta_function,
    bf_anova,
    bf_bic,
    bf_fisher_exact,
    bf_pbic_linear,
    bf_ttest,
    chi2_quantile,
    estimate_xi0,
    f_quantile,
    findley_quantities,
    fisher_pseudo_p,
    invert_rlb,
    log_gamma,
    posterior_from_bf,
    regression_nested_quantities,
    rlb,
    rlb_complement,
    rlb_xi,
    tess_two_means,
    tess_two_proportions,
    verify_fisher_validity,
    verify_rlb_validity,
)
