#!/usr/bin/env python3
"""Independent linear-algebra oracle for the nested-regression quantities.

Computes, from first principles (mpmath matrices, 50 digits), everything the
adapters module derives for the intercept+x2 vs intercept+x2+x3 comparison:
projection residual, design-determinant ratio, per-parameter information
quantities, the PBIC correction, and the nested F test. Values printed here
are frozen into tests/test_adapters.cpp and tests/acceptance.
"""
import mpmath as mp

mp.mp.dps = 50


def ols(X, y):
    Xt = X.T
    return mp.lu_solve(Xt * X, Xt * y)


def pbic_log_term(v):
    if v == 0:
        return -mp.log(2) / 2
    return mp.log((1 - mp.exp(-v)) / (mp.sqrt(2) * v))


def analyze(y, x2, x3, label):
    n = len(y)
    y = mp.matrix(y)
    ones = mp.matrix([1] * n)

    X2 = mp.zeros(n, 2)
    X3 = mp.zeros(n, 3)
    for i in range(n):
        X2[i, 0] = 1
        X2[i, 1] = x2[i]
        X3[i, 0] = 1
        X3[i, 1] = x2[i]
        X3[i, 2] = x3[i]

    b2 = ols(X2, y)
    b3 = ols(X3, y)
    r2 = y - X2 * b2
    r3 = y - X3 * b3
    rss2 = (r2.T * r2)[0]
    rss3 = (r3.T * r3)[0]
    sigma_sq = rss3 / (n - 3)

    # centered sums of squares and correlation
    m2 = sum(x2) / n
    m3 = sum(x3) / n
    ss2 = sum((v - m2) ** 2 for v in x2)
    ss3 = sum((v - m3) ** 2 for v in x3)
    s3sq = ss3 / (n - 1)
    sxy = sum((a - m2) * (b - m3) for a, b in zip(x2, x3))
    rho23 = sxy / mp.sqrt(ss2 * ss3)

    b_ratio = (n - 1) * s3sq * (1 - rho23**2)
    # cross-check against the raw Gram determinant ratio
    det_ratio = mp.det(X3.T * X3) / mp.det(X2.T * X2)

    # projection of x3 onto the orthogonal complement of (1 | x2)
    G = X2.T * X2
    coef = mp.lu_solve(G, X2.T * mp.matrix(x3))
    xt = mp.matrix(x3) - X2 * coef
    sst = (xt.T * xt)[0]
    max_xt2 = max(v**2 for v in xt)

    d2 = sigma_sq / ss2
    n2e = ss2 / max((v - m2) ** 2 for v in x2)
    v2 = b2[1] ** 2 / (d2 * (1 + n2e))
    d3 = sigma_sq / sst
    n3e = sst / max_xt2
    v3 = b3[2] ** 2 / (d3 * (1 + n3e))
    C = 2 * pbic_log_term(v2) - 2 * pbic_log_term(v3)

    f_stat = (rss2 - rss3) / (rss3 / (n - 3))
    # F(1, n-3) upper tail via the regularized incomplete beta
    z = f_stat / (f_stat + (n - 3))
    f_pvalue = 1 - mp.betainc(mp.mpf(1) / 2, mp.mpf(n - 3) / 2, 0, z,
                              regularized=True)

    print(f"--- {label} (n={n}) ---")
    for name, val in [
        ("beta2_hat(null model)", b2[1]), ("beta3_hat(alt model)", b3[2]),
        ("alt beta2", b3[1]), ("rss_null", rss2), ("rss_alt", rss3),
        ("sigma_sq", sigma_sq), ("s3_sq", s3sq), ("rho23", rho23),
        ("b_ratio", b_ratio), ("det_ratio(check)", det_ratio),
        ("proj_ss (= xt' xt)", sst), ("d2", d2), ("n2e", n2e), ("v2", v2),
        ("d3", d3), ("n3e", n3e), ("v3", v3), ("C", C),
        ("f_stat", f_stat), ("f_pvalue", f_pvalue),
    ]:
        print(f"  {name:24s} {mp.nstr(val, 20)}")
    return C, f_pvalue


def main():
    # fixed 6-point dataset, hand-picked so nothing degenerates
    y6 = [mp.mpf(s) for s in "4.2 5.4 9.1 10.3 14.6 16.0".split()]
    x2_6 = [mp.mpf(s) for s in "1 2 3 4 5 6".split()]
    x3_6 = [mp.mpf(s) for s in "2 1 4 3 7 6".split()]
    analyze(y6, x2_6, x3_6, "six-point")

    # orthogonal-x3 variant: x3 centered residual orthogonal to x2 by design
    x3_o = [mp.mpf(s) for s in "1 -1 1 -1 1 -1".split()]
    analyze(y6, x2_6, x3_o, "orthogonal-x3")


if __name__ == "__main__":
    main()
