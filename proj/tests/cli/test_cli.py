#!/usr/bin/env python3
"""CLI integration: exit-code contract, JSON schema stability, golden
values, and CSV round trips. Invoked by ctest with --exe pointing at the
built binary."""
import argparse
import json
import math
import subprocess
import sys

EXE = None


def run(*args, expect=0):
    proc = subprocess.run([EXE, *args], capture_output=True, text=True)
    assert proc.returncode == expect, (args, proc.returncode, proc.stderr)
    return proc.stdout


def run_json(*args, expect=0):
    return json.loads(run(*args, expect=expect))


def approx(a, b, tol=1e-8):
    assert abs(a - b) <= tol * max(1.0, abs(a), abs(b)), (a, b)


def test_calibrate():
    j = run_json("calibrate", "--p", "0.05", "--xi0", "1")
    assert list(j.keys()) == ["formula", "inputs", "bf", "pi0", "posterior", "warnings"]
    assert j["formula"] == "rlb"
    approx(j["bf"], 0.407162230)
    approx(j["posterior"], 0.289349885)
    assert j["warnings"] == []

    j2 = run_json("calibrate", "--p", "0.05", "--xi0", "2")
    assert j2["formula"] == "rlb_xi"
    approx(j2["bf"], 0.0407162230)
    approx(j2["posterior"], 0.0391232707)

    j3 = run_json("calibrate", "--p", "0.5", "--xi0", "1")
    approx(j3["bf"], 1.0)
    approx(j3["posterior"], 0.5)

    j4 = run_json("calibrate", "--p", "1.0")
    assert j4["warnings"], "p = 1 should surface the degenerate flag"

    # pi0 propagates
    j5 = run_json("calibrate", "--p", "0.05", "--pi0", "0.25")
    approx(j5["posterior"], 1.0 / (1.0 + 3.0 / j5["bf"]))


def test_exit_codes():
    run("calibrate", "--p", "0", expect=1)           # domain error
    run("calibrate", expect=2)                        # missing required flag
    run("definitely-not-a-command", expect=2)         # unknown subcommand
    run("validate", "rlb", "--xi", "0.5", expect=1)   # xi < 1
    run("--help", expect=0)
    # bad enum values are usage errors
    run("bf", "pbic", "--alpha", "0.05", "--n", "82", "--j", "3", "--b",
        "100", "--g", "banana", expect=2)
    run("scenario", "fig3", "--format", "yaml", expect=2)
    run("scenario", "two-means", "--n1", "10", "--n2", "10",
        "--ne-form", "median", expect=2)
    run(
        "scenario", "regression", "--csv", "/nonexistent.csv",
        "--response", "mpg", "--null", "wt", "--alt", "wt,sp",
        expect=1,
    )


def test_bf_commands():
    j = run_json("bf", "bic", "--alpha", "0.05", "--n", "100")
    approx(j["bf"], 1.29187718)
    j = run_json("bf", "pbic", "--alpha", "0.05", "--n", "82", "--j", "3", "--b", "100")
    approx(j["bf"], 1.23583028)
    j = run_json("bf", "ttest", "--t", "0", "--n", "50", "--tau0", "6")
    approx(j["bf"], math.sqrt(56.0 / 6.0))
    j = run_json("bf", "fisher", "--s1", "1", "--s2", "0", "--n1", "1", "--n2", "1")
    approx(j["bf"], 1.5)
    j = run_json("bf", "anova", "--k", "3", "--r", "10", "--alpha", "0.05")
    approx(j["bf"], 0.173312686)
    for out in (j,):
        assert list(out.keys()) == ["formula", "inputs", "bf", "pi0", "posterior", "warnings"]


def test_adaptive_alpha():
    j = run_json(
        "adaptive-alpha", "two-prop", "--n1", "10", "--n2", "10",
        "--p-hat", "0.2", "--sigma1-sq", "0.25", "--sigma2-sq", "0.25",
        "--alpha", "0.05",
    )
    approx(j["tess"]["C"], 0.731121483)
    approx(j["alpha_n"], 0.00659177442)

    j = run_json("adaptive-alpha", "generic", "--q", "1", "--n", "100")
    assert j["variant"] == "pbic-adjusted"
    approx(j["alpha_n"], 0.00402194537)
    j = run_json("adaptive-alpha", "generic", "--q", "1", "--n", "100",
                 "--c-alpha", "1")
    assert j["variant"] == "bic"
    approx(j["alpha_n"], 0.0274535399)

    j = run_json("adaptive-alpha", "anova", "--k", "3", "--r", "10")
    approx(j["alpha_n"], 0.0120162761)
    approx(j["b"], 100.0 / 3.0)

    j = run_json("adaptive-alpha", "linear", "--q", "1", "--n", "82",
                 "--j", "3", "--b", "100")
    approx(j["alpha_n"], 0.00452015249)


def test_fisher_p():
    j = run_json("fisher-p", "--s1", "2", "--s2", "0", "--n1", "2", "--n2", "2")
    approx(j["pseudo_p"], 1.0 / 6.0)


def test_scenario_tables_and_roundtrip():
    # fig3: four curves, pointwise decreasing in the shape parameter
    j = run_json("scenario", "fig3", "--points", "100")
    assert j["columns"][0] == "p"
    assert len(j["columns"]) == 5
    for row in j["rows"]:
        posts = row[1:]
        assert all(posts[i] > posts[i + 1] for i in range(len(posts) - 1)), row

    # determinism: identical bytes across runs
    a = run("scenario", "findley", "--n", "100,1000", "--alpha", "0.05,0.01")
    b = run("scenario", "findley", "--n", "100,1000", "--alpha", "0.05,0.01")
    assert a == b

    # csv round trip: re-ingesting an emitted table reproduces the bytes
    csv1 = run("scenario", "findley", "--n", "100,1000", "--alpha", "0.05",
               "--format", "csv")
    lines = [l for l in csv1.strip().split("\n")]
    header = lines[0].split(",")
    assert header[0] == "n" and "post_pbic" in header

    import io
    import csv as csvmod

    rows = list(csvmod.reader(io.StringIO(csv1)))
    body = [[float(x) for x in r] for r in rows[1:]]
    # emit again through the same significant-digit formatting
    def fmt(v):
        return f"%.9g" % v

    csv2 = ",".join(rows[0]) + "\n"
    for r in body:
        csv2 += ",".join(fmt(v) for v in r) + "\n"
    assert csv1 == csv2

    # two-means: the exact comparator tracks the calibrated ones
    j = run_json("scenario", "two-means", "--n1", "25", "--n2", "25",
                 "--equal-variance", "--p", "0.01,0.05,0.2")
    cols = j["columns"]
    irlb = cols.index("post_rlb")
    ipbic = cols.index("post_pbic_linear")
    for row in j["rows"]:
        assert row[ipbic] > row[irlb]

    # fisher scenario: single outcome
    j = run_json("scenario", "fisher", "--n1", "6", "--n2", "6",
                 "--s1", "5", "--s2", "1")
    assert len(j["rows"]) == 1

    # validate suites pass and are deterministic
    v1 = run("validate", "rlb", "--xi", "1", "--samples", "20000", "--seed", "7")
    v2 = run("validate", "rlb", "--xi", "1", "--samples", "20000", "--seed", "7")
    assert v1 == v2
    assert json.loads(v1)["pass"]
    vf = run_json("validate", "fisher", "--n1", "5", "--n2", "5")
    assert vf["pass"] and vf["exact"]
    vx = run_json("validate", "xi0", "--xi", "2", "--samples", "50000",
                  "--seed", "7")
    assert vx["pass"]

    # csv view of a validation run: one row per check
    out = run("validate", "fisher", "--n1", "5", "--n2", "5", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "alpha,null_p,empirical,se,margin,ok"
    assert len(lines) == 10  # header + nine null proportions
    out = run("validate", "rlb", "--xi", "1", "--samples", "5000",
              "--seed", "7", "--alpha", "0.05,0.1", "--format", "csv")
    assert out.startswith("alpha,exact,empirical,se,margin,ok")


def test_seed_env(data_dir):
    import os

    env = dict(os.environ)
    env["PCALIB_SEED"] = "123"
    p1 = subprocess.run(
        [EXE, "validate", "rlb", "--xi", "1", "--samples", "5000"],
        capture_output=True, text=True, env=env)
    p2 = subprocess.run(
        [EXE, "validate", "rlb", "--xi", "1", "--samples", "5000", "--seed", "123"],
        capture_output=True, text=True)
    assert p1.stdout == p2.stdout


def test_regression_scenario(data_dir):
    import os
    import tempfile

    csv = "mpg,wt,sp\n"
    y = [11.2, 9.8, 13.1, 10.5, 14.2, 11.9, 15.8, 10.9, 13.6, 16.4, 12.2, 15.1]
    x2 = list(range(1, 13))
    x3 = [5, 2, 8, 1, 9, 4, 11, 3, 7, 12, 6, 10]
    for i in range(12):
        csv += f"{y[i]},{x2[i]},{x3[i]}\n"
    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as f:
        f.write(csv)
        path = f.name
    try:
        j = run_json("scenario", "regression", "--csv", path,
                     "--response", "mpg", "--null", "wt", "--alt", "wt,sp")
        approx(j["quantities"]["b"], 109.706293706)
        approx(j["quantities"]["C"], 0.991449445)
        approx(j["f_stat"], 137.792086258)
        approx(j["f_pvalue"], 9.28752407e-7, tol=1e-6)
        assert "p_pl" in j and "p_pg1" in j
        assert 0.0 < j["p_pl"] < 1.0 and 0.0 < j["p_pg1"] < 1.0
        # f_deviance interpretation runs too and differs
        j2 = run_json("scenario", "regression", "--csv", path,
                      "--response", "mpg", "--null", "wt", "--alt", "wt,sp",
                      "--g", "f_deviance")
        assert j2["p_pl"] != j["p_pl"]
        # malformed csv reports the row number and exits 1
        with open(path, "a") as f:
            f.write("1,2\n")
        proc = subprocess.run(
            [EXE, "scenario", "regression", "--csv", path, "--response", "mpg",
             "--null", "wt", "--alt", "wt,sp"],
            capture_output=True, text=True)
        assert proc.returncode == 1
        assert "row 14" in proc.stderr
    finally:
        os.unlink(path)

    # a nearly perfect fit degenerates the linear-form bracket: diagnostic + 1
    csv = "mpg,wt,sp\n"
    y = [4.2, 5.4, 9.1, 10.3, 14.6, 16.0]
    x2 = [1, 2, 3, 4, 5, 6]
    x3 = [2, 1, 4, 3, 7, 6]
    for i in range(6):
        csv += f"{y[i]},{x2[i]},{x3[i]}\n"
    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as f:
        f.write(csv)
        path = f.name
    try:
        proc = subprocess.run(
            [EXE, "scenario", "regression", "--csv", path, "--response", "mpg",
             "--null", "wt", "--alt", "wt,sp"],
            capture_output=True, text=True)
        assert proc.returncode == 1
        assert "degenerate" in proc.stderr
    finally:
        os.unlink(path)


def test_shipped_sample_dataset(data_dir):
    import os

    path = os.path.join(data_dir, "synthetic_cars.csv")
    j = run_json("scenario", "regression", "--csv", path,
                 "--response", "mpg", "--null", "wt", "--alt", "wt,sp")
    assert j["n"] == 20
    assert 0.0 < j["p_pl"] < 1.0 and 0.0 < j["p_pg1"] < 1.0
    assert 0.0 < j["f_pvalue"] < 1.0


def test_golden_files():
    import os

    golden_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                              "golden")
    cases = {
        "calibrate_p05.json": ["calibrate", "--p", "0.05", "--xi0", "1"],
        "bf_bic_a05_n100.json": ["bf", "bic", "--alpha", "0.05", "--n", "100"],
        "validate_fisher_3_2.json": ["validate", "fisher", "--n1", "3",
                                     "--n2", "2"],
    }
    for fname, args in cases.items():
        with open(os.path.join(golden_dir, fname)) as f:
            expected = f.read()
        got = run(*args)
        assert got == expected, f"golden mismatch for {fname}"


def test_two_means_warning():
    proc = subprocess.run(
        [EXE, "scenario", "two-means", "--n1", "100", "--n2", "50",
         "--equal-variance", "--p", "0.05", "--format", "csv"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "ambiguous" in proc.stderr
    j = run_json("scenario", "two-means", "--n1", "100", "--n2", "50",
                 "--equal-variance", "--ne-form", "min", "--p", "0.05")
    assert any("ambiguous" in w for w in j["warnings"])
    # balanced designs agree, no warning
    j = run_json("scenario", "two-means", "--n1", "25", "--n2", "25",
                 "--equal-variance", "--p", "0.05")
    assert j["warnings"] == []


def main():
    global EXE
    ap = argparse.ArgumentParser()
    ap.add_argument("--exe", required=True)
    ap.add_argument("--data-dir", default="data")
    args = ap.parse_args()
    EXE = args.exe

    test_calibrate()
    test_exit_codes()
    test_bf_commands()
    test_adaptive_alpha()
    test_fisher_p()
    test_scenario_tables_and_roundtrip()
    test_seed_env(args.data_dir)
    test_regression_scenario(args.data_dir)
    test_shipped_sample_dataset(args.data_dir)
    test_golden_files()
    test_two_means_warning()
    print("cli integration tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
