"""Exit criteria for the toolkit; each test records one PASS/FAIL line."""

import itertools
import math
import time

import numpy as np

from bohrkit.cli import sharpness_checks
from bohrkit.lemmas import SLACK_TOL, lemma_special_cases, run_lemma_suite
from bohrkit.radii import (
    Params,
    RadiusProblem,
    Variant,
    cap_radius,
    limiting_radius,
    refined_constant,
    solve_radius,
)

REFERENCE_TABLE_1 = {1: 1 / 3, 2: 0.57735, 3: 0.693361, 5: 0.802742, 7: 0.854751}
REFERENCE_TABLE_2 = {(1, 1): math.sqrt(2) - 1, (3, 3): 0.745432, (3, 2): 0.673348, (5, 30): 0.948565, (10, 30): 0.958906}
REFERENCE_TABLE_3 = {
    (1, 1): ((math.sqrt(5) - 1) / 2, 1e-5),
    (3, 3): (0.8518, 1e-4),
    (3, 2): (0.826031, 1e-5),
    (5, 30): (0.962497, 1e-5),
    (10, 30): (0.972272, 1e-5),
}
LIMIT_KS = (1, 2, 5, 100)


def solve(variant, params):
    return solve_radius(RadiusProblem(variant, params)).value


def test_ac1_table_1(acceptance):
    start = time.perf_counter()
    errs = [abs(cap_radius(RadiusProblem(Variant.MAJORANT, Params(m=m))) - v) for m, v in REFERENCE_TABLE_1.items()]
    elapsed = time.perf_counter() - start
    acceptance(
        "AC1 table 1 (3^(-1/m))",
        max(errs) <= 1e-5 and elapsed < 1.0,
        f"max_err={max(errs):.2e} tol=1e-5 time={elapsed:.3f}s",
    )


def test_ac2_table_2(acceptance):
    errs = [abs(cap_radius(RadiusProblem(Variant.VALUE_DERIV, Params(m=m, q=q))) - v) for (m, q), v in REFERENCE_TABLE_2.items()]
    acceptance("AC2 table 2 (R_mq)", max(errs) <= 1e-5, f"max_err={max(errs):.2e} tol=1e-5")


def test_ac3_table_3(acceptance):
    ok, worst = True, 0.0
    for (m, q), (v, tol) in REFERENCE_TABLE_3.items():
        err = abs(cap_radius(RadiusProblem(Variant.VALUE_SQ_DERIV, Params(m=m, q=q))) - v)
        ok &= err <= tol
        worst = max(worst, err)
    acceptance("AC3 table 3 (R_2mq)", ok, f"max_err={worst:.2e} tol=1e-5 (1e-4 for 0.8518)")


def test_ac4_limiting_identities(acceptance):
    worst = 0.0
    for variant in (Variant.MAJORANT, Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV):
        for K in LIMIT_KS:
            params = Params(p=1, m=200, q=1, K=K)
            closed = {
                Variant.MAJORANT: 1 / 3,
                Variant.VALUE_DERIV: (K + 1) / (5 * K + 1),
                Variant.VALUE_SQ_DERIV: (K + 1) / (3 * K + 1),
            }[variant]
            assert abs(limiting_radius(variant, params) - closed) <= 1e-15
            worst = max(worst, abs(solve(variant, params) - closed))
    acceptance("AC4 limiting identities (m=200)", worst <= 1e-6, f"max_err={worst:.2e} tol=1e-6")


def test_ac5_refined_closed_form(acceptance):
    worst_root, worst_const = 0.0, 0.0
    for p in (1, 2, 3, 5, 8):
        for K in (1, 1.5, 2, 5, 100, "inf"):
            params = Params(p=p, K=K)
            k = params.k
            worst_root = max(worst_root, abs(solve(Variant.REFINED, params) - (1 / (2 * k + 3)) ** (1 / p)))
    for p in (1, 2, 3, 5):
        for K in LIMIT_KS:
            closed = 8 * K**2 * (3 * K + 1) ** 2 / ((K + 1) ** 2 * (5 * K + 1) ** 2)
            worst_const = max(worst_const, abs(refined_constant(Params(p=p, m=p, K=K)) - closed))
    acceptance(
        "AC5 refined radius and constant",
        worst_root <= 1e-12 and worst_const <= 1e-12,
        f"root_err={worst_root:.2e} const_err={worst_const:.2e} tol=1e-12",
    )


def _oracle_defining(variant, p, m, q, k, r):
    # written out directly from the radius equations; no cancellation handling
    if variant is Variant.MAJORANT:
        return 2 * r**p / (1 - r**p) + 2 * k * (r**m / (1 - r**m) + np.log(1 - r**m)) - 1
    if variant is Variant.VALUE_DERIV:
        return 2 * r**q / (1 + r**m) + 2 * (k + r**p) * (1 + r**m) * r**p / (1 - r**p) - (1 - r**m)
    if variant is Variant.VALUE_SQ_DERIV:
        return -(1 - r ** (2 * m) - r**q) / (1 + r**m) ** 2 + (r**p + k) * r**p / (1 - r**p)
    return (2 * k + 3) * r**p - 1


def test_ac6_root_oracle(acceptance):
    rng = np.random.default_rng(20240611)
    grid = np.arange(1, 1_000_000) * 1e-6
    variants = (Variant.MAJORANT, Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV, Variant.REFINED)
    worst = 0.0
    for _ in range(20):
        variant = variants[rng.integers(len(variants))]
        p, m, q = (int(v) for v in rng.integers(1, 11, size=3))
        K = "inf" if rng.uniform() < 0.1 else float(rng.uniform(1, 20))
        params = Params(p, m, q, K)
        values = _oracle_defining(variant, p, m, q, params.k, grid)
        i = int(np.argmax(values >= 0))
        assert values[i] >= 0
        brute = grid[i] - 0.5e-6 if i else grid[0]
        worst = max(worst, abs(solve(variant, params) - brute))
    acceptance("AC6 solver vs brute-force scan", worst <= 1e-6, f"max_err={worst:.2e} tol=1e-6 (20 tuples)")


def test_ac7_sharpness(acceptance):
    start = time.perf_counter()
    checks = sharpness_checks()
    elapsed = time.perf_counter() - start
    failed = [c for c in checks if not c["pass"]]
    below = sum(c["name"].startswith("below_") for c in checks)
    above = sum(c["name"].startswith("above_") for c in checks)
    acceptance(
        "AC7 sharpness certification",
        not failed and elapsed < 30,
        f"below={below} above={above} failed={len(failed)} time={elapsed:.2f}s",
    )


def test_ac8_lemma_suites(acceptance):
    start = time.perf_counter()
    reports = run_lemma_suite(seed=0, trials=200)
    special = lemma_special_cases()
    elapsed = time.perf_counter() - start
    worst = min(r.slack for r in reports)
    equality = [r for r in special if r.expect == "equality"]
    violation = [r for r in special if r.expect == "violation"]
    ok = (
        len(reports) == 5
        and worst >= -SLACK_TOL
        and all(abs(r.slack) <= 1e-12 for r in equality)
        and violation
        and all(r.slack < -SLACK_TOL for r in violation)
        and elapsed < 60
    )
    acceptance(
        "AC8 lemma suites",
        ok,
        f"worst_slack={worst:.2e} equality_max={max(abs(r.slack) for r in equality):.1e} "
        f"violation_slack={violation[0].slack:.3f} time={elapsed:.2f}s",
    )


def test_ac9_cap_inequalities(acceptance):
    # the theorems state <=; an exact tie (p = m = 1, K = 1 at 1/3) is compared with a rounding margin
    margin = 1e-12
    violations = []
    for p, m, q, K in itertools.product((1, 2, 3, 5), (1, 2, 3, 5), (1, 2, 3, 5), (1, 2, 5, "inf")):
        params = Params(p, m, q, K)
        for variant in (Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV):
            if solve(variant, params) > cap_radius(RadiusProblem(variant, params)) + margin:
                violations.append((variant.value, p, m, q, K))
        if m >= p and solve(Variant.MAJORANT, params) > 3 ** (-1 / m) + margin:
            violations.append(("majorant", p, m, q, K))
    acceptance("AC9 radius <= cap", not violations, f"violations={violations[:3]} (256 tuples)")
