"""Command-line front end: radii, reference tables, plot data, verification."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import functionals, lemmas
from .radii import (
    DEFAULT_STEP,
    DEFAULT_TOL,
    THEOREM_VARIANTS,
    NoRootInUnitInterval,
    Params,
    RadiusProblem,
    Variant,
    cap_radius,
    defining_function,
    limiting_radius,
    parse_K,
    refined_constant,
    solve_radius,
)

EXIT_FAILED_CHECK = 1
EXIT_NO_ROOT = 3

# printed values with their per-cell tolerance
REFERENCE_TABLES = {
    1: [({"m": m}, v, 1e-5) for m, v in zip((1, 2, 3, 5, 7), (1 / 3, 0.57735, 0.693361, 0.802742, 0.854751))],
    2: [
        ({"m": 1, "q": 1}, math.sqrt(2) - 1, 1e-5),
        ({"m": 3, "q": 3}, 0.745432, 1e-5),
        ({"m": 3, "q": 2}, 0.673348, 1e-5),
        ({"m": 5, "q": 30}, 0.948565, 1e-5),
        ({"m": 10, "q": 30}, 0.958906, 1e-5),
    ],
    3: [
        ({"m": 1, "q": 1}, (math.sqrt(5) - 1) / 2, 1e-5),
        ({"m": 3, "q": 3}, 0.8518, 1e-4),
        ({"m": 3, "q": 2}, 0.826031, 1e-5),
        ({"m": 5, "q": 30}, 0.962497, 1e-5),
        ({"m": 10, "q": 30}, 0.972272, 1e-5),
    ],
}
_TABLE_VARIANT = {1: Variant.CAP_THIRDROOT, 2: Variant.CAP_RMQ, 3: Variant.CAP_R2MQ}

LIMIT_KS = (1, 2, 5, 100)
SHARPNESS_GRID = (1, 2, 3)
SHARPNESS_KS = (1, 2, 5)


@dataclass
class OutputRecord:
    variant: str
    p: int
    m: int
    q: int
    K: float | str
    radius: float
    cap: float | None
    residual: float
    notes: str


def _fmt_K(K: float) -> float | str:
    return "inf" if math.isinf(K) else K


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _params(args) -> Params:
    return Params(p=args.p, m=args.m, q=args.q, K=args.K)


def cmd_radius(variant, params: Params, tol: float = DEFAULT_TOL, step: float = DEFAULT_STEP) -> OutputRecord:
    problem = RadiusProblem(variant, params)
    result = solve_radius(problem, tol=tol, step=step)
    notes = [f"tol={tol:g}", f"step={step:g}", f"iterations={result.iterations}"]
    cap = None
    if problem.variant in (Variant.MAJORANT, Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV):
        cap = cap_radius(problem, tol=tol)
        if result.value > cap:
            notes.append("radius exceeds cap")
    if problem.variant is Variant.REFINED:
        notes.append(f"refined_constant={refined_constant(params)!r}")
    if params.boundary:
        notes.append("boundary regime K=inf")
    return OutputRecord(
        problem.variant.value, params.p, params.m, params.q, _fmt_K(params.K),
        result.value, cap, result.residual, ";".join(notes),
    )


def cmd_table(which: int, tol: float = DEFAULT_TOL) -> list[dict]:
    """Rows of a reference table with the recomputed value and its error."""
    rows = []
    for cell, printed, cell_tol in REFERENCE_TABLES[which]:
        params = Params(m=cell["m"], q=cell.get("q", 1))
        value = solve_radius(RadiusProblem(_TABLE_VARIANT[which], params), tol=tol).value
        err = abs(value - printed)
        rows.append({**cell, "value": value, "printed": printed, "abs_err": err, "tol": cell_tol, "ok": err <= cell_tol})
    return rows


def cmd_sweep(variant, params: Params, r_min: float, r_max: float, steps: int) -> list[tuple]:
    """``(kind, r, value)`` rows: the grid, then root and cap marker rows."""
    if not 0 <= r_min < r_max < 1:
        raise ValueError("need 0 <= r_min < r_max < 1")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    problem = RadiusProblem(variant, params)
    grid = np.linspace(r_min, r_max, steps)
    values = defining_function(problem, grid)
    rows = [("grid", float(r), float(v)) for r, v in zip(grid, values)]
    root = solve_radius(problem)
    rows.append(("root", root.value, root.residual))
    if problem.variant is not Variant.REFINED:
        cap = cap_radius(problem)
        rows.append(("cap", cap, defining_function(problem, min(cap, 1 - 1e-9))))
    return rows


def _check(name, params, slack, passed) -> dict:
    return {"name": name, "params": params, "slack": slack, "pass": bool(passed)}


def limits_checks() -> list[dict]:
    checks = []
    for variant in (Variant.MAJORANT, Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV):
        for K in LIMIT_KS:
            params = Params(p=1, m=200, q=1, K=K)
            err = abs(solve_radius(RadiusProblem(variant, params)).value - limiting_radius(variant, params))
            checks.append(_check(f"limit_{variant.value}", {"m": 200, "K": K}, 1e-6 - err, err <= 1e-6))
    for K in LIMIT_KS:
        params = Params(p=1, m=1, K=K)
        closed = 8 * K**2 * (3 * K + 1) ** 2 / ((K + 1) ** 2 * (5 * K + 1) ** 2)
        err = abs(refined_constant(params) - closed)
        checks.append(_check("refined_constant_p_eq_m", {"K": K}, 1e-12 - err, err <= 1e-12))
    return checks


def sharpness_checks() -> list[dict]:
    """Below/above-radius certification on the extremal family."""
    checks = []
    for variant in THEOREM_VARIANTS:
        for p, m, q in itertools.product(SHARPNESS_GRID, repeat=3):
            if variant is Variant.REFINED and q != 1:
                continue
            for K in SHARPNESS_KS:
                params = Params(p, m, q, K)
                radius = solve_radius(RadiusProblem(variant, params)).value
                tag = {"p": p, "m": m, "q": q, "K": K, "radius": radius}
                below = functionals.sharpness_sweep(variant, params, radius - 1e-2)
                slack = 1 + 1e-9 - below.max_value
                checks.append(_check(f"below_{variant.value}", tag, slack, slack >= 0))
                if variant is Variant.MAJORANT and radius > 3 ** (-1 / m):
                    continue
                above = functionals.sharpness_sweep(variant, params, radius + 1e-2)
                checks.append(
                    _check(f"above_{variant.value}", {**tag, "argmax_a": above.argmax_a},
                           above.max_value - 1, above.max_value > 1)
                )
    return checks


def lemma_checks(seed: int) -> list[dict]:
    reports = lemmas.run_lemma_suite(seed) + lemmas.lemma_special_cases()
    return [_check(r.name, {**r.params, "expect": r.expect}, r.slack, r.passed) for r in reports]


SUITES = {
    "lemmas": lemma_checks,
    "sharpness": lambda seed: sharpness_checks(),
    "limits": lambda seed: limits_checks(),
}


def cmd_verify(suite: str, seed: int = 0) -> dict:
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        checks.extend(SUITES[name](seed))
    return {"suite": suite, "seed": seed, "checks": checks}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p, variant_default="majorant"):
        p.add_argument("--variant", default=variant_default, choices=[v.value for v in Variant])
        p.add_argument("--p", type=int, default=1)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--q", type=int, default=1)
        p.add_argument("--K", type=parse_K, default=1.0, help="dilatation bound, a number >= 1 or 'inf'")

    radius = sub.add_parser("radius", help="solve one radius equation")
    add_params(radius)
    radius.add_argument("--tol", type=float, default=DEFAULT_TOL)
    radius.add_argument("--step", type=float, default=DEFAULT_STEP)
    radius.add_argument("--out", choices=("csv", "json"), default="csv")

    table = sub.add_parser("table", help="recompute a reference table")
    table.add_argument("which", type=int, choices=(1, 2, 3))
    table.add_argument("--check", action="store_true", help="fail if a cell misses its printed value")
    table.add_argument("--tol", type=float, default=DEFAULT_TOL)
    table.add_argument("--out", choices=("csv", "json"), default="csv")

    sweep = sub.add_parser("sweep", help="defining-function values for plotting")
    add_params(sweep)
    sweep.add_argument("--r-min", type=float, default=0.0)
    sweep.add_argument("--r-max", type=float, default=0.99)
    sweep.add_argument("--steps", type=int, default=100)
    sweep.add_argument("--out", choices=("csv", "json"), default="csv")

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", choices=("lemmas", "sharpness", "limits", "all"), default="all")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out", choices=("csv", "json"), default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout

    if args.command == "radius":
        try:
            params = _params(args)
            record = cmd_radius(args.variant, params, args.tol, args.step)
        except NoRootInUnitInterval as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NO_ROOT
        except ValueError as exc:
            parser.error(str(exc))
        row = asdict(record)
        if args.out == "json":
            out.write(json.dumps(row) + "\n")
        else:
            out.write(_csv(list(row), [[("" if v is None else v) for v in row.values()]]))
        return 0

    if args.command == "table":
        rows = cmd_table(args.which, args.tol)
        if args.out == "json":
            out.write(json.dumps({"table": args.which, "rows": rows}) + "\n")
        else:
            keys = [k for k in rows[0] if args.check or k not in ("printed", "abs_err", "tol", "ok")]
            out.write(_csv(keys, [[row[k] for k in keys] for row in rows]))
        if args.check and not all(row["ok"] for row in rows):
            return EXIT_FAILED_CHECK
        return 0

    if args.command == "sweep":
        try:
            rows = cmd_sweep(args.variant, _params(args), args.r_min, args.r_max, args.steps)
        except NoRootInUnitInterval as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NO_ROOT
        except ValueError as exc:
            parser.error(str(exc))
        if args.out == "json":
            out.write(json.dumps([{"kind": k, "r": r, "value": v} for k, r, v in rows]) + "\n")
        else:
            out.write(_csv(("kind", "r", "value"), rows))
        return 0

    report = cmd_verify(args.suite, args.seed)
    if args.out == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(_csv(("name", "params", "slack", "pass"),
                       [(c["name"], json.dumps(c["params"], sort_keys=True), c["slack"], c["pass"])
                        for c in report["checks"]]))
    return 0 if all(c["pass"] for c in report["checks"]) else EXIT_FAILED_CHECK


if __name__ == "__main__":
    sys.exit(main())
