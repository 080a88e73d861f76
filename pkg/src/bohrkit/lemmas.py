"""Numerical oracles for the coefficient lemmas behind the radius theorems.

Each ``check_*`` function evaluates one inequality on a batch of points
and returns a :class:`CheckReport` whose ``slack`` is the smallest
``rhs - lhs`` seen. A check passes when ``slack >= -SLACK_TOL``; the
tolerance absorbs truncation and rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .functionals import DilatationMode
from .series import (
    DEFAULT_ORDER,
    BoundedFunction,
    TruncatedSeries,
    blaschke,
    derivative_over_factorial,
    expand,
    series_antiderivative,
    series_derivative,
    series_mul,
)

SLACK_TOL = 1e-9
EQUALITY_TOL = 1e-12
LEMMA4_MAX_R = 1 / 3


@dataclass
class CheckReport:
    name: str
    slack: float
    params: dict = field(default_factory=dict)
    evaluations: int = 0
    expect: str = "bound"

    @property
    def passed(self) -> bool:
        if self.expect == "equality":
            return abs(self.slack) <= EQUALITY_TOL
        if self.expect == "violation":
            return self.slack < -SLACK_TOL
        return self.slack >= -SLACK_TOL

    def as_dict(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        return out


def _coeffs(f) -> TruncatedSeries:
    return f if isinstance(f, TruncatedSeries) else expand(f, DEFAULT_ORDER)


def _describe(f) -> dict:
    if isinstance(f, TruncatedSeries):
        return {"kind": "series", "order": f.order}
    if f.kind == "mobius":
        return {"kind": "mobius", "a": f.a}
    if f.kind == "monomial":
        return {"kind": "monomial", "degree": f.degree}
    return {"kind": "blaschke", "degree": len(f.zeros)}


def random_disk_points(rng: np.random.Generator, n: int, max_modulus: float = 1.0) -> np.ndarray:
    """Points uniform in area on the disk of radius ``max_modulus``."""
    radius = max_modulus * np.sqrt(rng.uniform(0, 1, n))
    return radius * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def random_blaschke(rng: np.random.Generator, max_degree: int = 5, max_modulus: float = 0.8) -> BoundedFunction:
    degree = int(rng.integers(1, max_degree + 1))
    zeros = random_disk_points(rng, degree, max_modulus)
    rotation = np.exp(2j * np.pi * rng.uniform())
    return blaschke(zeros, rotation)


def check_pick(f: BoundedFunction, samples: int = 1000, seed: int = 0, points=None) -> CheckReport:
    """Pick's form of the Schwarz lemma at random points of the disk."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    z = random_disk_points(np.random.default_rng(seed), samples, 0.999) if points is None else np.asarray(points)
    f0 = abs(complex(f(0)))
    rz = np.abs(z)
    rhs = (f0 + rz) / (1 + f0 * rz)
    slack = float(np.min(rhs - np.abs(f(z))))
    return CheckReport("pick", slack, {"f": _describe(f), "seed": seed}, int(z.size))


def check_coeff_and_derivative_bounds(
    f,
    z_samples: Sequence[complex] | None = None,
    n_max: int = 8,
    seed: int = 0,
) -> CheckReport:
    """``|a_n| <= 1 - |a_0|^2`` and the pointwise bound on ``f^(n)(z)/n!``.

    Derivatives come from the truncated Taylor series, so sample points
    should stay well inside the disk (the default draws ``|z| <= 0.8``).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    series = _coeffs(f)
    c = series.coeffs
    bound = 1 - abs(c[0]) ** 2
    slack = float(np.min(bound - np.abs(c[1 : n_max + 1])))
    z = random_disk_points(np.random.default_rng(seed), 64, 0.8) if z_samples is None else np.asarray(z_samples)
    fz = series(z)
    rz = np.abs(z)
    for n in range(1, n_max + 1):
        lhs = np.abs(derivative_over_factorial(series, n, z))
        rhs = (1 - np.abs(fz) ** 2) / ((1 - rz) ** (n - 1) * (1 - rz**2))
        slack = min(slack, float(np.min(rhs - lhs)))
    return CheckReport(
        "coeff_and_derivative",
        slack,
        {"f": _describe(f), "n_max": n_max, "seed": seed},
        n_max * (1 + int(z.size)),
    )


@dataclass(frozen=True)
class PairSample:
    """Analytic part ``h`` and dilatation shape ``phi`` defining ``g``.

    ``g' = scale * k * phi * h'`` (STANDARD) or ``g' = scale * k * z * phi * h'``
    (VANISHING), integrated with ``g(0) = 0``. ``scale > 1`` builds
    deliberately invalid pairs for negative tests.
    """

    h: BoundedFunction
    phi: BoundedFunction
    k: float
    mode: DilatationMode = DilatationMode.STANDARD
    seed: int = 0
    scale: float = 1.0
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        object.__setattr__(self, "mode", DilatationMode(self.mode))
        if not 0 <= self.k < 1:
            raise ValueError(f"k must lie in [0, 1), got {self.k}")

    def build(self) -> tuple[TruncatedSeries, TruncatedSeries]:
        h = expand(self.h, self.order)
        phi = expand(self.phi, self.order)
        dg = series_mul(phi, series_derivative(h)).scale(self.scale * self.k)
        if self.mode is DilatationMode.VANISHING:
            dg = dg.shift(1)
        return h, series_antiderivative(dg)

    def describe(self) -> dict:
        return {
            "h": _describe(self.h),
            "phi": _describe(self.phi),
            "k": self.k,
            "mode": self.mode.value,
            "seed": self.seed,
            "scale": self.scale,
        }


def random_pair(seed: int, k: float, mode=DilatationMode.STANDARD) -> PairSample:
    rng = np.random.default_rng(seed)
    return PairSample(random_blaschke(rng), random_blaschke(rng), k, mode, seed)


def check_l2_dilatation(sample: PairSample, r_grid: Sequence[float] = tuple(np.arange(1, 10) / 10)) -> CheckReport:
    """``sum |b_n|^2 r^n <= k^2 sum |a_n|^2 r^n`` for ``|g'| <= k |h'|``."""
    if sample.mode is not DilatationMode.STANDARD:
        raise ValueError("the l2 dilatation bound needs a STANDARD pair")
    h, g = sample.build()
    a2 = np.abs(h.coeffs[1:]) ** 2
    b2 = np.abs(g.coeffs[1 : h.order + 1]) ** 2
    n = np.arange(1, h.order + 1)
    slack = math.inf
    for r in r_grid:
        w = float(r) ** n
        slack = min(slack, float(sample.k**2 * np.sum(a2 * w) - np.sum(b2 * w)))
    return CheckReport("l2_dilatation", slack, sample.describe(), len(r_grid))


def check_weighted_l1(sample: PairSample, r_grid: Sequence[float] = (0.05, 0.15, 1 / 3)) -> CheckReport:
    """``sum n |b_n| r^(n-1) <= k sum n |a_n| r^n`` for ``|g'| <= k |z h'|``, r <= 1/3."""
    if sample.mode is not DilatationMode.VANISHING:
        raise ValueError("the weighted l1 bound needs a VANISHING pair")
    r_grid = [float(r) for r in r_grid]
    if any(r < 0 or r > LEMMA4_MAX_R + 1e-15 for r in r_grid):
        raise ValueError("the weighted l1 bound only holds for 0 <= r <= 1/3")
    h, g = sample.build()
    na = np.arange(h.order + 1) * np.abs(h.coeffs)
    nb = np.arange(g.order + 1) * np.abs(g.coeffs)
    slack = math.inf
    for r in r_grid:
        lhs = float(np.sum(nb[1:] * r ** np.arange(g.order)))
        rhs = sample.k * float(np.sum(na * r ** np.arange(h.order + 1)))
        slack = min(slack, rhs - lhs)
    return CheckReport("weighted_l1", slack, sample.describe(), len(r_grid))


def check_refined(f, N: int, r_grid: Sequence[float] = tuple(np.arange(1, 10) / 10)) -> CheckReport:
    """Refined majorant bound with squared-coefficient corrections.

    Uses ``1/(1 + |a_0|)``; a rotation making ``a_0 >= 0`` leaves every
    ``|a_n|`` unchanged. Any attached tail bound is added to the left side.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    series = _coeffs(f)
    abs_c = np.abs(series.coeffs)
    a0 = abs_c[0]
    t = (N - 1) // 2
    n = np.arange(series.order + 1)
    slack = math.inf
    for r in r_grid:
        r = float(r)
        tail = 0.0
        if series.tail_bound is not None and series.tail_radius >= r:
            tail = series.tail_bound
        majorant = float(np.sum(abs_c[N:] * r ** n[N:])) + tail
        head = float(np.sum(abs_c[1 : t + 1] ** 2)) * r**N / (1 - r) if t > 0 else 0.0
        squares = float(np.sum(abs_c[t + 1 :] ** 2 * r ** (2 * n[t + 1 :]))) + tail**2
        lhs = majorant + head + (1 / (1 + a0) + r / (1 - r)) * squares
        rhs = (1 - a0**2) * r**N / (1 - r)
        slack = min(slack, rhs - lhs)
    return CheckReport("refined", slack, {"f": _describe(f), "N": N}, len(r_grid))


K_SAMPLES = (0.0, 0.3, 0.7, 0.95)


def run_lemma_suite(seed: int = 0, trials: int = 200) -> list[CheckReport]:
    """Seeded Monte Carlo run of all five oracles.

    Trial ``i`` uses seed ``seed + i`` so any failure can be replayed alone.
    Returns the worst report per oracle.
    """
    worst: dict[str, CheckReport] = {}

    def keep(report: CheckReport):
        best = worst.get(report.name)
        if best is None or report.slack < best.slack:
            worst[report.name] = report

    for i in range(trials):
        s = seed + i
        rng = np.random.default_rng(s)
        f = random_blaschke(rng)
        k = K_SAMPLES[i % len(K_SAMPLES)]
        keep(_with_seed(check_pick(f, 200, seed=s), s))
        keep(_with_seed(check_coeff_and_derivative_bounds(f, n_max=8, seed=s), s))
        keep(check_l2_dilatation(random_pair(s, k, DilatationMode.STANDARD)))
        keep(check_weighted_l1(random_pair(s, k, DilatationMode.VANISHING)))
        keep(_with_seed(check_refined(f, int(rng.integers(1, 6))), s))
    for report in worst.values():
        report.params["trials"] = trials
        report.params["base_seed"] = seed
    return [worst[name] for name in ("pick", "coeff_and_derivative", "l2_dilatation", "weighted_l1", "refined")]


def _with_seed(report: CheckReport, seed: int) -> CheckReport:
    report.params["seed"] = seed
    return report


def _expecting(report: CheckReport, expect: str, name: str) -> CheckReport:
    report.expect = expect
    report.name = name
    return report


def lemma_special_cases() -> list[CheckReport]:
    """Equality cases of the lemmas and one pair that must be rejected."""
    from .series import mobius, monomial

    z = monomial(1)
    one = blaschke()
    real_points = np.linspace(0.05, 0.95, 19)
    vanishing = DilatationMode.VANISHING
    return [
        _expecting(check_pick(z, points=real_points), "equality", "pick_identity"),
        _expecting(check_pick(mobius(0.6), points=real_points), "equality", "pick_mobius"),
        _expecting(check_coeff_and_derivative_bounds(z, z_samples=[0], n_max=1), "equality", "coeff_identity"),
        _expecting(check_l2_dilatation(PairSample(mobius(0.4), one, 0.7)), "equality", "l2_constant_phi"),
        _expecting(
            check_weighted_l1(PairSample(z, one, 0.7, vanishing), r_grid=(0.1, 0.2, 1 / 3)),
            "equality",
            "weighted_l1_identity",
        ),
        _expecting(check_refined(z, 1), "equality", "refined_identity"),
        _expecting(
            check_weighted_l1(PairSample(mobius(0.5), one, 0.7, vanishing, scale=1.5)),
            "violation",
            "weighted_l1_inflated_dilatation",
        ),
    ]
