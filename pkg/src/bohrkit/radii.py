"""Radius equations for the harmonic-mapping Bohr inequalities.

Every defining function here is shifted so that it equals -1 at r = 0 and
first crosses zero at the radius of interest; :func:`solve_radius` finds
that first crossing by a coarse scan followed by bisection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

R_MAX = 1 - 1e-9
DEFAULT_TOL = 1e-12
DEFAULT_STEP = 1e-3
BRACKET_WIDTH = 1e-14


class NoRootInUnitInterval(ArithmeticError):
    """The defining function has no sign change on the scanned part of (0, 1)."""


class Variant(enum.Enum):
    MAJORANT = "majorant"
    VALUE_DERIV = "value-deriv"
    VALUE_SQ_DERIV = "value-sq-deriv"
    REFINED = "refined"
    CAP_RMQ = "cap-rmq"
    CAP_R2MQ = "cap-r2mq"
    CAP_THIRDROOT = "cap-thirdroot"

    @classmethod
    def parse(cls, value) -> Variant:
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        for v in cls:
            if text in (v.value, v.name.lower().replace("_", "-")):
                return v
        raise ValueError(f"unknown variant {value!r}; choose from {[v.value for v in cls]}")


THEOREM_VARIANTS = (Variant.MAJORANT, Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV, Variant.REFINED)

_CAP_OF = {
    Variant.MAJORANT: Variant.CAP_THIRDROOT,
    Variant.VALUE_DERIV: Variant.CAP_RMQ,
    Variant.VALUE_SQ_DERIV: Variant.CAP_R2MQ,
    Variant.CAP_THIRDROOT: Variant.CAP_THIRDROOT,
    Variant.CAP_RMQ: Variant.CAP_RMQ,
    Variant.CAP_R2MQ: Variant.CAP_R2MQ,
}


def parse_K(value) -> float:
    """Read a dilatation bound ``K >= 1``; ``"inf"`` is accepted."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    K = float(value)
    if math.isnan(K) or K < 1:
        raise ValueError(f"K must be >= 1 (or 'inf'), got {value!r}")
    return K


def k_from_K(K: float) -> float:
    return 1.0 if math.isinf(K) else (K - 1) / (K + 1)


def K_from_k(k: float) -> float:
    if not 0 <= k <= 1:
        raise ValueError(f"k must lie in [0, 1], got {k}")
    return math.inf if k == 1 else (1 + k) / (1 - k)


@dataclass(frozen=True)
class Params:
    """Schwarz-function orders ``p, m, q`` and quasiconformality ``K``."""

    p: int = 1
    m: int = 1
    q: int = 1
    K: float = 1.0

    def __post_init__(self):
        for name in ("p", "m", "q"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        object.__setattr__(self, "K", parse_K(self.K))

    @property
    def k(self) -> float:
        return k_from_K(self.K)

    @property
    def boundary(self) -> bool:
        """True for K = inf, where k = 1 sits outside the theorems' hypotheses."""
        return math.isinf(self.K)


@dataclass(frozen=True)
class RadiusProblem:
    variant: Variant
    params: Params = Params()

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


def log_excess(x):
    """``x/(1-x) + log(1-x)`` for ``0 <= x < 1`` without cancellation near 0.

    Below 1e-2 the series ``sum_{n>=2} (1 - 1/n) x^n`` is summed instead;
    its terms are O(x^2) while the two closed-form terms are each O(x).
    """
    x = np.asarray(x, dtype=float)
    small = x < 1e-2
    xs = np.where(small, x, 0.0)
    series = np.zeros_like(xs)
    power = xs.copy()
    for n in range(2, 16):
        power = power * xs
        series = series + (1 - 1 / n) * power
    xl = np.where(small, 0.5, x)
    direct = xl / (1 - xl) + np.log1p(-xl)
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def _raw(variant: Variant, params: Params, r):
    p, m, q, k = params.p, params.m, params.q, params.k
    if variant is Variant.MAJORANT:
        rp = r**p
        return 2 * rp / (1 - rp) + 2 * k * log_excess(r**m) - 1
    if variant is Variant.VALUE_DERIV:
        rp, rm = r**p, r**m
        return 2 * r**q / (1 + rm) + 2 * (k + rp) * (1 + rm) * rp / (1 - rp) - (1 - rm)
    if variant is Variant.VALUE_SQ_DERIV:
        rp, rm = r**p, r**m
        return -(1 - rm * rm - r**q) / (1 + rm) ** 2 + (rp + k) * rp / (1 - rp)
    if variant is Variant.REFINED:
        return (2 * k + 3) * r**p - 1
    if variant is Variant.CAP_RMQ:
        return r ** (2 * m) + 2 * r**q - 1
    if variant is Variant.CAP_R2MQ:
        # sign flipped from 1 - r^2m - r^q so that every function starts at -1
        return r ** (2 * m) + r**q - 1
    if variant is Variant.CAP_THIRDROOT:
        return 3 * r**m - 1
    raise ValueError(f"no defining function for {variant}")


def defining_function(problem: RadiusProblem, r):
    """Value of the variant's defining function at ``r`` (scalar or array)."""
    arr = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr >= 1):
        raise ValueError(f"r must lie in [0, 1), got {r}")
    arr = np.minimum(arr, R_MAX)
    out = _raw(problem.variant, problem.params, arr)
    return float(out) if np.ndim(out) == 0 else out


def _bisect(f, lo, hi):
    flo = f(lo)
    iterations = 0
    while hi - lo > BRACKET_WIDTH and iterations < 200:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fmid = f(mid)
        iterations += 1
        if fmid == 0:
            return mid, (mid, mid), 0.0, iterations
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    fhi = f(hi)
    value = lo if abs(flo) <= abs(fhi) else hi
    return value, (lo, hi), f(value), iterations


def _closed_form_bracket(f, value):
    lo = hi = value
    for _ in range(64):
        if f(lo) <= 0:
            break
        lo = np.nextafter(lo, 0.0)
    for _ in range(64):
        if f(hi) >= 0:
            break
        hi = np.nextafter(hi, 1.0)
    return float(lo), float(hi)


def solve_radius(
    problem: RadiusProblem,
    tol: float = DEFAULT_TOL,
    step: float = DEFAULT_STEP,
) -> RootResult:
    """Smallest root in (0, 1) of the problem's defining function.

    Scans ``[0, 1 - 1e-9]`` at ``step`` for the first sign change and
    bisects that bracket down to a width of 1e-14; the end with the smaller
    residual is returned and that residual must not exceed ``tol``. The
    refined variant and the ``3**(-1/m)`` cap have closed forms.

    Raises:
        NoRootInUnitInterval: no sign change on the scan.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0 < step < 1:
        raise ValueError(f"step must lie in (0, 1), got {step}")

    def f(r):
        return float(_raw(problem.variant, problem.params, float(r)))

    if problem.variant is Variant.REFINED:
        p, k = problem.params.p, problem.params.k
        value = (1 / (2 * k + 3)) ** (1 / p)
        return RootResult(value, _closed_form_bracket(f, value), f(value), 0)
    if problem.variant is Variant.CAP_THIRDROOT:
        value = 3 ** (-1 / problem.params.m)
        return RootResult(value, _closed_form_bracket(f, value), f(value), 0)

    grid = np.append(np.arange(0.0, R_MAX, step), R_MAX)
    values = _raw(problem.variant, problem.params, grid)
    hit = np.flatnonzero(values >= 0)
    if hit.size == 0:
        raise NoRootInUnitInterval(
            f"{problem.variant.value} with {problem.params} has no sign change in [0, {R_MAX}]"
        )
    i = int(hit[0])
    if values[i] == 0:
        return RootResult(float(grid[i]), (float(grid[i]), float(grid[i])), 0.0, 0)
    value, bracket, residual, iterations = _bisect(f, float(grid[i - 1]), float(grid[i]))
    if abs(residual) > tol:
        raise ArithmeticError(
            f"bisection stalled with residual {residual:.3g} > tol {tol:.3g} for {problem}"
        )
    return RootResult(value, bracket, residual, iterations)


def cap_radius(problem: RadiusProblem, tol: float = DEFAULT_TOL) -> float:
    """Upper window for the variant's estimate chain.

    ``3**(-1/m)`` for the majorant theorem, otherwise the unique root in
    (0, 1) of ``r^2m + 2 r^q - 1`` or ``1 - r^2m - r^q``.
    """
    try:
        cap_variant = _CAP_OF[problem.variant]
    except KeyError:
        raise ValueError(f"variant {problem.variant.value} has no cap") from None
    return solve_radius(RadiusProblem(cap_variant, problem.params), tol=tol).value


def limiting_radius(variant, params: Params) -> float:
    """Closed-form radius as m -> infinity with p = q = 1."""
    variant = Variant.parse(variant)
    if params.p != 1 or params.q != 1:
        raise ValueError("limiting radii are only known for p = q = 1")
    k = params.k
    if variant is Variant.MAJORANT:
        return 1 / 3
    # (K+1)/(5K+1) and (K+1)/(3K+1), rewritten in k so that K = inf works
    if variant is Variant.VALUE_DERIV:
        return 1 / (3 + 2 * k)
    if variant is Variant.VALUE_SQ_DERIV:
        return 1 / (2 + k)
    raise ValueError(f"no limiting radius for {variant.value}")


def refined_constant_for(p: int, m: int, k: float) -> float:
    r = (1 / (2 * k + 3)) ** (1 / p)
    r2m = r ** (2 * m)
    return (1 - r2m) ** 2 / (8 * r2m)


def refined_constant(params: Params) -> float:
    """Sharp weight ``(1 - r^2m)^2 / (8 r^2m)`` of the area term, r the refined radius."""
    r = solve_radius(RadiusProblem(Variant.REFINED, params)).value
    r2m = r ** (2 * params.m)
    return (1 - r2m) ** 2 / (8 * r2m)
