"""Bohr functionals of harmonic mappings and their extremal families.

A mapping is ``f = h + conj(g)`` given by truncated series of ``h`` and
``g``. Schwarz functions enter only through ``|omega_j(z)| <= |z|^j``, so
the worst case on ``|z| = r`` is evaluated with ``omega_j(z) = z^j``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .radii import Params, Variant, refined_constant_for
from .series import (
    DEFAULT_ORDER,
    BoundedFunction,
    TruncatedSeries,
    expand,
    mobius,
    series_antiderivative,
    series_derivative,
    series_mul,
)


class DilatationMode(enum.Enum):
    STANDARD = "standard"  # |g'| <= k |h'|
    VANISHING = "vanishing"  # |g'| <= k |z h'|, so b_1 = 0


_REQUIRED_MODE = {
    Variant.MAJORANT: DilatationMode.VANISHING,
    Variant.VALUE_DERIV: DilatationMode.STANDARD,
    Variant.VALUE_SQ_DERIV: DilatationMode.STANDARD,
    Variant.REFINED: DilatationMode.STANDARD,
}

_COEFF_ATOL = 1e-14


@dataclass(frozen=True)
class HarmonicMappingModel:
    h: TruncatedSeries
    g: TruncatedSeries
    mode: DilatationMode = DilatationMode.STANDARD
    k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mode", DilatationMode(self.mode))
        if not 0 <= self.k < 1:
            raise ValueError(f"k must lie in [0, 1), got {self.k}")
        if abs(self.g[0]) > _COEFF_ATOL:
            raise ValueError("the co-analytic part must satisfy g(0) = 0")
        if self.mode is DilatationMode.VANISHING and self.g.order >= 1 and abs(self.g[1]) > _COEFF_ATOL:
            raise ValueError("vanishing dilatation forces b_1 = 0")


@dataclass(frozen=True)
class SchwarzTriple:
    """Orders of the Schwarz functions omega_p, omega_m, omega_q.

    Each entry is a positive integer (meaning ``z**j``) or a
    :class:`BoundedFunction` whose zero at the origin has that order.
    """

    omega_p: int | BoundedFunction = 1
    omega_m: int | BoundedFunction = 1
    omega_q: int | BoundedFunction = 1

    @staticmethod
    def _order(w) -> int:
        j = w if isinstance(w, (int, np.integer)) else w.vanishing_order
        if j < 1:
            raise ValueError("a Schwarz function must vanish at the origin")
        return int(j)

    @property
    def p(self) -> int:
        return self._order(self.omega_p)

    @property
    def m(self) -> int:
        return self._order(self.omega_m)

    @property
    def q(self) -> int:
        return self._order(self.omega_q)

    def check_bound(self, samples: int = 1000, seed: int = 0) -> float:
        """Largest ``|omega_j(z)| - |z|^j`` over random disk points (<= 0 expected)."""
        rng = np.random.default_rng(seed)
        z = np.sqrt(rng.uniform(0, 1, samples)) * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
        worst = -np.inf
        for w in (self.omega_p, self.omega_m, self.omega_q):
            j = self._order(w)
            values = z**j if isinstance(w, (int, np.integer)) else w(z)
            worst = max(worst, float(np.max(np.abs(values) - np.abs(z) ** j)))
        return worst


def _weighted(coeffs: np.ndarray, x: float, start: int, power: int = 1, weight=None) -> float:
    n = np.arange(start, coeffs.size)
    terms = np.abs(coeffs[start:]) ** power * x**n
    if weight is not None:
        terms = terms * weight(n)
    return float(np.sum(terms))


def eval_functional(
    variant,
    mapping: HarmonicMappingModel,
    schwarz: SchwarzTriple,
    r: float,
    mu: float | None = None,
) -> float:
    """Left-hand side of the variant's inequality at ``|z| = r``.

    ``mu`` weighs the area term of the refined functional and defaults to
    the sharp constant for ``(p, m, k)``. Other variants ignore it.
    """
    variant = Variant.parse(variant)
    if variant not in _REQUIRED_MODE:
        raise ValueError(f"{variant.value} is not a functional")
    if not 0 <= r < 1:
        raise ValueError(f"r must lie in [0, 1), got {r}")
    if mapping.mode is not _REQUIRED_MODE[variant]:
        raise ValueError(
            f"{variant.value} needs {_REQUIRED_MODE[variant].value} dilatation, got {mapping.mode.value}"
        )
    a, b = mapping.h.coeffs, mapping.g.coeffs
    p, m, q = schwarz.p, schwarz.m, schwarz.q
    rp, rm = r**p, r**m

    if variant is Variant.MAJORANT:
        return _weighted(a, rp, 0) + _weighted(b, rm, 2)

    if variant in (Variant.VALUE_DERIV, Variant.VALUE_SQ_DERIV):
        value = abs(mapping.h(rm))
        slope = abs(series_derivative(mapping.h)(rm)) if mapping.h.order else 0.0
        head = value**2 if variant is Variant.VALUE_SQ_DERIV else value
        return float(head + slope * r**q + _weighted(a, rp, 2) + _weighted(b, rp, 1))

    if mu is None:
        mu = refined_constant_for(p, m, mapping.k)
    a0 = abs(a[0])
    return float(
        _weighted(a, rp, 0)
        + _weighted(b, rp, 1)
        + (1 / (1 + a0) + rp / (1 - rp)) * _weighted(a, rp * rp, 1, power=2)
        + mu * _weighted(a, rm * rm, 1, power=2, weight=lambda n: n)
    )


def extremal_mapping(variant, a: float, k: float, order: int = DEFAULT_ORDER) -> HarmonicMappingModel:
    """The Möbius extremal ``h_a`` with the variant's co-analytic partner.

    For the majorant theorem ``g' = k z h'``; otherwise ``g = k (h - a)``.
    """
    variant = Variant.parse(variant)
    h = expand(mobius(a), order)
    if variant is Variant.MAJORANT:
        g = series_antiderivative(series_derivative(h).shift(1).scale(k))
        return HarmonicMappingModel(h, g, DilatationMode.VANISHING, k)
    coeffs = k * np.asarray(h.coeffs)
    coeffs[0] = 0
    return HarmonicMappingModel(h, TruncatedSeries(coeffs), DilatationMode.STANDARD, k)


def _log_tail_ratio(y):
    # (y + (1-y) log(1-y)) / (y^2 (1-y)) = sum_{n>=2} (n-1)/n y^(n-2), finite at y = 0
    y = np.asarray(y, dtype=float)
    small = y < 1e-2
    ys = np.where(small, y, 0.0)
    series = np.zeros_like(ys)
    power = np.ones_like(ys)
    for n in range(2, 18):
        series = series + (n - 1) / n * power
        power = power * ys
    yl = np.where(small, 0.5, y)
    direct = (yl + (1 - yl) * np.log1p(-yl)) / (yl * yl * (1 - yl))
    return np.where(small, series, direct)


def extremal_value(variant, a, params: Params, r: float, mu: float | None = None):
    """Closed-form functional on the extremal family at ``z = r``.

    ``a`` may be an array; the result has the same shape. For the refined
    variant ``mu`` defaults to the sharp constant.
    """
    variant = Variant.parse(variant)
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr < 0) or np.any(a_arr >= 1):
        raise ValueError("a must lie in [0, 1)")
    if not 0 <= r < 1:
        raise ValueError(f"r must lie in [0, 1), got {r}")
    p, m, q, k = params.p, params.m, params.q, params.k
    rp, rm = r**p, r**m
    a = a_arr

    if variant is Variant.MAJORANT:
        tail = rm * rm * _log_tail_ratio(a * rm)
        H3 = (1 + a) * rp / (1 - a * rp) + (1 + a) * k * tail - 1
        out = 1 + (1 - a) * H3
    elif variant is Variant.VALUE_DERIV:
        F2 = (
            (1 + a) * r**q / (1 + a * rm) ** 2
            + (1 + a) * a * rp * rp / (1 - a * rp)
            + (1 + a) * k * rp / (1 - a * rp)
            - (1 - rm) / (1 + a * rm)
        )
        out = 1 + (1 - a) * F2
    elif variant is Variant.VALUE_SQ_DERIV:
        F4 = -(1 - rm * rm - r**q) / (1 + a * rm) ** 2 + (k + a * rp) * rp / (1 - a * rp)
        out = 1 + (1 - a * a) * F4
    elif variant is Variant.REFINED:
        if mu is None:
            mu = refined_constant_for(p, m, k)
        F7 = (
            (1 + k) * (1 + a) * rp / (1 - a * rp)
            + (1 - a * a) * rp * rp / ((1 - rp) * (1 - a * rp))
            + (1 - a * a) * (1 + a) * mu * rm * rm / (1 - a * a * rm * rm) ** 2
            - 1
        )
        out = 1 + (1 - a) * F7
    else:
        raise ValueError(f"{variant.value} has no extremal family")
    return float(out) if out.ndim == 0 else out


def default_a_grid() -> np.ndarray:
    """1000 uniform points on [0, 0.999] plus points accumulating at 1."""
    near_one = 1 - np.logspace(-4, -12, 17)
    return np.unique(np.concatenate([np.linspace(0, 0.999, 1000), near_one]))


@dataclass(frozen=True)
class SweepResult:
    max_value: float
    argmax_a: float


def sharpness_sweep(
    variant,
    params: Params,
    r: float,
    a_grid: Sequence[float] | None = None,
    mu: float | None = None,
) -> SweepResult:
    """Maximum of :func:`extremal_value` over ``a_grid`` (ties go to the smallest a)."""
    grid = default_a_grid() if a_grid is None else np.sort(np.asarray(a_grid, dtype=float))
    if grid.size == 0:
        raise ValueError("a_grid must be non-empty")
    values = np.atleast_1d(extremal_value(variant, grid, params, r, mu))
    i = int(np.argmax(values))
    return SweepResult(float(values[i]), float(grid[i]))
