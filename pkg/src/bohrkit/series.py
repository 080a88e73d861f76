"""Truncated power series and the bounded test functions built from them.

Everything here is exact-order arithmetic on complex coefficient vectors
in double precision. Values are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_ORDER = 256
DEFAULT_TAIL_RADIUS = 0.96


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series about 0.

    ``tail_bound``, when set, bounds ``sum_{n>N} |c_n| rho^n`` with
    ``rho = tail_radius``.
    """

    coeffs: np.ndarray
    tail_bound: float | None = None
    tail_radius: float | None = None

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if coeffs.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        if self.tail_bound is not None:
            if self.tail_bound < 0 or not math.isfinite(self.tail_bound):
                raise ValueError(f"tail_bound must be finite and >= 0, got {self.tail_bound}")
            if self.tail_radius is None or not 0 < self.tail_radius < 1:
                raise ValueError("a tail bound must be attached to a radius in (0, 1)")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (scalar or array)."""
        return np.polyval(self.coeffs[::-1], np.asarray(z, dtype=complex))

    def scale(self, factor: complex) -> TruncatedSeries:
        tail = None if self.tail_bound is None else abs(factor) * self.tail_bound
        return TruncatedSeries(factor * self.coeffs, tail, self.tail_radius if tail is not None else None)

    def shift(self, n: int = 1) -> TruncatedSeries:
        """Multiply by ``z**n`` keeping the same order."""
        out = np.zeros_like(self.coeffs)
        if n <= self.order:
            out[n:] = self.coeffs[: self.order + 1 - n]
        return TruncatedSeries(out)


@dataclass(frozen=True)
class BoundedFunction:
    """Analytic self-map of the unit disk with a closed form.

    Use the :func:`mobius`, :func:`blaschke` and :func:`monomial`
    constructors rather than building one by hand.
    """

    kind: str
    a: float = 0.0
    zeros: tuple = field(default_factory=tuple)
    rotation: complex = 1.0
    degree: int = 1

    def __post_init__(self):
        if self.kind == "mobius":
            if not 0 <= self.a < 1:
                raise ValueError(f"mobius parameter must lie in [0, 1), got {self.a}")
        elif self.kind == "blaschke":
            zeros = tuple(complex(w) for w in self.zeros)
            if any(abs(w) >= 1 for w in zeros):
                raise ValueError("Blaschke zeros must lie strictly inside the unit disk")
            if not math.isclose(abs(self.rotation), 1.0, abs_tol=1e-12):
                raise ValueError(f"rotation must be unimodular, got {self.rotation}")
            object.__setattr__(self, "zeros", zeros)
            object.__setattr__(self, "rotation", complex(self.rotation))
        elif self.kind == "monomial":
            if int(self.degree) != self.degree or self.degree < 1:
                raise ValueError(f"monomial degree must be a positive integer, got {self.degree}")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "mobius":
            return (self.a + z) / (1 + self.a * z)
        if self.kind == "monomial":
            return z**self.degree
        out = np.full(z.shape, self.rotation, dtype=complex)
        for w in self.zeros:
            out = out * (z - w) / (1 - np.conj(w) * z)
        return out

    @property
    def vanishing_order(self) -> int:
        """Multiplicity of the zero at the origin."""
        if self.kind == "monomial":
            return int(self.degree)
        if self.kind == "mobius":
            return 1 if self.a == 0 else 0
        return sum(1 for w in self.zeros if w == 0)


def mobius(a: float) -> BoundedFunction:
    """The disk automorphism ``(a + z) / (1 + a z)`` for real ``a`` in [0, 1)."""
    return BoundedFunction("mobius", a=float(a))


def blaschke(zeros: Sequence[complex] = (), rotation: complex = 1.0) -> BoundedFunction:
    return BoundedFunction("blaschke", zeros=tuple(zeros), rotation=rotation)


def monomial(degree: int) -> BoundedFunction:
    return BoundedFunction("monomial", degree=degree)


def _factor_coeffs(alpha: complex, order: int) -> np.ndarray:
    # (z - alpha) / (1 - conj(alpha) z) = -alpha + sum_{n>=1} (1 - |alpha|^2) conj(alpha)^(n-1) z^n
    c = np.empty(order + 1, dtype=complex)
    c[0] = -alpha
    if order >= 1:
        c[1:] = (1 - abs(alpha) ** 2) * np.conj(alpha) ** np.arange(order)
    return c


def _factor_majorant(alpha: complex, rho: float) -> float:
    s = abs(alpha)
    return s + (1 - s * s) * rho / (1 - s * rho)


def expand(
    f: BoundedFunction,
    order: int = DEFAULT_ORDER,
    tail_radius: float | None = DEFAULT_TAIL_RADIUS,
) -> TruncatedSeries:
    """Taylor coefficients of ``f`` about 0 up to ``order``.

    A tail bound at ``tail_radius`` is attached (pass ``None`` to skip
    it). For a Möbius map the bound is the exact geometric tail; for a
    Blaschke product it is the gap between the product of the factor
    majorants and the truncated majorant of the product.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if tail_radius is not None and not 0 < tail_radius < 1:
        raise ValueError(f"tail_radius must lie in (0, 1), got {tail_radius}")
    rho = tail_radius

    if f.kind == "monomial":
        c = np.zeros(order + 1, dtype=complex)
        if f.degree <= order:
            c[f.degree] = 1
        tail = None if rho is None else (0.0 if f.degree <= order else rho**f.degree)
        return TruncatedSeries(c, tail, rho if tail is not None else None)

    if f.kind == "mobius":
        a = f.a
        c = np.empty(order + 1, dtype=complex)
        c[0] = a
        if order >= 1:
            c[1:] = (1 - a * a) * (-a) ** np.arange(order)
        tail = None
        if rho is not None:
            tail = (1 - a * a) * rho * (a * rho) ** order / (1 - a * rho)
        return TruncatedSeries(c, tail, rho if tail is not None else None)

    c = np.zeros(order + 1, dtype=complex)
    c[0] = f.rotation
    majorant = np.zeros(order + 1)
    majorant[0] = 1.0
    for w in f.zeros:
        fc = _factor_coeffs(w, order)
        c = np.convolve(c, fc)[: order + 1]
        majorant = np.convolve(majorant, np.abs(fc))[: order + 1]
    tail = None
    if rho is not None:
        full = math.prod(_factor_majorant(w, rho) for w in f.zeros)
        partial = float(np.polyval(majorant[::-1], rho))
        # difference of two O(1) numbers; pad by a few ulps of the full value
        tail = max(full - partial, 0.0) + 8 * np.finfo(float).eps * full
    return TruncatedSeries(c, tail, rho if tail is not None else None)


def series_mul(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller of the two orders.

    Each antidiagonal is summed over pairs ``u_i v_j + u_j v_i`` in a fixed
    order, so ``series_mul(u, v)`` and ``series_mul(v, u)`` agree bit for bit.
    """
    order = min(u.order, v.order)
    U, V = u.coeffs[: order + 1], v.coeffs[: order + 1]
    # real-part products: numpy's complex multiply may fuse and lose symmetry
    re = np.outer(U.real, V.real) - np.outer(U.imag, V.imag)
    im = np.outer(U.real, V.imag) + np.outer(U.imag, V.real)
    i, j = _upper_pairs(order)
    idx = i + j
    out_re = np.bincount(idx, (re + re.T)[i, j], minlength=order + 1)
    out_im = np.bincount(idx, (im + im.T)[i, j], minlength=order + 1)
    d = np.arange(order // 2 + 1)
    out_re[2 * d] += re[d, d]
    out_im[2 * d] += im[d, d]
    return TruncatedSeries(out_re + 1j * out_im)


_PAIR_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _upper_pairs(order: int):
    if order not in _PAIR_CACHE:
        i, j = np.triu_indices(order + 1, 1)
        keep = i + j <= order
        _PAIR_CACHE[order] = (i[keep], j[keep])
    return _PAIR_CACHE[order]


def series_derivative(u: TruncatedSeries) -> TruncatedSeries:
    if u.order < 1:
        raise ValueError("cannot differentiate an order-0 series")
    n = np.arange(1, u.order + 1)
    return TruncatedSeries(n * u.coeffs[1:])


def series_antiderivative(u: TruncatedSeries) -> TruncatedSeries:
    out = np.zeros(u.order + 2, dtype=complex)
    out[1:] = u.coeffs / np.arange(1, u.order + 2)
    return TruncatedSeries(out)


def abs_sum_at(u: TruncatedSeries, x: float, start: int = 0, with_bound: bool = False):
    """Majorant sum ``sum_{n=start}^{N} |c_n| x^n``.

    With ``with_bound=True`` returns ``(value, uncertainty)`` where the
    uncertainty is the series' tail bound if it was computed at a radius
    no smaller than ``x`` and ``nan`` otherwise.
    """
    if not 0 <= x < 1:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    if not 0 <= start <= u.order:
        raise ValueError(f"start must lie in [0, {u.order}], got {start}")
    n = np.arange(start, u.order + 1)
    value = float(np.sum(np.abs(u.coeffs[start:]) * x**n))
    if not with_bound:
        return value
    if u.tail_bound is not None and u.tail_radius >= x:
        return value, u.tail_bound
    return value, float("nan")


def derivative_over_factorial(u: TruncatedSeries, n: int, z):
    """``f^(n)(z) / n!`` from the truncated coefficients."""
    if n < 0 or n > u.order:
        raise ValueError(f"derivative order must lie in [0, {u.order}], got {n}")
    j = np.arange(n, u.order + 1)
    binom = np.array([math.comb(int(i), n) for i in j], dtype=float)
    return np.polyval((binom * u.coeffs[n:])[::-1], np.asarray(z, dtype=complex))
