"""Exact cumulants and moments of CGF distributions, plus characteristic functions.

For ``f = alpha q^beta prod [a_j]/[b_j]`` the distribution ``P(X = k) = c_k / f(1)``
has cumulants ``kappa_d = (B_d / d) * sum(a^d - b^d)`` (with ``B_1 = +1/2``),
and ``beta`` shifts the mean.  Everything here is exact ``Fraction`` arithmetic
except the characteristic-function evaluators.
"""
from __future__ import annotations

import cmath
import math
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .cgf_core import RationalForm
from .cyclotomic import jordan
from .polyring import IntPoly

__all__ = [
    "bernoulli",
    "power_sum",
    "cumulant",
    "cumulants",
    "CumulantVector",
    "moment",
    "central_moment",
    "moment_oracle",
    "central_moment_oracle",
    "cyclo_cumulant",
    "charfun_eval",
    "charfun_sinc",
    "log_charfun_coeffs",
    "LogCharCoeff",
    "partitions",
    "format_rat",
]

_bern: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli(d: int) -> Fraction:
    """Bernoulli number ``B_d`` with the ``B_1 = +1/2`` convention."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 1:
        return Fraction(1, 2)
    with _bern_lock:
        # standard recurrence sum_{j<=m} C(m+1, j) B_j = 0, which yields B_1 = -1/2
        while len(_bern) <= d:
            m = len(_bern)
            s = sum(comb(m + 1, j) * _bern[j] for j in range(m))
            _bern.append(-s / (m + 1))
        return _bern[d]


def power_sum(rf: RationalForm, d: int) -> int:
    return sum(a**d for a in rf.numer) - sum(b**d for b in rf.denom)


def cumulant(rf: RationalForm, d: int) -> Fraction:
    if d < 1:
        raise ValueError("cumulant order must be positive")
    k = bernoulli(d) / d * power_sum(rf, d)
    if d == 1:
        k += rf.beta
    return k


@dataclass(frozen=True)
class CumulantVector:
    entries: tuple[Fraction, ...]
    source: RationalForm

    def __getitem__(self, d: int) -> Fraction:
        return self.entries[d - 1]

    def to_json(self) -> list[dict]:
        return [
            {"d": d, "num": str(k.numerator), "den": str(k.denominator), "float": float(k)}
            for d, k in enumerate(self.entries, start=1)
        ]


def cumulants(rf: RationalForm, max_d: int) -> CumulantVector:
    return CumulantVector(tuple(cumulant(rf, d) for d in range(1, max_d + 1)), rf)


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` with weakly decreasing parts."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _z(parts: tuple[int, ...]) -> int:
    z = 1
    for i, m in Counter(parts).items():
        z *= i**m * factorial(m)
    return z


def _moment_sum(rf: RationalForm, d: int, allow_one: bool) -> Fraction:
    weights: dict[int, Fraction] = {}

    def w(j: int) -> Fraction:
        if j not in weights:
            weights[j] = cumulant(rf, 1) if j == 1 else bernoulli(j) / factorial(j) * power_sum(rf, j)
        return weights[j]

    total = Fraction(0)
    df = factorial(d)
    for lam in partitions(d):
        if any(p % 2 and not (allow_one and p == 1) for p in lam):
            continue
        term = Fraction(df, _z(lam))
        for p in lam:
            term *= w(p)
        total += term
    return total


def moment(rf: RationalForm, d: int) -> Fraction:
    """Raw moment ``E[X^d]``: partitions of ``d`` with all parts even or equal to 1."""
    if d == 0:
        return Fraction(1)
    return _moment_sum(rf, d, allow_one=True)


def central_moment(rf: RationalForm, d: int) -> Fraction:
    """Central moment ``E[(X - mu)^d]``: partitions of ``d`` with all parts even."""
    if d == 0:
        return Fraction(1)
    return _moment_sum(rf, d, allow_one=False)


def _check_distribution(p: IntPoly) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial has no distribution")
    if any(c < 0 for c in p.coeffs):
        raise ValueError("negative coefficient: not a distribution")
    return sum(p.coeffs)


def moment_oracle(p: IntPoly, d: int) -> Fraction:
    """``sum k^d c_k / f(1)`` computed directly from the coefficients."""
    total = _check_distribution(p)
    return Fraction(sum(k**d * c for k, c in enumerate(p.coeffs)), total)


def central_moment_oracle(p: IntPoly, d: int) -> Fraction:
    total = _check_distribution(p)
    mu = moment_oracle(p, 1)
    return sum((Fraction(k) - mu) ** d * c for k, c in enumerate(p.coeffs)) / total


def cyclo_cumulant(n: int, d: int) -> Fraction:
    """Formal cumulant of ``Phi_n``: ``(B_d / d) J_d(n)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return bernoulli(d) / d * jordan(d, n)


def charfun_eval(p: IntPoly, t: float, standardized: bool = False) -> complex:
    """``f(e^{it}) / f(1)``, or the standardized version ``e^{-it mu/sigma} phi(t / sigma)``."""
    total = _check_distribution(p)
    shift = 0.0
    if standardized:
        mu = moment_oracle(p, 1)
        var = moment_oracle(p, 2) - mu * mu
        if var == 0:
            raise ValueError("cannot standardize a point mass")
        sigma = math.sqrt(var)
        t = t / sigma
        shift = float(mu) * t
    acc = 0j
    for k, c in enumerate(p.coeffs):
        if c:
            acc += c * cmath.exp(1j * (k * t - shift))
    return acc / total


def _sinc(x: float) -> float:
    return 1.0 if x == 0 else math.sin(x) / x


def charfun_sinc(rf: RationalForm, t: float, guard: float = 1e-6) -> complex:
    """Characteristic function from the product ``e^{it mu} prod sinc(a t/2) / sinc(b t/2)``.

    Cross-check path only: raises ``ValueError`` when ``t`` lies within ``guard``
    of a zero of some denominator factor.
    """
    for b in rf.denom:
        if b > 1:
            x = b * t / (2 * math.pi)
            if abs(x - round(x)) * 2 * math.pi / b < guard and round(x) != 0:
                raise ValueError(f"t too close to a zero of [{b}]")
    mu = float(cumulant(rf, 1))
    val = complex(cmath.exp(1j * t * mu))
    for a in rf.numer:
        val *= _sinc(a * t / 2)
    for b in rf.denom:
        val /= _sinc(b * t / 2)
    return val


@dataclass(frozen=True)
class LogCharCoeff:
    """Term ``value * z^order / order!`` of the standardized log characteristic function."""

    order: int
    kappa: Fraction
    sigma_pow: Fraction
    value: float

    @property
    def exact(self) -> Fraction:
        sign = -1 if (self.order // 2) % 2 else 1
        return sign * self.kappa / self.sigma_pow


def log_charfun_coeffs(rf: RationalForm, max_order: int) -> list[LogCharCoeff]:
    k2 = cumulant(rf, 2)
    if k2 == 0:
        raise ValueError("constant distribution has no standardized form")
    out = []
    for order in range(2, max_order + 1, 2):
        d = order // 2
        kap = cumulant(rf, order)
        spow = k2**d
        exact = (-1) ** d * kap / spow
        out.append(LogCharCoeff(order, kap, spow, float(exact)))
    return out


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
