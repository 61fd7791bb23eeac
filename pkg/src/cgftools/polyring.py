"""Dense univariate polynomials with exact integer coefficients.

A polynomial is stored low-to-high, so ``IntPoly((1, 0, 2))`` is ``1 + 2q^2``.
Trailing zeros are stripped on construction; the zero polynomial has an empty
coefficient tuple and degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


@dataclass(frozen=True, init=False)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Parse ``"1,1,3,4"`` (low-to-high coefficients)."""
        parts = [p.strip() for p in text.split(",")]
        out = []
        pos = 0
        for p in parts:
            try:
                out.append(int(p))
            except ValueError:
                raise ValueError(f"bad coefficient {p!r} at position {pos}") from None
            pos += len(p) + 1
        return cls(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other: IntPoly) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self), len(other))
        return IntPoly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: IntPoly) -> IntPoly:
        n = max(len(self), len(other))
        return IntPoly(self[k] - other[k] for k in range(n))

    def __floordiv__(self, other: IntPoly) -> IntPoly:
        return poly_divexact(self, other)

    def __call__(self, x):
        return poly_eval(self, x)

    def shift(self, k: int) -> IntPoly:
        """Multiply by ``q^k``."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def pretty(self, var: str = "q") -> str:
        """Human-readable form, highest degree first."""
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"IntPoly({self.pretty()!r})"


ONE = IntPoly((1,))
Q = IntPoly((0, 1))


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return IntPoly()
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    # b is the shorter factor; skip its zero coefficients (cyclotomics are sparse)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return IntPoly(out)


def poly_divexact(p: IntPoly, d: IntPoly) -> IntPoly:
    """Return ``r`` with ``p == d * r``, or raise :class:`NotDivisible`.

    Plain long division; at every step the leading coefficient of ``d`` must
    divide the current leading coefficient, otherwise the quotient would not be
    integral.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return IntPoly()
    rem = list(p.coeffs)
    dc = d.coeffs
    dn = len(dc) - 1
    lead = dc[-1]
    qlen = len(rem) - dn
    if qlen <= 0:
        raise NotDivisible(f"deg {p.degree} < deg {d.degree}")
    quot = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        top = rem[k + dn]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise NotDivisible("non-integral quotient coefficient")
        quot[k] = c
        for j, dj in enumerate(dc):
            if dj:
                rem[k + j] -= c * dj
    if any(rem[:dn]):
        raise NotDivisible("nonzero remainder")
    return IntPoly(quot)


def poly_eval(p: IntPoly, x):
    """Horner evaluation; works for ints, Fractions, floats and complex."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_eval_int(p: IntPoly, x: int) -> int:
    return int(poly_eval(p, int(x)))


def content(p: IntPoly) -> int:
    g = 0
    for c in p.coeffs:
        g = gcd(g, c)
    return g


def zero_order(p: IntPoly) -> int:
    """Largest ``b`` with ``q^b`` dividing ``p`` (``p`` nonzero)."""
    for k, c in enumerate(p.coeffs):
        if c:
            return k
    raise ValueError("zero polynomial")


def is_unimodal(c: Sequence[int]) -> bool:
    k, n = 0, len(c)
    while k + 1 < n and c[k] <= c[k + 1]:
        k += 1
    while k + 1 < n and c[k] >= c[k + 1]:
        k += 1
    return k >= n - 1


def is_lc_no_internal_zeros(c: Sequence[int]) -> bool:
    support = [k for k, x in enumerate(c) if x]
    if not support:
        return False
    lo, hi = support[0], support[-1]
    if hi - lo + 1 != len(support):
        return False
    return all(c[k] * c[k] >= c[k - 1] * c[k + 1] for k in range(lo + 1, hi))


@dataclass(frozen=True)
class CoeffProfile:
    nonnegative: bool
    monic: bool
    palindromic: bool
    unimodal: bool
    log_concave_no_internal_zeros: bool
    content: int
    zero_order: int


def poly_profile(p: IntPoly) -> CoeffProfile:
    if p.is_zero():
        raise ValueError("profile of the zero polynomial is undefined")
    c = p.coeffs
    return CoeffProfile(
        nonnegative=all(x >= 0 for x in c),
        monic=c[-1] == 1,
        palindromic=c == c[::-1],
        unimodal=is_unimodal(c),
        log_concave_no_internal_zeros=is_lc_no_internal_zeros(c),
        content=abs(content(p)),
        zero_order=zero_order(p),
    )
