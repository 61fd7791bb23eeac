"""CGF membership and the cyclotomic / q-integer quotient forms.

A cyclotomic generating function is ``alpha * q^beta * prod Phi_n(q)`` with
nonnegative coefficients.  The same polynomial can be written as a quotient
of q-integers ``prod [a_j] / prod [b_j]``; :class:`RationalForm` holds that
presentation and :class:`CycloForm` holds the factored one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, NamedTuple

from .cyclotomic import cyclo, cyclo_rational, divisors, euler_phi
from .polyring import IntPoly, NotDivisible, content, poly_divexact, poly_mul, zero_order

__all__ = [
    "CycloForm",
    "RationalForm",
    "NecessaryReport",
    "Classification",
    "NotCgf",
    "NotPolynomial",
    "NotNonnegative",
    "cgf_check",
    "is_cgf",
    "cyclo_to_rational",
    "cyclo_to_poly",
    "rational_to_poly",
    "cyclo_multiplicities",
    "polynomiality_check",
    "coeff_via_partitions",
    "necessary_conditions",
    "classify_small",
    "in_span",
]


class NotCgf(ValueError):
    """``reason`` is ``"NegativeCoefficient"`` or ``"NonCyclotomicResidue"``."""

    def __init__(self, reason: str, residue: IntPoly | None = None):
        super().__init__(reason)
        self.reason = reason
        self.residue = residue


class NotPolynomial(ValueError):
    def __init__(self, witness: int):
        super().__init__(f"Phi_{witness} has negative multiplicity")
        self.reason = "NotPolynomial"
        self.witness = witness


class NotNonnegative(ValueError):
    def __init__(self, poly: IntPoly):
        super().__init__(f"negative coefficient in {poly.pretty()}")
        self.reason = "NotNonnegative"
        self.poly = poly


@dataclass(frozen=True)
class CycloForm:
    alpha: int = 1
    beta: int = 0
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        if self.alpha < 1 or self.beta < 0:
            raise ValueError("alpha must be positive and beta nonnegative")
        if any(n < 2 for n in self.indices):
            raise ValueError("cyclotomic indices must be >= 2")

    @property
    def basic(self) -> bool:
        return self.alpha == 1 and self.beta == 0

    @property
    def degree(self) -> int:
        return self.beta + sum(euler_phi(n) for n in self.indices)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "indices": list(self.indices)}

    def pretty(self) -> str:
        if not self.indices:
            body = "1"
        else:
            cnt = Counter(self.indices)
            body = " ".join(
                f"Phi_{n}" + (f"^{cnt[n]}" if cnt[n] > 1 else "") for n in sorted(cnt, reverse=True)
            )
        pre = "" if self.alpha == 1 else f"{self.alpha} "
        if self.beta:
            pre += "q " if self.beta == 1 else f"q^{self.beta} "
        return pre + body


@dataclass(frozen=True)
class RationalForm:
    """``alpha * q^beta * prod [numer] / prod [denom]``; multisets kept sorted descending."""

    numer: tuple[int, ...] = ()
    denom: tuple[int, ...] = ()
    alpha: int = 1
    beta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "numer", tuple(sorted(self.numer, reverse=True)))
        object.__setattr__(self, "denom", tuple(sorted(self.denom, reverse=True)))
        if any(x < 1 for x in self.numer + self.denom):
            raise ValueError("q-integer arguments must be positive")
        if self.alpha < 1 or self.beta < 0:
            raise ValueError("alpha must be positive and beta nonnegative")

    @classmethod
    def parse(cls, text: str) -> RationalForm:
        """Parse ``"6,5,5,4/3,2,2,1"``; either side may be empty."""
        if text.count("/") != 1:
            raise ValueError(f"expected exactly one '/' in {text!r}")
        left, right = text.split("/")

        def side(s: str, offset: int) -> list[int]:
            out = []
            pos = offset
            for tok in s.split(","):
                t = tok.strip()
                if t:
                    try:
                        out.append(int(t))
                    except ValueError:
                        raise ValueError(f"bad entry {t!r} at position {pos}") from None
                pos += len(tok) + 1
            return out

        return cls(tuple(side(left, 0)), tuple(side(right, len(left) + 1)))

    @classmethod
    def from_json(cls, obj: dict) -> RationalForm:
        return cls(
            tuple(obj.get("numer", ())),
            tuple(obj.get("denom", ())),
            int(obj.get("alpha", 1)),
            int(obj.get("beta", 0)),
        )

    def to_text(self) -> str:
        return ",".join(map(str, self.numer)) + "/" + ",".join(map(str, self.denom))

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "numer": list(self.numer), "denom": list(self.denom)}

    @property
    def degree(self) -> int:
        return self.beta + sum(self.numer) - sum(self.denom)

    def __mul__(self, other: RationalForm) -> RationalForm:
        return RationalForm(
            self.numer + other.numer,
            self.denom + other.denom,
            self.alpha * other.alpha,
            self.beta + other.beta,
        )

    def basic(self) -> RationalForm:
        return RationalForm(self.numer, self.denom)

    def reduced(self) -> RationalForm:
        """Cancel common entries, drop every ``[1]``, then pad the shorter side with 1's."""
        num, den = Counter(self.numer), Counter(self.denom)
        common = num & den
        num -= common
        den -= common
        num.pop(1, None)
        den.pop(1, None)
        a, b = list(num.elements()), list(den.elements())
        m = max(len(a), len(b))
        a += [1] * (m - len(a))
        b += [1] * (m - len(b))
        return RationalForm(tuple(a), tuple(b), self.alpha, self.beta)

    def padded(self) -> tuple[list[int], list[int]]:
        """Ascending numerator and denominator, padded with 1's to equal length."""
        a, b = sorted(self.numer), sorted(self.denom)
        m = max(len(a), len(b))
        return [1] * (m - len(a)) + a, [1] * (m - len(b)) + b


def cyclo_multiplicities(rf: RationalForm) -> Counter:
    """Multiplicity of each ``Phi_l`` (``l >= 2``) in the quotient; may be negative."""
    mult: Counter = Counter()
    for a in rf.numer:
        for d in divisors(a)[1:]:
            mult[d] += 1
    for b in rf.denom:
        for d in divisors(b)[1:]:
            mult[d] -= 1
    return mult


def polynomiality_check(rf: RationalForm) -> int | None:
    """``None`` when the quotient is a polynomial, else the smallest failing ``l``.

    Uses the divisor-count test ``#{a : l | a} >= #{b : l | b}`` for every ``l >= 2``.
    """
    top = max(rf.denom, default=1)
    for ell in range(2, top + 1):
        if sum(1 for a in rf.numer if a % ell == 0) < sum(1 for b in rf.denom if b % ell == 0):
            return ell
    return None


def _expand(indices: Iterable[int]) -> IntPoly:
    p = IntPoly((1,))
    for n in sorted(indices):
        p = poly_mul(p, cyclo(n))
    return p


def cyclo_to_poly(cf: CycloForm) -> IntPoly:
    return (_expand(cf.indices) * cf.alpha).shift(cf.beta)


def rational_to_poly(rf: RationalForm) -> IntPoly:
    """Expand ``rf``; raise :class:`NotPolynomial` or :class:`NotNonnegative` on failure."""
    mult = cyclo_multiplicities(rf)
    bad = sorted(ell for ell, m in mult.items() if m < 0)
    if bad:
        raise NotPolynomial(bad[0])
    idx = [ell for ell, m in mult.items() for _ in range(m)]
    p = (_expand(idx) * rf.alpha).shift(rf.beta)
    if any(c < 0 for c in p.coeffs):
        raise NotNonnegative(p)
    return p


def cgf_check(p: IntPoly) -> CycloForm:
    """Factor ``p`` as ``alpha q^beta prod Phi_n``; raise :class:`NotCgf` otherwise.

    Divides off ``Phi_n`` for ``n = 2, 3, ...`` while exact.  Since
    ``phi(n) >= sqrt(n/2)``, no index above ``2 deg^2`` can divide.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial is not a CGF")
    if any(c < 0 for c in p.coeffs):
        raise NotCgf("NegativeCoefficient")
    beta = zero_order(p)
    alpha = content(p)
    rest = IntPoly(c // alpha for c in p.coeffs[beta:])
    deg0 = rest.degree
    indices: list[int] = []
    n = 2
    while rest.degree > 0 and n <= 2 * deg0 * deg0:
        if euler_phi(n) <= rest.degree:
            phi = cyclo(n)
            while True:
                try:
                    rest = poly_divexact(rest, phi)
                except NotDivisible:
                    break
                indices.append(n)
                if rest.degree < phi.degree:
                    break
        n += 1
    if rest.coeffs != (1,):
        raise NotCgf("NonCyclotomicResidue", rest)
    return CycloForm(alpha, beta, tuple(indices))


def is_cgf(p: IntPoly) -> bool:
    try:
        cgf_check(p)
    except NotCgf:
        return False
    return True


def cyclo_to_rational(cf: CycloForm) -> RationalForm:
    num: list[int] = []
    den: list[int] = []
    for n in cf.indices:
        a, b = cyclo_rational(n)
        num += a
        den += b
    return RationalForm(tuple(num), tuple(den), cf.alpha, cf.beta).reduced()


def _gbinom(x: int, k: int) -> int:
    """``binom(x, k)`` for any integer ``x`` (falling factorial over ``k!``)."""
    if k < 0:
        return 0
    if x >= 0:
        return comb(x, k)
    # binom(-y, k) = (-1)^k binom(y + k - 1, k)
    return (-1) ** k * comb(-x + k - 1, k)


def coeff_via_partitions(rf: RationalForm, k: int) -> int:
    """Coefficient of ``q^k`` in the power series of ``rf`` via the partition-sum formula.

    With ``M_i = #{b = i} - #{a = i}``, the basic series coefficient is
    ``sum_{mu |- k} prod_i binom(M_i + m_i(mu) - 1, m_i(mu))``.  Partitions that
    use a part ``i`` with ``M_i <= 0`` more than ``|M_i|`` times contribute 0 and
    are never generated.
    """
    k -= rf.beta
    if k < 0:
        return 0
    cnt_b, cnt_a = Counter(rf.denom), Counter(rf.numer)
    M = {i: cnt_b[i] - cnt_a[i] for i in set(cnt_a) | set(cnt_b)}
    parts = sorted((i for i, m in M.items() if m != 0 and i <= k), reverse=True)

    def rec(pos: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        if pos == len(parts):
            return 0
        i = parts[pos]
        Mi = M[i]
        cap = remaining // i if Mi > 0 else min(remaining // i, -Mi)
        total = 0
        for m in range(cap + 1):
            sub = rec(pos + 1, remaining - m * i)
            if sub:
                total += _gbinom(Mi + m - 1, m) * sub
        return total

    return rf.alpha * rec(0, k)


def in_span(target: int, gens: Iterable[int]) -> bool:
    """Whether ``target`` is a nonnegative integer combination of ``gens``."""
    gens = sorted({g for g in gens if 0 < g <= target})
    reach = bytearray(target + 1)
    reach[0] = 1
    for g in gens:
        for v in range(g, target + 1):
            if reach[v - g]:
                reach[v] = 1
    return bool(reach[target])


def _span_table(limit: int, gens: Iterable[int]) -> bytearray:
    reach = bytearray(limit + 1)
    reach[0] = 1
    for g in sorted({g for g in gens if 0 < g <= limit}):
        for v in range(g, limit + 1):
            if reach[v - g]:
                reach[v] = 1
    return reach


@dataclass(frozen=True)
class NecessaryReport:
    span_ok: tuple[bool, ...]
    ends_ok: bool
    variance_bounds_ok: bool
    kurtosis_ok: bool
    power_sums_ok: dict[int, bool] = field(default_factory=dict)
    majorization_ok: bool = True
    gale_ok: bool = True
    pointwise_ok: bool = True

    @property
    def mandatory_ok(self) -> bool:
        """Every condition that a genuine CGF must satisfy (Gale/pointwise excluded)."""
        return (
            all(self.span_ok)
            and self.ends_ok
            and self.variance_bounds_ok
            and self.kurtosis_ok
            and all(self.power_sums_ok.values())
            and self.majorization_ok
        )

    def to_json(self) -> dict:
        return {
            "span_ok": list(self.span_ok),
            "ends_ok": self.ends_ok,
            "variance_bounds_ok": self.variance_bounds_ok,
            "kurtosis_ok": self.kurtosis_ok,
            "power_sums_ok": {str(d): v for d, v in self.power_sums_ok.items()},
            "majorization_ok": self.majorization_ok,
            "gale_ok": self.gale_ok,
            "pointwise_ok": self.pointwise_ok,
        }


POWER_SUM_ORDERS = (1, 2, 4, 6, 8)


def majorizes_both_sides(a: list[int], b: list[int]) -> bool:
    """Prefix and suffix sums of ascending ``a`` dominate those of ``b``."""
    pa = pb = 0
    for x, y in zip(a, b):
        pa += x
        pb += y
        if pa < pb:
            return False
    sa = sb = 0
    for x, y in zip(reversed(a), reversed(b)):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def gale_dominates(a: list[int], b: list[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


def necessary_conditions(rf: RationalForm) -> NecessaryReport:
    a, b = rf.reduced().padded()
    top = max(a, default=0)
    reach = _span_table(top, b)
    span_ok = tuple(bool(reach[x]) for x in a)
    ends_ok = not a or (a[0] >= b[0] and a[-1] >= b[-1])

    s1 = sum(a) - sum(b)
    s2 = sum(x * x for x in a) - sum(y * y for y in b)
    s4 = sum(x**4 for x in a) - sum(y**4 for y in b)
    mu = Fraction(s1, 2)
    var = Fraction(s2, 12)
    variance_ok = mu / 2 <= var <= mu * mu
    kurtosis_ok = True if s2 == 0 else Fraction(s4, s2 * s2) <= Fraction(5, 3)
    power = {d: sum(x**d for x in a) >= sum(y**d for y in b) for d in POWER_SUM_ORDERS}
    gale = gale_dominates(a, b)
    return NecessaryReport(
        span_ok=span_ok,
        ends_ok=ends_ok,
        variance_bounds_ok=variance_ok,
        kurtosis_ok=kurtosis_ok,
        power_sums_ok=power,
        majorization_ok=majorizes_both_sides(a, b),
        gale_ok=gale,
        pointwise_ok=gale,
    )


class Classification(NamedTuple):
    cgf: bool
    reason: str


def classify_small(rf: RationalForm) -> Classification:
    """Decide CGF-ness of a reduced quotient with at most two non-unit factors per side."""
    red = rf.reduced()
    a, b = red.padded()
    m = len(a)
    if m > 2:
        raise ValueError(f"classify_small handles m <= 2, got m = {m}")
    if m == 0:
        return Classification(True, "constant")
    if m == 1:
        (x,), (y,) = a, b
        if x % y == 0:
            return Classification(True, f"{y} | {x}")
        return Classification(False, f"{y} does not divide {x}")
    a1, a2 = a
    b1, b2 = b
    g = gcd(b1, b2)
    cases = []
    if a1 % b1 == 0 and a2 % b2 == 0:
        cases.append("i")
    if a2 % b1 == 0 and a1 % b2 == 0:
        cases.append("ii")
    if a1 % b1 == 0 and a1 % b2 == 0 and a2 % g == 0:
        cases.append("iii")
    if a2 % b1 == 0 and a2 % b2 == 0 and a1 % g == 0:
        cases.append("iv")
    if not cases:
        return Classification(False, "not a polynomial")
    bad = [x for x in (a1, a2) if not in_span(x, (b1, b2))]
    if bad:
        return Classification(False, f"{bad[0]} not in span{{{b1},{b2}}}")
    return Classification(True, "divisibility case " + "/".join(cases) + " with span")
