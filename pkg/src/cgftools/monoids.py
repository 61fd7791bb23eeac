"""Degree-by-degree enumeration of the cyclotomic monoids and their generators.

Elements are multisets of cyclotomic indices, stored as ascending tuples.
Distinct multisets give distinct polynomials, so counting multisets is
counting polynomials; products are expanded only to evaluate class
predicates.
"""
from __future__ import annotations

import enum
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Sequence

from .cgf_core import (
    CycloForm,
    NotCgf,
    RationalForm,
    cgf_check,
    cyclo_to_rational,
    gale_dominates,
    majorizes_both_sides,
    rational_to_poly,
    NotNonnegative,
    NotPolynomial,
)
from .cyclotomic import cyclo, euler_phi, indices_with_totient_at_most, is_prime
from .polyring import IntPoly, NotDivisible, is_lc_no_internal_zeros, is_unimodal, poly_divexact

__all__ = [
    "MonoidClass",
    "EnumRecord",
    "Catalog",
    "catalog",
    "enumerate_class",
    "generators",
    "class_membership",
    "conjecture_scan",
    "ConjectureReport",
    "cgf_graph_path",
    "GraphPathError",
    "is_gale",
]


class MonoidClass(str, enum.Enum):
    PM = "pm"
    PLUS = "plus"
    UNI = "uni"
    LCC = "lcc"
    GALE = "gale"

    @classmethod
    def parse(cls, text: str) -> MonoidClass:
        t = text.strip().lower()
        for c in cls:
            if t in (c.value, c.name.lower()):
                return c
        raise ValueError(f"unknown monoid class {text!r}")


_PLUS, _UNI, _LCC, _GALE = 1, 2, 4, 8
_FLAG = {MonoidClass.PLUS: _PLUS, MonoidClass.UNI: _UNI, MonoidClass.LCC: _LCC, MonoidClass.GALE: _GALE}


def is_gale(indices: Sequence[int]) -> bool:
    """Gale order of the reduced q-integer quotient form (numerator dominates pointwise)."""
    a, b = cyclo_to_rational(CycloForm(indices=tuple(indices))).padded()
    return gale_dominates(a, b)


def _flags(indices: tuple[int, ...], coeffs: tuple[int, ...]) -> int:
    if any(c < 0 for c in coeffs):
        return 0
    f = _PLUS
    if is_unimodal(coeffs):
        f |= _UNI
        if is_lc_no_internal_zeros(coeffs):
            f |= _LCC
    if is_gale(indices):
        f |= _GALE
    return f


def _mul_coeffs(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return tuple(out)


def _stratum(first: int, max_degree: int) -> list[tuple[tuple[int, ...], int]]:
    """All index multisets (indices >= 2) whose smallest index is ``first``.

    Returns ``(indices, class_flags)`` pairs; the DFS carries the running
    product so each multiset costs one polynomial multiplication.
    """
    idx = [n for n in indices_with_totient_at_most(max_degree) if n >= first]
    phis = [euler_phi(n) for n in idx]
    polys = [cyclo(n).coeffs for n in idx]
    out: list[tuple[tuple[int, ...], int]] = []

    def rec(pos: int, chosen: list[int], deg: int, coeffs: tuple[int, ...]) -> None:
        out.append((tuple(chosen), _flags(tuple(chosen), coeffs)))
        for k in range(pos, len(idx)):
            d = deg + phis[k]
            if d > max_degree:
                continue
            chosen.append(idx[k])
            rec(k, chosen, d, _mul_coeffs(coeffs, polys[k]))
            chosen.pop()

    d0 = euler_phi(first)
    if d0 <= max_degree:
        rec(0, [first], d0, polys[0])
    return out


@dataclass
class Catalog:
    """Every element of every class up to ``max_degree``, indexed by degree."""

    max_degree: int
    # degree -> sorted list of (indices, flags) for multisets with indices >= 2
    basic: dict[int, list[tuple[tuple[int, ...], int]]] = field(default_factory=dict)
    _members: dict[MonoidClass, set] = field(default_factory=dict, repr=False)
    _gens: dict[tuple[MonoidClass, int], list[tuple[int, ...]]] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, max_degree: int, threads: int = 1) -> Catalog:
        firsts = [n for n in indices_with_totient_at_most(max_degree) if n >= 2]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as ex:
                chunks = list(ex.map(_stratum, firsts, [max_degree] * len(firsts)))
        else:
            chunks = [_stratum(f, max_degree) for f in firsts]
        basic: dict[int, list] = {d: [] for d in range(max_degree + 1)}
        basic[0].append(((), _PLUS | _UNI | _LCC | _GALE))
        for chunk in chunks:
            for ind, flags in chunk:
                basic[sum(euler_phi(n) for n in ind)].append((ind, flags))
        for d in basic:
            basic[d].sort()
        return cls(max_degree, basic)

    def elements(self, cls: MonoidClass, n: int) -> list[tuple[int, ...]]:
        if n > self.max_degree:
            raise ValueError(f"catalog only reaches degree {self.max_degree}")
        if cls is MonoidClass.PM:
            # Phi_1 has degree 1; prepend j copies to every index-(>=2) multiset of degree n - j
            out = [(1,) * j + ind for j in range(n + 1) for ind, _ in self.basic[n - j]]
            return sorted(out)
        flag = _FLAG[cls]
        return [ind for ind, f in self.basic[n] if f & flag]

    def count(self, cls: MonoidClass, n: int) -> int:
        if cls is MonoidClass.PM:
            return sum(len(self.basic[n - j]) for j in range(n + 1))
        flag = _FLAG[cls]
        return sum(1 for _, f in self.basic[n] if f & flag)

    def members(self, cls: MonoidClass) -> set:
        if cls not in self._members:
            s = set()
            for n in range(self.max_degree + 1):
                s.update(self.elements(cls, n))
            self._members[cls] = s
        return self._members[cls]

    def generators(self, cls: MonoidClass, n: int) -> list[tuple[int, ...]]:
        """Elements of degree ``n`` with no factorization into two non-unit class members."""
        key = (cls, n)
        if key in self._gens:
            return self._gens[key]
        if cls is MonoidClass.PM:
            gens = [(i,) for i in indices_with_totient_at_most(n) if euler_phi(i) == n]
        else:
            members = self.members(cls)
            gens = [e for e in self.elements(cls, n) if not _splits(e, members)]
        self._gens[key] = gens
        return gens


def _splits(element: tuple[int, ...], members: set) -> bool:
    cnt = sorted(Counter(element).items())
    vals = [v for v, _ in cnt]
    ranges = [range(m + 1) for _, m in cnt]
    full = tuple(m for _, m in cnt)
    for pick in cartesian(*ranges):
        if not any(pick) or pick == full:
            continue
        # each split is visited twice; only test the half with pick <= complement
        comp = tuple(f - p for f, p in zip(full, pick))
        if pick > comp:
            continue
        left = tuple(v for v, k in zip(vals, pick) for _ in range(k))
        right = tuple(v for v, k in zip(vals, comp) for _ in range(k))
        if left in members and right in members:
            return True
    return False


_catalogs: dict[int, Catalog] = {}
_catalog_lock = threading.Lock()


def catalog(max_degree: int, threads: int = 1) -> Catalog:
    """Shared catalog reaching at least ``max_degree``."""
    with _catalog_lock:
        for d in sorted(_catalogs):
            if d >= max_degree:
                return _catalogs[d]
    cat = Catalog.build(max_degree, threads)
    with _catalog_lock:
        _catalogs.setdefault(max_degree, cat)
    return cat


@dataclass(frozen=True)
class EnumRecord:
    degree: int
    cls: MonoidClass
    elements: tuple[tuple[int, ...], ...]
    count: int
    generators: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "class": self.cls.value,
            "count": self.count,
            "elements": [list(e) for e in self.elements],
            "generators": [list(g) for g in self.generators],
        }


def enumerate_class(cls: MonoidClass | str, n: int, threads: int = 1) -> EnumRecord:
    cls = MonoidClass.parse(cls) if isinstance(cls, str) else cls
    if n < 1:
        raise ValueError("degree must be positive")
    cat = catalog(n, threads)
    els = cat.elements(cls, n)
    return EnumRecord(n, cls, tuple(els), len(els), tuple(cat.generators(cls, n)))


def generators(cls: MonoidClass | str, n: int, threads: int = 1) -> list[CycloForm | tuple[int, ...]]:
    """Generators of degree ``n`` as index tuples (PM generators may be ``(1,)``)."""
    cls = MonoidClass.parse(cls) if isinstance(cls, str) else cls
    return list(catalog(n, threads).generators(cls, n))


def _pm_factor(p: IntPoly) -> list[int] | None:
    if p.is_zero() or abs(p.coeffs[-1]) != 1:
        return None
    rest = p
    deg0 = p.degree
    found: list[int] = []
    n = 1
    while rest.degree > 0 and n <= max(2, 2 * deg0 * deg0):
        phi = cyclo(n)
        while phi.degree <= rest.degree:
            try:
                rest = poly_divexact(rest, phi)
            except NotDivisible:
                break
            found.append(n)
        n += 1
    return found if rest.coeffs == (1,) else None


def class_membership(x: IntPoly | CycloForm | Sequence[int], cls: MonoidClass | str) -> bool:
    """Membership of a polynomial, a basic cyclotomic form, or an index multiset."""
    cls = MonoidClass.parse(cls) if isinstance(cls, str) else cls
    if isinstance(x, IntPoly):
        if cls is MonoidClass.PM:
            return _pm_factor(x) is not None
        try:
            cf = cgf_check(x)
        except NotCgf:
            return False
        if not cf.basic:
            return False
        indices, coeffs = cf.indices, x.coeffs
    else:
        indices = tuple(sorted(x.indices if isinstance(x, CycloForm) else x))
        if isinstance(x, CycloForm) and not x.basic:
            return False
        if cls is MonoidClass.PM:
            return all(n >= 1 for n in indices)
        if any(n < 2 for n in indices):
            return False
        coeffs = IntPoly((1,)).coeffs
        for n in indices:
            coeffs = _mul_coeffs(coeffs, cyclo(n).coeffs)
    flags = _flags(tuple(indices), tuple(coeffs))
    return bool(flags & _FLAG[cls])


@dataclass(frozen=True)
class ConjectureReport:
    which: str
    max_degree: int
    checked: int
    violations: tuple = ()
    per_degree: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "max_degree": self.max_degree,
            "checked": self.checked,
            "violations": [list(v) if isinstance(v, tuple) else v for v in self.violations],
            "per_degree": {str(k): v for k, v in self.per_degree.items()},
        }


def conjecture_scan(which: str, max_degree: int, threads: int = 1) -> ConjectureReport:
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    cat = catalog(max_degree, threads)
    checked = 0
    violations: list = []
    per_degree: dict[int, int] = {}
    if which == "majorization":
        for n in range(1, max_degree + 1):
            for ind in cat.elements(MonoidClass.PLUS, n):
                checked += 1
                a, b = cyclo_to_rational(CycloForm(indices=ind)).padded()
                if not majorizes_both_sides(a, b):
                    violations.append(ind)
    elif which == "uni_prime_factor":
        for n in range(1, max_degree + 1):
            for ind in cat.elements(MonoidClass.UNI, n):
                checked += 1
                if not any(is_prime(i) for i in ind):
                    violations.append(ind)
    elif which == "nongale_count":
        for n in range(1, max_degree + 1):
            per_degree[n] = cat.count(MonoidClass.PLUS, n) - cat.count(MonoidClass.GALE, n)
            checked += cat.count(MonoidClass.PLUS, n)
    else:
        raise ValueError(f"unknown conjecture {which!r}")
    return ConjectureReport(which, max_degree, checked, tuple(violations), per_degree)


class GraphPathError(ValueError):
    pass


def _is_basic_cgf(numer: Iterable[int], denom: Iterable[int]) -> bool:
    try:
        rational_to_poly(RationalForm(tuple(numer), tuple(denom)))
    except (NotPolynomial, NotNonnegative):
        return False
    return True


def cgf_graph_path(
    B: Sequence[int], A: Sequence[int], A2: Sequence[int]
) -> list[tuple[int, ...]]:
    """A verified path from ``A`` to ``A2`` in the fixed-denominator CGF graph.

    With ``h_k = A_k * A2_k``, walk ``A`` to ``h`` replacing one entry at a time,
    then ``h`` to ``A2`` the same way.  Replacing ``[x]`` by ``[xy]`` multiplies
    by ``[y]_{q^x}``, so every intermediate numerator stays a CGF; each step is
    still re-verified and a failure raises :class:`GraphPathError`.
    """
    A, A2, B = list(A), list(A2), list(B)
    if not (len(A) == len(A2) == len(B)):
        raise ValueError("multisets must have equal size")
    for end in (A, A2):
        if not _is_basic_cgf(end, B):
            raise GraphPathError(f"endpoint {tuple(end)} over {tuple(B)} is not a CGF")
    if sorted(A) == sorted(A2):
        return [tuple(A)]
    h = [x * y for x, y in zip(A, A2)]
    path = [tuple(A)]
    cur = list(A)
    for k in range(len(A)):
        cur[k] = h[k]
        path.append(tuple(cur))
    for k in range(len(A)):
        cur[k] = A2[k]
        path.append(tuple(cur))
    dedup = [path[0]]
    for step in path[1:]:
        if step != dedup[-1]:
            dedup.append(step)
    for step in dedup:
        if not _is_basic_cgf(step, B):
            raise GraphPathError(f"intermediate {step} over {tuple(B)} is not a CGF")
    return dedup
