"""Asymptotic-normality diagnostics for sequences of basic CGFs.

Everything here evaluates finitely many points of a family, so verdicts are
trend heuristics and never a proof of a limit statement.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .cgf_core import RationalForm, polynomiality_check
from .stats import bernoulli, cumulant

__all__ = [
    "Diagnostics",
    "MultisetSeq",
    "ScanResult",
    "diaconis_diagnostics",
    "normality_scan",
    "eventually_constant",
    "rescaled_multiset",
    "pointwise_converges",
    "uniform_sum_cumulant",
    "HEURISTIC_NOTE",
]

HEURISTIC_NOTE = "heuristic trend check over a finite grid; not a proof"
CSV_COLUMNS = ("N", "ratio", "quartic", "std_k3", "std_k4", "ms_bound", "sigma", "mu")


@dataclass(frozen=True)
class Diagnostics:
    ratio: float
    quartic: float
    std_k3: float
    std_k4: float
    ms_bound: float
    sigma: float
    mu: float
    # exact values kept alongside the floats
    ratio_exact: Fraction = field(compare=False, repr=False, default=Fraction(0))
    std_k4_exact: Fraction = field(compare=False, repr=False, default=Fraction(0))

    def to_json(self) -> dict:
        d = asdict(self)
        d["ratio_exact"] = str(self.ratio_exact)
        d["std_k4_exact"] = str(self.std_k4_exact)
        return d


def diaconis_diagnostics(rf: RationalForm) -> Diagnostics:
    """Variance ratio, quartic sum, standardized cumulants and the MS bound of ``rf``.

    Sums run over the multisets exactly as given; padding 1's contribute
    nothing to the ratio.  Reducing a form first changes the ratio, so callers
    choose which presentation to diagnose.
    """
    num = [a for a in rf.numer]
    den = [b for b in rf.denom]
    s_num = sum(a * a - 1 for a in num)
    s_den = sum(b * b - 1 for b in den)
    if s_num - s_den <= 0:
        raise ValueError("constant distribution: variance is zero")
    k2 = cumulant(rf, 2)
    k3 = cumulant(rf, 3)
    k4 = cumulant(rf, 4)
    sigma = math.sqrt(k2)
    top = max(num)
    ratio = Fraction(s_den, s_num)
    std_k4 = k4 / (k2 * k2)
    return Diagnostics(
        ratio=float(ratio),
        quartic=float(sum(Fraction(a, top) ** 4 for a in num)),
        std_k3=float(k3) / sigma**3,
        std_k4=float(std_k4),
        ms_bound=top / math.sqrt(sum(a * a for a in num) - sum(b * b for b in den)),
        sigma=sigma,
        mu=float(cumulant(rf, 1)),
        ratio_exact=ratio,
        std_k4_exact=std_k4,
    )


@dataclass(frozen=True)
class MultisetSeq:
    label: str
    points: tuple[tuple[int, RationalForm], ...]

    def __post_init__(self):
        pts = tuple((int(n), rf) for n, rf in self.points)
        for n, rf in pts:
            if polynomiality_check(rf) is not None:
                raise ValueError(f"point N={n} of {self.label!r} is not a polynomial")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class ScanResult:
    label: str
    rows: tuple[tuple[int, Diagnostics], ...]
    verdict: str
    criteria: dict
    note: str = HEURISTIC_NOTE

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for n, d in self.rows:
            w.writerow([n] + [f"{getattr(d, c):.12g}" for c in CSV_COLUMNS[1:]])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "verdict": self.verdict,
            "criteria": dict(self.criteria),
            "note": self.note,
            "rows": [{"N": n, **d.to_json()} for n, d in self.rows],
        }


def _strictly_decreasing(xs: Sequence) -> bool:
    return all(x > y for x, y in zip(xs, xs[1:]))


def _strictly_increasing(xs: Sequence) -> bool:
    return all(x < y for x, y in zip(xs, xs[1:]))


def normality_scan(
    seq: MultisetSeq,
    ratio_max: float = 0.95,
    quartic_min: float = 10.0,
    threads: int = 1,
) -> ScanResult:
    if len(seq.points) < 3:
        raise ValueError("normality_scan needs at least 3 points")
    if not ratio_max < 1:
        raise ValueError("ratio_max must be below 1")
    rfs = [rf for _, rf in seq.points]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            diags = list(ex.map(diaconis_diagnostics, rfs))
    else:
        diags = [diaconis_diagnostics(rf) for rf in rfs]
    rows = tuple((n, d) for (n, _), d in zip(seq.points, diags))
    quart = [d.quartic for d in diags]
    criteria = {
        "ratio_bounded": all(d.ratio <= ratio_max for d in diags),
        "quartic_increasing": _strictly_increasing(quart),
        "quartic_exceeds_min": quart[-1] > quartic_min,
        "std_k4_decreasing": _strictly_decreasing([abs(d.std_k4_exact) for d in diags]),
    }
    verdict = "normal-consistent" if all(criteria.values()) else "inconclusive"
    return ScanResult(seq.label, rows, verdict, criteria)


def eventually_constant(seq: MultisetSeq) -> int | None:
    """First ``N`` after which every reduced form in the grid is identical, if the tail has length >= 2."""
    reduced = [rf.reduced() for _, rf in seq.points]
    start = len(reduced) - 1
    while start > 0 and reduced[start - 1] == reduced[-1]:
        start -= 1
    if start == len(reduced) - 1:
        return None
    return seq.points[start][0]


def _pnorm(xs: Sequence[float], p: float) -> float:
    if math.isinf(p):
        return float(max(xs))
    return sum(x**p for x in xs) ** (1.0 / p)


def rescaled_multiset(a: Sequence[int | float], p: float = 2.0) -> tuple[tuple[float, ...], float]:
    """``(sorted(a / |a|_2, descending), |a|_p)``."""
    if not a:
        raise ValueError("empty multiset")
    if p < 1:
        raise ValueError("p must be at least 1")
    n2 = _pnorm(a, 2.0)
    vec = tuple(sorted((x / n2 for x in a), reverse=True))
    return vec, _pnorm(a, p)


def pointwise_converges(vectors: Sequence[Sequence[float]], tol: float = 1e-3) -> bool:
    """Sorted, zero-padded vectors whose last two entries agree elementwise within ``tol``."""
    if len(vectors) < 2:
        return False
    u, v = vectors[-2], vectors[-1]
    width = max(len(u), len(v))
    u = list(u) + [0.0] * (width - len(u))
    v = list(v) + [0.0] * (width - len(v))
    return all(abs(x - y) <= tol for x, y in zip(u, v))


def uniform_sum_cumulant(t: Sequence[float], d: int) -> float:
    """``d``-th cumulant of a centered sum of independent uniforms of widths ``t``."""
    if d < 1:
        raise ValueError("d must be positive")
    if any(x < 0 for x in t):
        raise ValueError("widths must be nonnegative")
    if d == 1:
        return 0.0
    return float(bernoulli(d)) / d * sum(float(x) ** d for x in t)
