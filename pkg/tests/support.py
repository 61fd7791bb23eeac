"""Shared sampling helpers for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from cgftools.cgf_core import CycloForm, RationalForm, cyclo_to_rational
from cgftools.monoids import MonoidClass, catalog


def sample_cgfs(count: int, max_degree: int, seed: int, cls: MonoidClass = MonoidClass.PLUS,
                min_degree: int = 1) -> list[tuple[int, ...]]:
    """Pseudo-random enumerated class elements (index tuples) with a fixed seed."""
    cat = catalog(max_degree)
    pool = [e for n in range(min_degree, max_degree + 1) for e in cat.elements(cls, n)]
    return random.Random(seed).sample(pool, count)


def as_rational(indices: tuple[int, ...]) -> RationalForm:
    return cyclo_to_rational(CycloForm(indices=indices))


def cumulants_from_moments(mom: list[Fraction]) -> list[Fraction]:
    """Moment-cumulant recursion ``k_n = m_n - sum C(n-1, j-1) k_j m_{n-j}``; ``mom[0] = 1``."""
    kap = [Fraction(0)]
    for n in range(1, len(mom)):
        kap.append(mom[n] - sum(comb(n - 1, j - 1) * kap[j] * mom[n - j] for j in range(1, n)))
    return kap
