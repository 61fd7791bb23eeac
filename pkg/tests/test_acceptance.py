"""Acceptance criteria, each checked at its stated tolerance.

A summary line per criterion is printed at the end of the pytest run.
"""
import math
import time
from fractions import Fraction

import pytest

from cgftools.cgf_core import NotNonnegative, RationalForm, rational_to_poly
from cgftools.cyclotomic import cyclo
from cgftools.families import bruteforce_oracle, hook_cgf, macmahon_box, partitions_of, qbinomial
from cgftools.asymptotics import diaconis_diagnostics
from cgftools.monoids import MonoidClass, catalog, conjecture_scan
from cgftools.polyring import IntPoly
from cgftools.stats import (
    bernoulli,
    central_moment,
    central_moment_oracle,
    charfun_eval,
    cumulant,
    cyclo_cumulant,
    moment,
    moment_oracle,
)

from support import as_rational, cumulants_from_moments, sample_cgfs

criterion = pytest.mark.criterion
PM, PLUS, UNI, LCC, GALE = (MonoidClass.PM, MonoidClass.PLUS, MonoidClass.UNI, MonoidClass.LCC, MonoidClass.GALE)

COUNTS = {
    LCC: [1, 2, 3, 5, 7, 12, 16, 26, 35, 53, 70, 109, 142, 217, 285, 418, 548, 799],
    UNI: [1, 2, 3, 6, 8, 14, 20, 34, 48, 72, 100, 162, 214, 309, 437, 641, 860, 1205],
    GALE: [1, 3, 4, 10, 12, 27, 33, 68, 82, 154, 187, 346, 410, 714, 857, 1460, 1722, 2860],
    PLUS: [1, 3, 4, 10, 12, 27, 33, 68, 82, 154, 189, 350, 417, 728, 874, 1492, 1767, 2937],
    PM: [2, 6, 10, 24, 38, 78, 118, 224, 330, 584, 838, 1420, 2002, 3258, 4514, 7134, 9754, 15010],
}

GENERATORS = {
    LCC: [1, 1, 1, 1, 1, 2, 2, 4, 4, 7, 8, 18, 19, 37, 42, 66, 87, 132, 157, 252],
    UNI: [1, 1, 1, 2, 2, 3, 4, 7, 10, 9, 15, 28, 30, 34, 66, 82, 125, 126, 222, 294],
    GALE: [1, 2, 1, 3, 1, 4, 1, 6, 1, 5, 1, 14, 2, 9, 4, 28, 1, 33, 14, 61],
    PLUS: [1, 2, 1, 3, 1, 4, 1, 6, 1, 5, 3, 16, 5, 14, 6, 37, 9, 46, 33, 87],
    PM: [2, 3, 0, 4, 0, 4, 0, 5, 0, 2, 0, 6, 0, 0, 0, 6, 0, 4, 0, 5],
}

QBIN_KS = (5, 10, 20, 40, 80)


@criterion(1, "monoid counts, degrees 1..18, exact, < 5 min")
def test_c01_monoid_counts():
    from cgftools.monoids import Catalog

    t0 = time.perf_counter()
    cat = Catalog.build(18)
    got = {cls: [cat.count(cls, n) for n in range(1, 19)] for cls in COUNTS}
    assert time.perf_counter() - t0 < 300
    assert got == COUNTS


@criterion(2, "generator counts, degrees 1..20, exact, < 15 min")
def test_c02_generator_counts():
    from cgftools.monoids import Catalog

    t0 = time.perf_counter()
    cat = Catalog.build(20)
    got = {cls: [len(cat.generators(cls, n)) for n in range(1, 21)] for cls in GENERATORS}
    assert time.perf_counter() - t0 < 900
    assert got == GENERATORS


@criterion(3, "MacMahon (3,2,2) equals the reference polynomial and brute force, f(1) = 50, < 1 s")
def test_c03_macmahon():
    t0 = time.perf_counter()
    reference = IntPoly.parse("1,1,3,4,6,6,8,6,6,4,3,1,1")
    p = rational_to_poly(macmahon_box(3, 2, 2))
    oracle = bruteforce_oracle("plane_partitions", 3, 2, 2)
    assert time.perf_counter() - t0 < 1
    assert p == reference == oracle
    assert p(1) == 50


@criterion(4, "rejection fixtures return NotNonnegative with the reference expansions")
@pytest.mark.parametrize(
    "numer,denom,expansion",
    [
        ((4, 4, 15), (2, 3, 5), "q^13 + q^11 + q^10 - q^9 + 2q^8 + 2q^5 - q^4 + q^3 + q^2 + 1"),
        ((3, 5, 14), (2, 3, 7), "q^10 + q^8 + q^6 - q^5 + q^4 + q^2 + 1"),
        ((1, 6), (2, 3), "q^2 - q + 1"),
    ],
)
def test_c04_rejections(numer, denom, expansion):
    with pytest.raises(NotNonnegative) as e:
        rational_to_poly(RationalForm(numer, denom))
    assert e.value.poly.pretty() == expansion


@criterion(5, "non-Gale counts: 0 for n <= 10, 2 at n = 11 (known forms), 4 at n = 12")
def test_c05_nongale():
    rep = conjecture_scan("nongale_count", 12)
    assert [rep.per_degree[n] for n in range(1, 11)] == [0] * 10
    assert rep.per_degree[11] == 2 and rep.per_degree[12] == 4
    cat = catalog(12)
    nongale11 = set(cat.elements(PLUS, 11)) - set(cat.elements(GALE, 11))
    assert nongale11 == {(2, 3, 3, 3, 12), (2, 2, 2, 2, 2, 6, 12)}


@criterion(6, "majorization and uni_prime_factor scans to degree 20, zero violations, < 30 min")
def test_c06_conjectures():
    t0 = time.perf_counter()
    maj = conjecture_scan("majorization", 20)
    uni = conjecture_scan("uni_prime_factor", 20)
    assert time.perf_counter() - t0 < 1800
    assert maj.checked == sum(catalog(20).count(PLUS, n) for n in range(1, 21))
    assert maj.violations == () and uni.violations == ()


@criterion(7, "200 random CGFs of degree <= 15, d <= 8: cumulants and moments equal the oracle exactly")
def test_c07_oracle_equivalence():
    for ind in sample_cgfs(200, 15, seed=20261019):
        rf = as_rational(ind)
        p = rational_to_poly(rf)
        raw = [Fraction(1)] + [moment_oracle(p, d) for d in range(1, 9)]
        kap = cumulants_from_moments(raw)
        for d in range(1, 9):
            assert moment(rf, d) == raw[d]
            assert central_moment(rf, d) == central_moment_oracle(p, d)
            assert cumulant(rf, d) == kap[d]


def _qbin_diag():
    return [diaconis_diagnostics(qbinomial(2 * k, k)) for k in QBIN_KS]


@criterion(8, "q-binomial (2k, k) trend, < 1 s")
def test_c08_std_k4_strictly_decreasing():
    t0 = time.perf_counter()
    s = [abs(d.std_k4_exact) for d in _qbin_diag()]
    assert time.perf_counter() - t0 < 1
    assert all(a > b for a, b in zip(s, s[1:]))


@criterion(8, "q-binomial (2k, k) trend, < 1 s")
def test_c08_std_k4_at_80_below_002():
    assert abs(_qbin_diag()[-1].std_k4) < 0.02


@criterion(8, "q-binomial (2k, k) trend, < 1 s")
def test_c08_ratio_at_most_one_seventh():
    for k, d in zip(QBIN_KS, _qbin_diag()):
        assert d.ratio <= 1 / 7 + 1e-6, f"k={k}: ratio {d.ratio_exact} = {d.ratio:.6f}"


@criterion(9, "hook formula matches SYT major-index brute force for |lambda| <= 8")
def test_c09_hooks():
    for n in range(1, 9):
        for lam in partitions_of(n):
            assert rational_to_poly(hook_cgf(lam)) == bruteforce_oracle("syt_maj", lam)


@criterion(10, "log phi*(t) <= -t^2/2 on |t| <= 1.4 (tol 1e-9); cyclotomic cumulant bounds n <= 100, d <= 4")
def test_c10_log_phi():
    cat = catalog(14)
    grid = [i / 10 for i in range(-14, 15)]
    for n in range(1, 15):
        for ind in cat.elements(PLUS, n):
            p = rational_to_poly(as_rational(ind))
            for t in grid:
                v = charfun_eval(p, t, standardized=True)
                assert abs(v.imag) < 1e-9 and v.real > 0
                assert math.log(v.real) <= -t * t / 2 + 1e-9, (ind, t)


@criterion(10, "log phi*(t) <= -t^2/2 on |t| <= 1.4 (tol 1e-9); cyclotomic cumulant bounds n <= 100, d <= 4")
def test_c10_cyclotomic_cumulant_bounds():
    violations = []
    for n in range(2, 101):
        for d in range(1, 5):
            k = abs(cyclo_cumulant(n, 2 * d))
            lower = math.factorial(2 * d) / d * (n / (2 * math.pi)) ** (2 * d)
            upper = abs(bernoulli(2 * d)) * Fraction(n ** (2 * d), 2 * d)
            if not (lower <= float(k) * (1 + 1e-6) and k <= upper):
                violations.append((n, d))
            assert cyclo(n).degree > 0
    assert violations == []
