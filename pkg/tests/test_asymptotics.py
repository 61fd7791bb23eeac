import math
from fractions import Fraction

import pytest

from cgftools.asymptotics import (
    HEURISTIC_NOTE,
    MultisetSeq,
    diaconis_diagnostics,
    eventually_constant,
    normality_scan,
    pointwise_converges,
    rescaled_multiset,
    uniform_sum_cumulant,
)
from cgftools.cgf_core import RationalForm
from cgftools.families import macmahon_box, qbinomial, qfactorial
from cgftools.stats import cumulant

from support import as_rational, sample_cgfs


def test_macmahon_ratio_closed_form():
    for x in range(1, 5):
        for y in range(x, 5):
            for z in range(y, 6):
                if x * y * z == 1:
                    continue
                g = Fraction(2 * x * x + 3 * x * y + 2 * y * y - 7, 6)
                d = diaconis_diagnostics(macmahon_box(x, y, z))
                assert d.ratio_exact == g / (g + z * (x + y + z))


def test_macmahon_variance_and_ms_bound():
    for x, y, z in ((2, 3, 4), (3, 3, 3), (1, 4, 6)):
        rf = macmahon_box(x, y, z)
        assert 12 * cumulant(rf, 2) == x * y * z * (x + y + z)
        d = diaconis_diagnostics(rf)
        # max a = x + y + z - 1 and sum a^2 - sum b^2 = 12 sigma^2
        assert d.ms_bound == pytest.approx((x + y + z - 1) / math.sqrt(x * y * z * (x + y + z)))


def test_qbinomial_ratio_tends_to_one_seventh():
    ratios = [diaconis_diagnostics(qbinomial(2 * k, k)).ratio_exact for k in (5, 10, 20, 40, 80, 400)]
    assert all(r > Fraction(1, 7) for r in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] - Fraction(1, 7) < Fraction(1, 1000)
    k = 80
    assert ratios[4] == Fraction(2 * k * k + 3 * k - 5, 14 * k * k + 9 * k - 5)


def test_qbinomial_std_k4_decays():
    s = [abs(diaconis_diagnostics(qbinomial(2 * k, k)).std_k4) for k in (5, 10, 20, 40)]
    assert all(a > b for a, b in zip(s, s[1:]))
    assert s[-1] < s[0] / 4


def test_diagnostics_invariants_on_cgfs():
    for ind in sample_cgfs(120, 15, seed=8):
        rf = as_rational(ind)
        d = diaconis_diagnostics(rf)
        assert 0 <= d.ratio_exact < 1
        assert d.quartic >= 1
        assert d.std_k3 == 0
        k2 = cumulant(rf, 2)
        assert d.std_k4_exact == cumulant(rf, 4) / k2**2
        assert d.sigma == pytest.approx(math.sqrt(k2)) and d.mu == float(cumulant(rf, 1))


def test_constant_rejected():
    with pytest.raises(ValueError):
        diaconis_diagnostics(RationalForm((3,), (3,)))


def test_scan_examples():
    seq = MultisetSeq("qbinomial", tuple((k, qbinomial(2 * k, k)) for k in (5, 10, 20, 40)))
    res = normality_scan(seq)
    assert res.criteria["std_k4_decreasing"] and res.criteria["ratio_bounded"]
    assert res.note == HEURISTIC_NOTE

    seq = MultisetSeq("macmahon", tuple((k, macmahon_box(k, k, k)) for k in (2, 4, 8)))
    res = normality_scan(seq)
    assert res.verdict == "normal-consistent" and all(res.criteria.values())
    assert res.rows[-1][1].quartic > 10

    seq = MultisetSeq("const", tuple((n, qfactorial(6)) for n in (1, 2, 3, 4)))
    res = normality_scan(seq)
    assert res.verdict == "inconclusive" and not res.criteria["std_k4_decreasing"]


def test_scan_outputs():
    seq = MultisetSeq("mm", tuple((k, macmahon_box(k, k, k)) for k in (2, 3, 4)))
    res = normality_scan(seq, threads=2)
    assert res.to_csv().splitlines()[0] == "N,ratio,quartic,std_k3,std_k4,ms_bound,sigma,mu"
    assert len(res.to_csv().splitlines()) == 4
    js = res.to_json()
    assert js["verdict"] in ("normal-consistent", "inconclusive") and js["rows"][0]["N"] == 2
    assert normality_scan(seq).rows == res.rows


def test_scan_preconditions():
    with pytest.raises(ValueError):
        normality_scan(MultisetSeq("short", ((1, qbinomial(4, 2)), (2, qbinomial(6, 3)))))
    with pytest.raises(ValueError):
        MultisetSeq("bad", ((1, RationalForm((5,), (2,))),))


def test_eventually_constant():
    pts = [(1, qbinomial(4, 2)), (2, qfactorial(3)), (3, qfactorial(3)), (4, qfactorial(3))]
    assert eventually_constant(MultisetSeq("s", tuple(pts))) == 2
    pts = [(1, qbinomial(4, 2)), (2, qbinomial(6, 3)), (3, qfactorial(3))]
    assert eventually_constant(MultisetSeq("s", tuple(pts))) is None


def test_rescaled_multiset_examples():
    vec, norm = rescaled_multiset([7], math.inf)
    assert vec == (1.0,) and norm == 7
    vec, norm = rescaled_multiset([5, 5], 2)
    assert norm == pytest.approx(5 * math.sqrt(2))
    limits = [rescaled_multiset([n, n // 2])[0] for n in (10, 100, 10_000, 1_000_000)]
    assert limits[-1] == pytest.approx((2 / math.sqrt(5), 1 / math.sqrt(5)))
    assert pointwise_converges(limits, tol=1e-5)
    assert not pointwise_converges([(1.0,), (0.5, 0.5)])
    with pytest.raises(ValueError):
        rescaled_multiset([])


def test_uniform_sum_cumulant_examples():
    assert uniform_sum_cumulant([1], 2) == pytest.approx(1 / 12)
    assert uniform_sum_cumulant([2, 2], 2) == pytest.approx(2 / 3)
    assert uniform_sum_cumulant([1] * 7, 4) == pytest.approx(-7 / 120)
    assert uniform_sum_cumulant([3, 1], 1) == 0


def test_uniform_sum_is_limit_of_discrete_cumulants():
    n = 1000
    for t in ((1,), (2, 3), (1, 1, 4)):
        rf = RationalForm(tuple(n * x for x in t), (1,) * len(t))
        for d in (2, 4, 6):
            u = uniform_sum_cumulant(t, d)
            assert abs(float(cumulant(rf, d)) / n**d - u) <= 0.01 * abs(u)
