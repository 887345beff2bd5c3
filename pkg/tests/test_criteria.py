from fractions import Fraction as F
from math import gcd

import pytest

from vacdet import criteria as cr
from vacdet.determinants import c_pq, c_pq_ns, in_Y
from vacdet.roots import catalog


def status(alg, k):
    return cr.vacuum_irreducible(alg, k).status


@pytest.mark.parametrize("k,want,kalpha", [(F(-1, 2), cr.REDUCIBLE, F(3, 4)),
                                           (F(-3, 2), cr.IRREDUCIBLE, F(1, 4)),
                                           (F(0), cr.REDUCIBLE, F(1)),
                                           (F(-3), cr.IRREDUCIBLE, F(-1, 2))])
def test_sl2_short_root(k, want, kalpha):
    v = cr.vacuum_irreducible("A1", k)
    assert v.status == want and v.witness["k_alpha"] == kalpha


def test_critical_and_irrational():
    assert cr.vacuum_irreducible("A1", F(-2)).criterion == "critical-level"
    assert status("sl(1|2)", F(-1)) == cr.REDUCIBLE
    assert status("A1", cr.Irrational("pi")) == cr.IRREDUCIBLE


def test_osp12_odd_root():
    # standard form: odd root of norm 1/2, h_vee = 3/2
    assert status("osp(1|2)", F(-3, 2) + F(1, 3)) == cr.REDUCIBLE
    # odd root of norm 1: k_alpha = 1/3 is excluded
    assert status(catalog("osp(1|2)").scaled(F(1, 2)), F(1, 3) - 3) == cr.IRREDUCIBLE
    assert status(catalog("osp(1|2)").standard(), F(-3, 2) + F(1, 6)) == cr.IRREDUCIBLE


def test_defect_one_sign():
    assert status("sl(1|2)", F(-2)) == cr.IRREDUCIBLE
    assert status("sl(1|2)", F(1, 3) - 1) == cr.REDUCIBLE
    assert status("osp(3|2)", F(0)) == cr.REDUCIBLE
    assert status("gl(2|2)", F(-1)) == cr.REDUCIBLE


def test_d21a_symbolic():
    a = cr.ALinear
    assert status("D(2,1,a)", a(F(1), F(2))) == cr.IRREDUCIBLE
    assert status("D(2,1,a)", a(F(0), F(3))) == cr.REDUCIBLE
    # -1-a times a positive rational
    assert status("D(2,1,a)", a(F(-2), F(-2))) == cr.REDUCIBLE
    assert status("D(2,1,a)", F(1, 2)) == cr.REDUCIBLE
    assert status("D(2,1,a)", F(-1, 2)) == cr.IRREDUCIBLE


SCALE_CASES = ("A1", "A2", "B3", "C2", "G2", "F4", "osp(1|2)", "osp(1|6)", "sl(1|3)",
               "osp(3|4)", "osp(5|2)", "osp(6|2)", "D(2,1,3)", "gl(2|2)", "F(4)", "G(3)")


@pytest.mark.parametrize("name", SCALE_CASES)
def test_normalization_invariance(name):
    rs = catalog(name)
    for n in range(-10, 11):
        for d in (1, 2, 3, 5):
            k = F(n, d)
            base = cr.vacuum_irreducible(rs, k)
            for s in (F(1, 2), F(2), F(3), F(-1)):
                other = cr.vacuum_irreducible(rs.scaled(s), s * k)
                assert other.status == base.status, (k, s)


def test_virasoro_exhaustive():
    for p in range(2, 13):
        for q in range(2, p):
            if gcd(p, q) == 1:
                assert cr.virasoro_pq(c_pq(p, q)) == (p, q)
                assert cr.virasoro_simple(c_pq(p, q)).status == cr.NOT_SIMPLE
    assert cr.virasoro_simple(F(1)).status == cr.SIMPLE
    assert cr.virasoro_simple(F(25)).status == cr.SIMPLE


def _ns_charges(bound):
    """c = 3/2 (1 - 2(p-q)^2/(pq)), p > q coprime, p/q not an odd integer."""
    out = set()
    for p in range(2, bound):
        for q in range(1, p):
            if gcd(p, q) == 1 and not (q == 1 and p % 2 == 1):
                out.add(F(3, 2) * (1 - F(2 * (p - q) ** 2, p * q)))
    return out


def test_ns_against_coprime_form():
    charges = _ns_charges(60)
    for p in range(2, 25):
        for q in range(2, p):
            if in_Y(p, q):
                c = c_pq_ns(p, q)
                assert cr.ns_pq(c) == (p, q)
                assert c in charges
    for c in sorted(_ns_charges(14)):
        assert cr.ns_simple(c).status == cr.NOT_SIMPLE, c
    assert cr.ns_simple(F(3, 2)).status == cr.SIMPLE


def test_c2_condition_mirrors_simplicity():
    for c in (F(0), F(1, 2), F(1), F(-22, 5)):
        assert cr.c2_condition("Vir", c) == (cr.virasoro_simple(c).status == cr.NOT_SIMPLE)
        assert cr.c2_condition("NS", c) == (cr.ns_simple(c).status == cr.NOT_SIMPLE)


def test_w_central_charges():
    # sl2 reduces to Virasoro with c = 1 - 6(k+1)^2/(k+2)
    for k in (F(-1, 2), F(1), F(3, 7)):
        assert cr.w_central_charge("sl2", k) == 1 - 6 * (k + 1) ** 2 / (k + 2)
    for k in (F(0), F(2), F(-1, 3)):
        assert cr.w_central_charge("sl(1|2)", k) == -3 - 6 * k
    k = F(1, 5)
    a = 2 * k + 3
    assert cr.w_central_charge("osp(1|2)", k) == F(15, 2) - 3 * (a + 1 / a)


def test_w_algebra_verdicts():
    assert cr.w_algebra_simple("sl3", F(1, 2) - 3).status == cr.SIMPLE
    assert cr.w_algebra_simple("sl3", F(0)).status == cr.NOT_SIMPLE
    assert cr.w_algebra_simple("sl2", F(-1, 2)).status == cr.NOT_SIMPLE
    assert all(cr.w_algebra_simple("sl2", F(k)).status == cr.SIMPLE for k in range(4))
    assert cr.w_algebra_simple("sl3", F(-3)).status == cr.NOT_SIMPLE


def test_superconformal_families():
    s = cr.superconformal_simple
    assert s("N1", F(0)).status == cr.NOT_SIMPLE
    assert s("N2", F(0)).status == cr.NOT_SIMPLE
    assert s("N2", F(3)).status == cr.SIMPLE
    assert s("N2", F(-3)).status == cr.SIMPLE
    assert s("N3", F(-3)).status == cr.UNKNOWN
    assert s("N3", F(-6)).status == cr.NOT_SIMPLE
    assert s("N3", cr.Irrational("e")).status == cr.SIMPLE
    assert s("N4", F(-6)).status == cr.UNKNOWN
    assert s("N4", F(-9)).status == cr.NOT_SIMPLE
    assert s("bigN4", F(-3), F(1)).status == cr.UNKNOWN


def test_n2_against_grid():
    # every c = 3 - 6p/q (q >= 2) that can land on the grid below
    bad = {3 - 6 * F(p, q) for q in range(2, 37) for p in range(1, 6 * q) if gcd(p, q) == 1}
    for c in {F(n, d) for d in range(1, 7) for n in range(-30, 31)}:
        got = cr.superconformal_simple("N2", c).status
        assert got == (cr.NOT_SIMPLE if c in bad else cr.SIMPLE), c


def test_verdict_serialization():
    d = cr.vacuum_irreducible("A1", F(-1, 2)).to_dict()
    assert d["status"] == "Reducible" and d["criterion"] == "lie-short-root"
    assert d["k"] == "-1/2"


def test_unsupported():
    with pytest.raises((cr.UnsupportedAlgebra, ValueError)):
        cr.vacuum_irreducible("E9", F(1))
