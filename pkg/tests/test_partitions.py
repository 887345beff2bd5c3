from itertools import product

import pytest

from vacdet.exact import box
from vacdet.partitions import (k_I_via_orbit, k_series, kostant_K, kwn_identity_check, lemstab_check,
                               lemw_bound, ns_meets_positive_only_in_S, p_cl, partitions, psi_inverse,
                               sharp_preserves_S, superpartition_counts, superpartitions)
from vacdet.roots import catalog


def brute_kostant(nu, rs):
    """Count multisets of positive roots summing to nu, odd roots used at most once."""
    roots = [(r.vec, rs.parity(r.vec)) for r in rs.positive_roots()]

    def count(i, rest):
        if all(x == 0 for x in rest):
            return 1
        if i == len(roots):
            return 0
        v, odd = roots[i]
        total, m = 0, 0
        cur = rest
        while all(x >= 0 for x in cur):
            total += count(i + 1, cur)
            m += 1
            if odd and m > 1:
                break
            cur = tuple(a - b for a, b in zip(cur, v))
        return total

    return count(0, tuple(nu))


def test_partition_numbers():
    # [PAPER] classical partition counts
    assert [p_cl(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert p_cl(-1) == 0
    assert all(len(list(partitions(n))) == p_cl(n) for n in range(15))


@pytest.mark.parametrize("name", ["A2", "B2", "sl(1|2)", "osp(3|2)", "osp(1|2)"])
def test_kostant_against_enumeration(name):
    rs = catalog(name)
    for nu in box((4,) * rs.rank):
        assert kostant_K(nu, rs) == brute_kostant(nu, rs), nu


def test_superpartitions():
    counts = superpartition_counts(20)
    assert counts == [len(list(superpartitions(n))) for n in range(21)]
    inv = psi_inverse(12)
    by_size = [sum(c for (a, _), c in inv.items() if a == n) for n in range(13)]
    assert by_size == counts[:13]


@pytest.mark.parametrize("name", ["sl(1|2)", "osp(3|2)", "osp(2|4)"])
def test_kwn_identity(name):
    assert kwn_identity_check(catalog(name), 8)


@pytest.mark.parametrize("name", ["sl(1|2)", "osp(3|2)", "gl(2|2)"])
def test_k_I_product_equals_orbit(name):
    rs = catalog(name)
    ser = k_series(rs, None, 8)
    for a in box((8,) * rs.rank):
        if sum(a) <= 8:
            assert ser.get(a, 0) == k_I_via_orbit(a, rs), a


@pytest.mark.parametrize("name", ["sl(1|2)", "osp(3|2)", "gl(2|2)", "osp(4|2)"])
def test_sharp_group_and_isotropic_set(name):
    rs = catalog(name)
    assert sharp_preserves_S(rs)
    assert ns_meets_positive_only_in_S(rs)


def test_stabilizer_lemma():
    # frozen counts of weights inside the rho-ball
    assert [lemstab_check(catalog(n)) for n in ("A2", "B2", "G2")] == [(True, 7), (True, 13), (True, 19)]


def test_lemw_bound_is_stable():
    for name in ("A2", "B2"):
        rs = catalog(name)
        for r in rs.positive_roots():
            b = lemw_bound(rs, r.vec, 8)
            assert b < 8 and b == lemw_bound(rs, r.vec, 16)
