from fractions import Fraction as F

import pytest

from vacdet import oracle as o
from vacdet.exact import Poly

c, h, k = Poly.var("c"), Poly.var("h"), Poly.var("k")


def test_finite_algebras_are_lie_superalgebras():
    for g in (o.sl_n(2), o.sl_n(3), o.osp12()):
        assert g.check_jacobi()
        assert g.check_form_invariant()


def test_virasoro_hand_values():
    vac = o.virasoro_vacuum()
    assert vac.det((2,)) == c / 2
    assert vac.det((3,)) == 2 * c
    assert vac.det((4,)) == F(5, 2) * c * c * (c + F(22, 5))
    ver = o.virasoro_verma()
    assert ver.det((1,)) == 2 * h
    assert ver.det((2,)) == 2 * h * (16 * h * h + 2 * h * c - 10 * h + c)


def test_ns_hand_values():
    assert o.ns_vacuum().det((3,)) == F(2, 3) * c
    assert o.ns_verma().det((1,)) == 2 * h


def test_gram_is_symmetric():
    for m, lvl in ((o.virasoro_verma(), (4,)), (o.ns_vacuum(), (7,)),
                   (o.module_from_name("sl3-affine"), (1, 1, 1))):
        g = m.gram_matrix(lvl)
        assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


def test_basis_sizes():
    # p(N) - p(N-1) for the Virasoro vacuum, p(N) for the Verma module
    assert [len(o.virasoro_vacuum().basis((n,))) for n in range(8)] == [1, 0, 1, 1, 2, 2, 4, 4]
    assert [len(o.virasoro_verma().basis((n,))) for n in range(6)] == [1, 1, 2, 3, 5, 7]


def test_affine_first_level():
    # the vacuum vector lowered by the lowest root at depth one
    assert o.module_from_name("sl2-affine").det((1, 0)) == k


def test_singular_vector_at_zero_charge():
    sv = o.virasoro_vacuum().singular_vectors((2,), {"c": 0})
    assert len(sv) == 1
    assert o.verify_minimal_monomial(sv[0], "vir", {"c": 0})["matches"]
    assert o.virasoro_vacuum().singular_vectors((2,), {"c": 1}) == []


def test_verify_rejects_non_singular():
    v = {(("L", -2),): Poly.const(1)}
    with pytest.raises(ValueError):
        o.verify_minimal_monomial(v, "vir", {"c": 1})


def test_ns_c2_form():
    sv = o.ns_vacuum().singular_vectors((3,), {"c": 0})
    assert o.c2_singular_form(sv[0], "ns")
    assert not o.c2_singular_form({(("L", -6),): Poly.const(1)}, "vir")


def test_unknown_module():
    with pytest.raises(ValueError):
        o.module_from_name("e8-affine")
