from fractions import Fraction as F

import pytest

from vacdet.roots import catalog, get_system, weyl_group

# [PAPER] dual Coxeter numbers in the standard normalization
STANDARD_HVEE = {
    "sl(1|2)": 1, "sl(1|4)": 3,
    "osp(2|2)": 1, "osp(2|6)": 3,
    "osp(3|2)": F(1, 2), "osp(3|4)": F(3, 2),
    "osp(5|2)": 1, "osp(7|2)": 3,
    "osp(4|2)": 0, "osp(6|2)": 2,
    "F(4)": 3, "G(3)": 2, "D(2,1,2)": 0, "D(2,1,1/3)": 0,
    "A1": 2, "A3": 4, "B3": 5, "C3": 4, "D4": 6, "G2": 4, "F4": 9,
    "osp(1|2)": F(3, 2), "osp(1|4)": F(5, 2),
}


@pytest.mark.parametrize("name,hv", sorted(STANDARD_HVEE.items()))
def test_standard_dual_coxeter(name, hv):
    assert catalog(name).standard().dual_coxeter() == hv


@pytest.mark.parametrize("s", [F(1, 2), F(2), F(3)])
def test_scaling_scales_hvee(s):
    for name in ("A2", "osp(3|2)", "osp(1|2)", "G(3)"):
        rs = catalog(name)
        assert rs.scaled(s).dual_coxeter() == s * rs.dual_coxeter()


def test_root_counts_and_defect():
    # (even positive, odd positive, defect)
    want = {"sl(1|2)": (1, 2, 1), "osp(3|2)": (2, 3, 1), "gl(2|2)": (2, 4, 2),
            "osp(1|2)": (1, 1, 0), "G2": (6, 0, 0), "F(4)": (10, 8, 1), "G(3)": (7, 7, 1)}
    for name, (e, o, d) in want.items():
        rs = catalog(name)
        assert (len(rs.even_positive), len(rs.odd_positive), rs.defect) == (e, o, d)


def test_theta_is_highest_root():
    # delta = alpha_0 + theta, so theta may be odd (osp(3|2))
    for name in ("A2", "G2", "osp(3|2)", "F(4)"):
        rs = catalog(name)
        assert max((r.vec for r in rs.positive_roots()), key=sum) == rs.theta
    assert catalog("osp(3|2)").theta in catalog("osp(3|2)").odd_positive


def test_weyl_group_orders():
    assert [len(weyl_group(catalog(n))) for n in ("A2", "B2", "G2", "A3")] == [6, 8, 12, 24]


def test_affine_delta():
    a = get_system("sl2^")
    assert a.delta == (1, 1)
    assert [r.vec for r in a.positive_roots(2)] == [(0, 1), (1, 0), (1, 1)]
    assert get_system("osp(1|2)^").delta == (1, 2)
    assert get_system("sl(1|2)^").delta == (1, 1, 1)


def test_unknown_algebra():
    with pytest.raises(ValueError):
        catalog("E9")
