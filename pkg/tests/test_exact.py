import random
from fractions import Fraction as F

import pytest

from vacdet.exact import (Poly, Q, Series, box, cofactor_det, divide_linear_factors, poly_det,
                          series_invert, series_multiply)
from vacdet.linalg import det, nullspace, rank, solve

x, y = Poly.var("x"), Poly.var("y")


def test_coercion_rejects_floats():
    assert Q("-3/2") == F(-3, 2)
    with pytest.raises(TypeError):
        Q(0.5)


def test_ring_laws():
    p = x * x + 3 * y - F(1, 2)
    q = x - y + 1
    assert (p + q) * (p - q) == p * p - q * q
    assert (p * q).divexact(q) == p
    assert (q ** 3).degree("x") == 3
    assert (p - p).is_zero()


def test_subs_and_coeffs():
    p = (x - 2) * (x + F(1, 3))
    assert p.subs(x=2).is_zero()
    assert p.univariate_coeffs("x") == [F(-2, 3), F(-5, 3), 1]


def test_bareiss_matches_cofactor():
    rng = random.Random(7)
    for n in range(1, 5):
        m = [[x * rng.randint(-3, 3) + y * rng.randint(-2, 2) + rng.randint(-4, 4) for _ in range(n)]
             for _ in range(n)]
        assert poly_det(m) == cofactor_det(m)


def test_det_edge_cases():
    assert poly_det([]) == 1
    assert poly_det([[0, 1], [1, 0]]) == -1
    assert poly_det([[x, x], [x, x]]).is_zero()


def test_divide_linear_factors():
    p = (x - F(1, 2)) ** 3 * (x + 1) * 5
    mult, rest = divide_linear_factors(p, [("x", F(1, 2)), ("x", -1), ("x", 0)])
    assert mult == [3, 1, 0]
    assert rest == 5


def test_linalg():
    a = [[F(2), F(1)], [F(1), F(3)]]
    assert det(a) == 5
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 2], [2, 4]], 2)
    assert len(ns) == 1 and ns[0][0] + 2 * ns[0][1] == 0
    # columns (2,1), (1,3); target 3*(2,1) - (1,3)
    assert solve(a, [F(5), F(0)]) == [F(3), F(-1)]


def test_series_inverse_of_euler_product():
    # prod (1 - x^n) inverted gives the partition numbers
    s = Series.one("e", 1, 12)
    for n in range(1, 13):
        s = s.mul_binomial((n,), -1)
    inv = series_invert(s)
    assert [inv.get((n,)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert series_multiply(s, inv) == Series.one("e", 1, 12)


def test_box():
    assert sorted(box((1, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
