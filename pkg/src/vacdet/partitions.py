"""Partition functions, Weyl denominators and alternating dot-orbit sums."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import Series, height
from .roots import (AffineRootSystem, FiniteRootSystem, RootSystem, WeylElement,
                    isotropic_cone, weyl_group)
from .linalg import solve


def _basis(rs: RootSystem) -> str:
    return f"{rs.name}@{getattr(rs, 'scale', 1)}"


# ---------------------------------------------------------------------------
# lattice characters
# ---------------------------------------------------------------------------

def kostant_series(rs: RootSystem, cutoff: int) -> Series:
    """Kostant partition function as a truncated series.

    Even roots contribute (1 - e^-a)^(-mult) and odd roots (1 + e^-a)^mult.
    """
    s = Series.one(_basis(rs), rs.rank, cutoff)
    for r in rs.positive_roots(cutoff):
        if r.parity:
            s = s.mul_binomial(r.vec, +1, r.mult)
        else:
            s = s.mul_binomial(r.vec, -1, -r.mult)
    return s


_K_CACHE: Dict[Tuple[int, int], Series] = {}


def _cached_kostant(rs: RootSystem, cutoff: int) -> Series:
    key = (id(rs), cutoff)
    hit = _K_CACHE.get(key)
    if hit is None or hit[0] is not rs:
        hit = (rs, kostant_series(rs, cutoff))
        _K_CACHE[key] = hit
    return hit[1]


def kostant_K(nu: Sequence[int], rs: RootSystem) -> int:
    """Number of ways to write nu as a sum of positive roots (odd ones at most once)."""
    nu = tuple(nu)
    if any(a < 0 for a in nu):
        return 0
    return _cached_kostant(rs, height(nu)).get(nu, 0)


def in_subsystem(v: Sequence[int], I: Iterable[int]) -> bool:
    I = set(I)
    return all(a == 0 for i, a in enumerate(v) if i not in I)


def k_series(rs: RootSystem, I: Optional[Iterable[int]], cutoff: int) -> Series:
    """R_I = prod over positive roots of Q_I of (1 - e^-a) (even) or 1/(1 + e^-a) (odd).

    ``I`` is a set of simple-root indices; ``None`` means the finite index
    set (all simple roots of a finite system, or all but alpha_0 of an
    affine one).
    """
    if I is None:
        I = range(1, rs.rank) if rs.affine else range(rs.rank)
    I = set(I)
    s = Series.one(_basis(rs), rs.rank, cutoff)
    for r in rs.positive_roots(cutoff):
        if not in_subsystem(r.vec, I):
            continue
        if r.parity:
            s = s.mul_binomial(r.vec, +1, -r.mult)
        else:
            s = s.mul_binomial(r.vec, -1, r.mult)
    return s


def k_I(alpha: Sequence[int], rs: RootSystem, I: Optional[Iterable[int]] = None) -> int:
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        return 0
    return k_series(rs, I, height(alpha)).get(alpha, 0)


def weyl_denominator(rs: FiniteRootSystem, cutoff: int) -> Series:
    return k_series(rs, None, cutoff)


def ns_membership(rs: FiniteRootSystem, v: Sequence[int]) -> Optional[int]:
    """Height of v as an element of NS, or None if v is not in NS."""
    S = set(rs.S)
    if any(a < 0 or (a and i not in S) for i, a in enumerate(v)):
        return None
    return sum(v)


def k_I_via_orbit(alpha: Sequence[int], rs: FiniteRootSystem, group: Optional[List[WeylElement]] = None) -> int:
    """k_I(alpha) from the twisted W#-orbit of -alpha meeting -NS."""
    if not sharp_preserves_S(rs):
        raise ValueError(f"{rs.name}: W# does not map S into the positive roots")
    W = group if group is not None else weyl_group(rs, "sharp")
    neg = tuple(-a for a in alpha)
    hits = []
    for w in W:
        img = w.dot(neg)
        m = ns_membership(rs, tuple(-x for x in img)) if all(x.denominator == 1 for x in img) else None
        if m is not None:
            hits.append((-1) ** (w.length + m))
    if len(hits) > 1:
        raise AssertionError("twisted orbit meets -NS more than once")
    return hits[0] if hits else 0


def sharp_preserves_S(rs: FiniteRootSystem) -> bool:
    """W# S is contained in the positive roots."""
    pos = {r.vec for r in rs.positive_roots()}
    for w in weyl_group(rs, "sharp"):
        for i in rs.S:
            img = w.act(rs.simple_vec(i))
            if tuple(int(x) for x in img) not in pos or any(x.denominator != 1 for x in img):
                return False
    return True


def ns_meets_positive_only_in_S(rs: FiniteRootSystem) -> bool:
    """NS intersected with the positive roots is exactly S."""
    S = {rs.simple_vec(i) for i in rs.S}
    hits = {r.vec for r in rs.positive_roots() if ns_membership(rs, r.vec) is not None}
    return hits == S


# ---------------------------------------------------------------------------
# alternating sums
# ---------------------------------------------------------------------------

def alternating_sum_E(rs: RootSystem, lam: Sequence, group: str = "full") -> Dict[tuple, int]:
    """E(lam) = sum over the finite group of (-1)^l(w) e^{w.lam}, as {exponent: coeff}."""
    out: Dict[tuple, int] = {}
    for w in weyl_group(rs, group):
        mu = tuple(w.dot(lam))
        out[mu] = out.get(mu, 0) + w.sign
    return {k: v for k, v in out.items() if v}


def kwn_identity_check(rs: FiniteRootSystem, cutoff: int) -> bool:
    """Check R = sum_{w in W#} (-1)^l(w) e^{w rho - rho} prod_{b in S} 1/(1 + e^{-w b}).

    Both sides are expanded in e^{-Q+} up to the height cutoff.
    """
    if not sharp_preserves_S(rs):
        raise ValueError(f"{rs.name}: W# does not map S into the positive roots")
    basis = _basis(rs)
    lhs = weyl_denominator(rs, cutoff)
    rhs = Series(basis, rs.rank, cutoff)
    for w in weyl_group(rs, "sharp"):
        shift = tuple(-int(x) for x in w.shift)  # e^{w rho - rho} = e^{-shift}
        if height(shift) > cutoff:
            continue
        term = Series(basis, rs.rank, cutoff, {shift: w.sign})
        for i in rs.S:
            wb = tuple(int(x) for x in w.act(rs.simple_vec(i)))
            term = term.mul_binomial(wb, +1, -1)
        rhs = rhs + term
    return lhs == rhs


def orbit_form_of_R(rs: FiniteRootSystem, cutoff: int) -> Series:
    """The right-hand side sum_{w} (-1)^l(w) sum_{a in NS} (-1)^ht(a) e^{w.(-a)}."""
    basis = _basis(rs)
    out = Series(basis, rs.rank, cutoff)
    d: Dict[tuple, int] = {}
    W = weyl_group(rs, "sharp")
    for a in isotropic_cone(rs, cutoff):
        neg = tuple(-x for x in a)
        for w in W:
            img = tuple(-int(x) for x in w.dot(neg))
            if height(img) <= cutoff:
                d[img] = d.get(img, 0) + w.sign * (-1) ** sum(a)
    out.coeffs = {v: c for v, c in d.items() if c}
    return out


# ---------------------------------------------------------------------------
# classical and super partitions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _p_table(n: int) -> Tuple[int, ...]:
    t = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            t[m] += t[m - part]
    return tuple(t)


def p_cl(n: int) -> int:
    """Classical partition count, zero for negative n."""
    if n < 0:
        return 0
    size = max(64, 1 << (n.bit_length()))
    return _p_table(size)[n]


def partitions(n: int, max_part: Optional[int] = None, min_part: int = 1) -> Iterable[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - k, k, min_part):
            yield (k,) + rest


def psi_series(cutoff2: int) -> Dict[Tuple[int, int], int]:
    """psi(x,t) = prod (1 + t x^{n+1/2})^{-1} prod (1 - t x^n) with doubled x-exponents.

    Keys are (2 * x-exponent, t-exponent), kept for 2*x-exponent <= cutoff2.
    """
    cur = {(0, 0): 1}
    for m in range(1, cutoff2 + 1):
        nxt: Dict[Tuple[int, int], int] = {}
        if m % 2 == 0:
            # times (1 - t x^{m/2})
            for (a, b), c in cur.items():
                nxt[(a, b)] = nxt.get((a, b), 0) + c
                if a + m <= cutoff2:
                    nxt[(a + m, b + 1)] = nxt.get((a + m, b + 1), 0) - c
        else:
            # divided by (1 + t x^{m/2})
            for (a, b), c in cur.items():
                j = 0
                while a + j * m <= cutoff2:
                    key = (a + j * m, b + j)
                    nxt[key] = nxt.get(key, 0) + c * (-1) ** j
                    j += 1
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def psi_inverse(cutoff2: int) -> Dict[Tuple[int, int], int]:
    """psi(x,t)^{-1}: superpartition generating function sum t^{l} x^{|lambda|}."""
    cur = {(0, 0): 1}
    for m in range(1, cutoff2 + 1):
        nxt: Dict[Tuple[int, int], int] = {}
        if m % 2 == 1:
            for (a, b), c in cur.items():
                nxt[(a, b)] = nxt.get((a, b), 0) + c
                if a + m <= cutoff2:
                    nxt[(a + m, b + 1)] = nxt.get((a + m, b + 1), 0) + c
        else:
            for (a, b), c in cur.items():
                j = 0
                while a + j * m <= cutoff2:
                    key = (a + j * m, b + j)
                    nxt[key] = nxt.get(key, 0) + c
                    j += 1
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def superpartition_counts(cutoff2: int) -> List[int]:
    """Coefficients of psi(x,1)^{-1}, indexed by doubled exponent."""
    out = [0] * (cutoff2 + 1)
    for (a, _), c in psi_inverse(cutoff2).items():
        out[a] += c
    return out


def superpartitions(n2: int) -> Iterable[Tuple[int, ...]]:
    """Superpartitions of n2/2 as doubled parts: even parts repeat, odd parts are distinct."""
    def rec(rem, maxp, last_odd_used):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, maxp), 0, -1):
            if p % 2 == 1 and p == last_odd_used:
                continue
            for rest in rec(rem - p, p, p if p % 2 else None):
                yield (p,) + rest
    yield from rec(n2, n2, None)


# ---------------------------------------------------------------------------
# appendix lemmas, checked by enumeration
# ---------------------------------------------------------------------------

def fundamental_weights(rs: FiniteRootSystem) -> List[Tuple[Fraction, ...]]:
    """Ambient fundamental weights of a Lie algebra (within the span of the roots)."""
    out = []
    for i in range(rs.rank):
        target = [Fraction(1 if j == i else 0) * rs.B[j][j] / 2 for j in range(rs.rank)]
        # omega_i = sum c_m alpha_m with (omega_i|alpha_j) = delta_ij (alpha_j|alpha_j)/2
        cols = [list(row) for row in zip(*rs.B)]
        c = solve(cols, target)
        out.append(rs.to_ambient(c))
    return out


def lemstab_check(rs: FiniteRootSystem) -> Tuple[bool, int]:
    """Every weight nu with (nu|nu) < (rho|rho) is singular for W.

    Exhaustive over the finite ball; returns (holds, number of weights checked).
    Equivalently E(lam) = 0 whenever (lam+rho|lam+rho) < (rho|rho).
    """
    fw = fundamental_weights(rs)
    rr = rs.rho_norm()
    n = rs.rank
    bounds = []
    for i in range(n):
        cov = 4 / rs.B[i][i]
        bounds.append(math.isqrt(int(rr * cov) + 1) + 1)
    roots = [rs.to_ambient(r.vec) for r in rs.positive_roots()]
    checked = 0
    from itertools import product
    for coeffs in product(*(range(-b, b + 1) for b in bounds)):
        nu = tuple(sum(c * w[k] for c, w in zip(coeffs, fw)) for k in range(len(rs.labels)))
        if rs.aform(nu, nu) < rr:
            checked += 1
            if not any(rs.aform(nu, a) == 0 for a in roots):
                return False, checked
    return True, checked


def lemw_bound(rs: FiniteRootSystem, alpha: Sequence[int], r_max: int) -> int:
    """Largest r <= r_max for which r*alpha = w.(r' alpha') with w not in {id, s_alpha}.

    Returns 0 if there is none.
    """
    alpha = tuple(alpha)
    roots = [r.vec for r in rs.roots()]
    W = weyl_group(rs, "full")
    na = rs.norm(alpha)
    bad = 0
    for w in W:
        if w.length == 0:
            continue
        if all(w.act(v) == tuple(Fraction(x) for x in _reflect(rs, alpha, v)) for v in
               (rs.simple_vec(i) for i in range(rs.rank))):
            continue
        for r in range(1, r_max + 1):
            target = tuple(r * a - s for a, s in zip(alpha, w.shift))  # r' w(alpha')
            for ap in roots:
                wa = w.act(ap)
                ratio = None
                ok = True
                for t, x in zip(target, wa):
                    if x == 0:
                        if t != 0:
                            ok = False
                            break
                    else:
                        q = Fraction(t) / x
                        if ratio is None:
                            ratio = q
                        elif q != ratio:
                            ok = False
                            break
                if ok and ratio is not None and ratio.denominator == 1 and ratio >= 1:
                    bad = max(bad, r)
    return bad


def _reflect(rs, alpha, v):
    c = 2 * rs.form(v, alpha) / rs.norm(alpha)
    return tuple(a - c * b for a, b in zip(v, alpha))
