"""Closed-form determinants of contravariant forms and the M_b series.

Affine vacuum determinants are computed from a list of weighted "triples"
(r, gamma, alpha).  Each triple carries the lattice vector r*gamma + alpha,
an integer weight, and the value b with phi proportional to k + h^vee - b.
Both the determinant exponents and M_b are read off from the same list:

    M_b = sum of weight * e^{-vector} over triples with that b,
    m_b(nu) = (K * M_b)(nu),   K the affine Kostant partition function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import Poly, Q, Series, box, height
from .partitions import (_cached_kostant, k_series, kostant_series, p_cl, psi_inverse,
                         psi_series, sharp_preserves_S)
from .roots import (AffineRootSystem, FiniteRootSystem, RootSystem, phi, weyl_group)

PROVENANCES = ("thmsh", "cordet", "detdef", "proosp", "virasoro", "kac", "ns")


class CutoffError(ValueError):
    """Raised when a requested level lies beyond what a computation covers."""


class PreconditionError(ValueError):
    """Raised when a formula is applied outside its hypotheses."""


# ---------------------------------------------------------------------------
# factored determinants
# ---------------------------------------------------------------------------

def canonical(p: Poly) -> Poly:
    """p rescaled to leading coefficient 1, over its sorted used variables."""
    if p.is_zero():
        raise ValueError("zero factor")
    used = tuple(sorted(p.used_vars()))
    idx = [p.vars.index(v) for v in used]
    terms = {tuple(e[i] for i in idx): c for e, c in p.terms.items()}
    q = Poly(used, terms)
    return q / q.leading_term()[1]


def proportional(p: Poly, q: Poly) -> bool:
    """p = c*q for a nonzero rational c (both nonzero)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return canonical(p) == canonical(q)


@dataclass
class FactoredDeterminant:
    """A determinant up to a nonzero constant, as normalized factors with exponents."""

    provenance: str
    level: tuple
    factors: Dict[Poly, int] = field(default_factory=dict)

    def add(self, factor: Poly, exponent: int) -> None:
        if not exponent:
            return
        if factor.is_constant():
            if factor.is_zero():
                raise ArithmeticError("a vanishing constant factor makes the determinant zero")
            return
        key = canonical(factor)
        e = self.factors.get(key, 0) + exponent
        if e:
            self.factors[key] = e
        else:
            self.factors.pop(key, None)

    def items(self) -> List[Tuple[Poly, int]]:
        return sorted(self.factors.items(), key=lambda kv: _sort_key(kv[0]))

    def expand(self) -> Poly:
        out = Poly.const(1)
        for f, e in self.items():
            if e < 0:
                raise ArithmeticError("negative exponent: not a polynomial")
            out = out * f ** e
        return out

    def degree(self) -> int:
        return sum(f.degree() * e for f, e in self.factors.items())

    def zeros(self) -> Dict[Fraction, int]:
        """Roots of a univariate factored determinant with their multiplicities."""
        out: Dict[Fraction, int] = {}
        for f, e in self.factors.items():
            if len(f.used_vars()) != 1 or f.degree() != 1:
                raise ValueError("zeros() needs linear univariate factors")
            co = f.univariate_coeffs(f.used_vars()[0])
            out[-co[0] / co[1]] = out.get(-co[0] / co[1], 0) + e
        return dict(sorted(out.items()))

    def same_factors(self, other: "FactoredDeterminant") -> bool:
        return self.factors == other.factors

    def matches(self, p: Poly) -> bool:
        """p equals the product up to a nonzero constant."""
        return proportional(self.expand(), p)

    def to_dict(self) -> dict:
        return {"provenance": self.provenance, "level": list(self.level),
                "factors": [[str(f), e] for f, e in self.items()]}

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"({f})^{e}" if e != 1 else f"({f})" for f, e in self.items())


def _sort_key(p: Poly):
    if len(p.used_vars()) == 1 and p.degree() == 1:
        intercept, slope = p.univariate_coeffs(p.used_vars()[0])
        return (0, slope, intercept, "")
    return (1, Fraction(0), Fraction(0), str(p))


# ---------------------------------------------------------------------------
# generalized Verma modules: the k_I-twisted Kac-Kazhdan product
# ---------------------------------------------------------------------------

def _leq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _smul(c, v):
    return tuple(c * a for a in v)


def finite_symbols(rs: FiniteRootSystem, I: Iterable[int] = ()) -> Tuple[str, ...]:
    I = set(I)
    return tuple(f"l{i + 1}" for i in range(rs.rank) if i not in I)


def lambda_pairings(rs: FiniteRootSystem, I: Iterable[int] = ()) -> List[Poly]:
    """(lambda|alpha_i) for lambda vanishing on h_I.

    The free symbol l_i is lambda(h_i): for a non-isotropic simple root
    (lambda|alpha_i) = l_i (alpha_i|alpha_i)/2, for an isotropic one it is l_i.
    """
    I = set(I)
    syms = finite_symbols(rs, I)
    out = []
    for i in range(rs.rank):
        if i in I:
            out.append(Poly.const(0, syms))
            continue
        n = rs.B[i][i]
        out.append(Poly.var(f"l{i + 1}", syms) * (n / 2 if n else 1))
    return out


def phi_symbolic(rs: FiniteRootSystem, xi, pairings: Sequence[Poly]) -> Poly:
    """phi_xi(lambda) = (lambda + rho|xi) - (xi|xi)/2."""
    p = pairings[0] * 0
    for a, pr in zip(xi, pairings):
        if a:
            p = p + pr * a
    return p + (rs.rho(xi) - rs.norm(xi) / 2)


def _default_I(rs: RootSystem, I):
    if I is None:
        return set(range(1, rs.rank)) if rs.affine else set()
    return set(I)


def _in_QI(v, I) -> bool:
    return all(a == 0 for i, a in enumerate(v) if i not in I)


def verma_exponents(rs: RootSystem, I, nu: Sequence[int]) -> Dict[tuple, int]:
    """Exponent of phi_xi, keyed by xi = r*gamma + alpha, before merging proportional factors."""
    nu = tuple(nu)
    I = _default_I(rs, I)
    cut = height(nu)
    K = _cached_kostant(rs, cut)
    kI = k_series(rs, I, cut)
    alphas = [(a, c) for a, c in kI.items() if _leq(a, nu)]
    out: Dict[tuple, int] = {}
    for root in rs.positive_roots(cut):
        g = root.vec
        if _in_QI(g, I):
            continue
        r = 1
        while _leq(_smul(r, g), nu):
            sign = -1 if (r + 1) * root.parity % 2 else 1
            for a, ka in alphas:
                xi = _add(_smul(r, g), a)
                if not _leq(xi, nu):
                    continue
                kk = K.get(_sub(nu, xi), 0)
                if kk:
                    out[xi] = out.get(xi, 0) + sign * root.mult * ka * kk
            r += 1
    return {x: e for x, e in out.items() if e}


def gen_verma_det(rs: RootSystem, I: Optional[Iterable[int]], nu: Sequence[int],
                  provenance: str = "thmsh") -> FactoredDeterminant:
    """Determinant of the contravariant form on M_I(lambda)_{lambda - nu}.

    For a finite system the factors are polynomials in l_i = lambda(h_i),
    i outside I.  For an affine system only the vacuum case (I the finite
    index set, lambda = k Lambda_0) is supported, with factors in k.
    """
    nu = tuple(nu)
    if len(nu) != rs.rank or any(a < 0 for a in nu):
        raise ValueError(f"level {nu} is not in Q+ of rank {rs.rank}")
    Iset = _default_I(rs, I)
    fd = FactoredDeterminant(provenance, nu)
    if rs.affine:
        if Iset != set(range(1, rs.rank)):
            raise PreconditionError("affine systems: only the vacuum case I = finite index set")
        for xi, e in verma_exponents(rs, Iset, nu).items():
            fd.add(phi(rs, xi), e)
    else:
        pairs = lambda_pairings(rs, Iset)
        for xi, e in verma_exponents(rs, Iset, nu).items():
            fd.add(phi_symbolic(rs, xi, pairs), e)
    return fd


def leading_term_exponents(rs: FiniteRootSystem, I: Iterable[int], nu) -> Dict[Poly, int]:
    """Exponents of h_alpha in the top-degree part, from the K_I partition function.

    h_alpha is represented by the normalized linear form (lambda|alpha).
    """
    I = set(I)
    nu = tuple(nu)
    cut = height(nu)
    # K_I = prod over positive roots outside Q_I of (1 - e^-a)^-1 or (1 + e^-a)
    KI = Series.one(f"{rs.name}@KI", rs.rank, cut)
    for r in rs.positive_roots(cut):
        if _in_QI(r.vec, I):
            continue
        KI = KI.mul_binomial(r.vec, +1, r.mult) if r.parity else KI.mul_binomial(r.vec, -1, -r.mult)
    pairs = lambda_pairings(rs, I)
    out: Dict[Poly, int] = {}
    for root in rs.positive_roots(cut):
        if _in_QI(root.vec, I):
            continue
        tot = 0
        r = 1
        while _leq(_smul(r, root.vec), nu):
            sign = -1 if (r - 1) * root.parity % 2 else 1
            tot += sign * KI.get(_sub(nu, _smul(r, root.vec)), 0)
            r += 1
        if tot:
            lin = phi_symbolic(rs, root.vec, pairs) - (rs.rho(root.vec) - rs.norm(root.vec) / 2)
            key = canonical(lin)
            out[key] = out.get(key, 0) + root.mult * tot
    return {k: v for k, v in out.items() if v}


def top_degree_part(p: Poly) -> Poly:
    d = max(sum(e) for e in p.terms)
    return Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e) == d})


# ---------------------------------------------------------------------------
# affine vacuum modules: triples and M_b
# ---------------------------------------------------------------------------

def b_value(rs: AffineRootSystem, xi) -> Fraction:
    """b with phi_xi(k) proportional to k + h^vee - b."""
    slope, icpt = rs.phi_coeffs(xi)
    if slope == 0:
        raise ValueError("phi_xi does not depend on k")
    return rs.hvee - icpt / slope


def _require_affine(rs):
    if not getattr(rs, "affine", False):
        raise PreconditionError(f"{rs.name} is not an affine system")


def _cordet_terms(rs: AffineRootSystem, cutoff: int) -> List[Tuple[tuple, int]]:
    """(r*gamma + alpha, sign * dim * k_J(alpha)) for gamma with positive delta-part."""
    kJ = k_series(rs, None, cutoff)
    alphas = list(kJ.items())
    out = []
    for root in rs.positive_roots(cutoff):
        g = root.vec
        if g[0] == 0:
            continue
        r = 1
        while height(g) * r <= cutoff:
            sign = -1 if (r + 1) * root.parity % 2 else 1
            rg = _smul(r, g)
            for a, ka in alphas:
                if height(rg) + height(a) <= cutoff:
                    out.append((_add(rg, a), sign * root.mult * ka))
            r += 1
    return out


def _affine_box(rs: AffineRootSystem, cutoff: int) -> List[tuple]:
    out = []
    for v in box((cutoff,) * rs.rank):
        if sum(v) <= cutoff and v[0] >= 1:
            out.append(v)
    return out


def _divisors(m: int) -> List[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _orbit_terms(rs: AffineRootSystem, cutoff: int, omega: bool = False) -> List[Tuple[tuple, int, Fraction]]:
    """Alternating W#-orbit terms of the isotropic-cone form, collected on the positive box.

    Every nu in the box is tested against all decompositions
    -w.(-nu) = r*gamma + alpha with gamma in the affine positive roots of
    positive delta-part and alpha in NS; each contributes
    (-1)^{ht alpha + (r-1)p(gamma) + l(w)} dim(gamma) to M_b(nu).

    With ``omega`` the pairs (r, gamma) are restricted to the reduced index
    set used for osp(1|2n): odd gamma only with odd r, and even gamma only
    when gamma/2 is not an odd root.
    """
    fin = rs.finite
    if not sharp_preserves_S(fin):
        raise PreconditionError(f"{fin.name}: W# does not map S into the positive roots")
    W = weyl_group(rs, "sharp")
    S = set(i + 1 for i in fin.S)
    finite_roots = [(r.vec, r.parity) for r in fin.roots()]
    odd_halves = {tuple(2 * x for x in r.vec) for r in fin.roots() if r.parity}
    out = []
    for nu in _affine_box(rs, cutoff):
        m = nu[0]
        neg = tuple(-a for a in nu)
        for w in W:
            img = w.dot(neg)
            if any(x.denominator != 1 for x in img):
                continue
            xi = tuple(-int(x) for x in img)
            b = None
            for r in _divisors(m):
                u = m // r
                cands = [(tuple(0 for _ in fin.theta), 0, fin.imag_mult)]
                cands += [(v, p, 1) for v, p in finite_roots]
                for gp, par, dim in cands:
                    g = rs.compose(u, gp)
                    alpha = _sub(xi, _smul(r, g))
                    if any(a < 0 or (a and i not in S) for i, a in enumerate(alpha)):
                        continue
                    if omega:
                        if par and r % 2 == 0:
                            continue
                        if not par and gp in odd_halves and u % 2 == 0:
                            continue
                    if b is None:
                        b = b_value(rs, xi)
                    sign = (-1) ** (height(alpha) + (r - 1) * par + w.length)
                    out.append((nu, sign * dim, b))
    return out


_MB_CACHE: Dict[tuple, Dict[Fraction, Dict[tuple, int]]] = {}


def mb_table(rs: AffineRootSystem, cutoff: int, route: str = "cordet") -> Dict[Fraction, Dict[tuple, int]]:
    """All M_b restricted to heights <= cutoff, as {b: {vector: coefficient}}.

    Routes: ``cordet`` (k_J-weighted triples), ``detdef`` (alternating
    W#-orbit form over the isotropic cone) and ``proosp`` (the orbit form
    over the reduced index set, osp(1|2n) only).
    """
    _require_affine(rs)
    key = (id(rs), rs.name, cutoff, route)
    hit = _MB_CACHE.get(key)
    if hit is not None and hit[0] is rs:
        return hit[1]
    acc: Dict[Fraction, Dict[tuple, int]] = {}
    if route == "cordet":
        for xi, wgt in _cordet_terms(rs, cutoff):
            d = acc.setdefault(b_value(rs, xi), {})
            d[xi] = d.get(xi, 0) + wgt
    elif route in ("detdef", "proosp"):
        if route == "proosp" and rs.finite.family != "osp1":
            raise PreconditionError("the reduced product applies to osp(1|2n) only")
        for nu, wgt, b in _orbit_terms(rs, cutoff, omega=(route == "proosp")):
            d = acc.setdefault(b, {})
            d[nu] = d.get(nu, 0) + wgt
    else:
        raise ValueError(f"unknown route {route!r}")
    table = {}
    for b, d in acc.items():
        d = {v: c for v, c in d.items() if c}
        if d:
            table[b] = d
    table = dict(sorted(table.items()))
    _MB_CACHE[key] = (rs, table)
    return table


@dataclass
class MbSeries:
    b: Fraction
    cutoff: int
    coeffs: Dict[tuple, int]

    @property
    def nonzero(self) -> bool:
        return bool(self.coeffs)

    def verdict(self) -> str:
        if self.coeffs:
            return "nonzero"
        return f"zero up to cutoff {self.cutoff}"

    def lowest_terms(self, n: int = 3) -> List[Tuple[tuple, int]]:
        return sorted(self.coeffs.items(), key=lambda kv: (height(kv[0]), kv[0]))[:n]


def mb_series(rs: AffineRootSystem, b, cutoff: int, route: Optional[str] = None) -> MbSeries:
    """M_b = R * sum_nu m_b(nu) e^{-nu}, truncated at the height cutoff."""
    _require_affine(rs)
    if route is None:
        route = "cordet"
    b = Q(b)
    return MbSeries(b, cutoff, dict(mb_table(rs, cutoff, route).get(b, {})))


def _det_from_table(rs: AffineRootSystem, nu, route: str, provenance: str) -> FactoredDeterminant:
    nu = tuple(nu)
    if len(nu) != rs.rank or any(a < 0 for a in nu):
        raise ValueError(f"level {nu} is not in Q+ of rank {rs.rank}")
    cut = height(nu)
    K = _cached_kostant(rs, cut)
    fd = FactoredDeterminant(provenance, nu)
    for b, d in mb_table(rs, cut, route).items():
        e = 0
        for v, c in d.items():
            if _leq(v, nu):
                e += c * K.get(_sub(nu, v), 0)
        fd.add(Poly.linear("k", 1, rs.hvee - b), e)
    return fd


def vacuum_det(rs: AffineRootSystem, nu) -> FactoredDeterminant:
    """Vacuum determinant from the k_J-weighted product over the affine roots."""
    _require_affine(rs)
    return gen_verma_det(rs, None, nu, provenance="cordet")


def vacuum_det_defect(rs: AffineRootSystem, nu) -> FactoredDeterminant:
    """Vacuum determinant from the alternating W#-orbit sums over NS."""
    _require_affine(rs)
    return _det_from_table(rs, nu, "detdef", "detdef")


def vacuum_det_osp12n(rs: AffineRootSystem, nu) -> FactoredDeterminant:
    """Vacuum determinant for affine osp(1|2n) over the reduced index set."""
    _require_affine(rs)
    if rs.finite.family != "osp1":
        raise PreconditionError(f"{rs.finite.name} is not osp(1|2n)")
    return _det_from_table(rs, nu, "proosp", "proosp")


def mb_routes_agree(rs: AffineRootSystem, cutoff: int, routes=("cordet", "detdef")) -> bool:
    tables = [mb_table(rs, cutoff, r) for r in routes]
    return all(t == tables[0] for t in tables[1:])


# ---------------------------------------------------------------------------
# D(2,1,a): factor families with b linear in a
# ---------------------------------------------------------------------------

def d21a_b_pair(gamma_label: str, r: int, s: int, l: int) -> Tuple[Fraction, Fraction]:
    """b(r; l delta + gamma'; s) as (rational part, coefficient of a).

    ``gamma_label`` names gamma' in the epsilon basis: "-2e0", "-(e0+e1-e2)",
    "-(e0-e1+e2)", "2e1", "2e2", "e0+e1+e2".
    """
    s1 = Fraction(s + 1, l)
    table = {
        "-2e0": (Fraction(-r + s + 1, l), Fraction(-r + s + 1, l)),
        "-(e0+e1-e2)": (Fraction(0), s1),
        "-(e0-e1+e2)": (s1, Fraction(0)),
        "2e1": (Fraction(0), Fraction(r - s - 1, l)),
        "2e2": (Fraction(r - s - 1, l), Fraction(0)),
        "e0+e1+e2": (-s1, -s1),
    }
    if gamma_label not in table:
        raise ValueError(f"unknown root label {gamma_label!r}")
    return table[gamma_label]


D21A_EPS = {
    "-2e0": (-2, 0, 0),
    "-(e0+e1-e2)": (-1, -1, 1),
    "-(e0-e1+e2)": (-1, 1, -1),
    "2e1": (0, 2, 0),
    "2e2": (0, 0, 2),
    "e0+e1+e2": (1, 1, 1),
}


# ---------------------------------------------------------------------------
# Virasoro and Neveu-Schwarz
# ---------------------------------------------------------------------------

def c_pq(p: int, q: int) -> Fraction:
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


def c_pq_ns(p: int, q: int) -> Fraction:
    return Fraction(3, 2) * (1 - Fraction(2 * (p - q) ** 2, p * q))


def in_Y(p: int, q: int) -> bool:
    """p = q mod 2 and gcd((p - q)/2, q) = 1."""
    return p >= 1 and q >= 1 and (p - q) % 2 == 0 and math.gcd(abs(p - q) // 2, q) == 1


def _j_range(p: int, q: int, N: int) -> range:
    # |(jp+1)(jq-1)| grows like j^2 pq; beyond this bound both arguments are negative
    J = 1
    while min((J * p + 1) * (J * q - 1), (J * p - 1) * (J * q + 1) - 1) <= N + 1:
        J += 1
    return range(-J, J + 1)


def dim_Lpq(p: int, q: int, N: int) -> int:
    """dim of the level-N subspace of the maximal submodule of V^{c_pq}."""
    if not (p > q >= 2 and math.gcd(p, q) == 1):
        raise ValueError(f"need coprime p > q >= 2, got ({p}, {q})")
    if N < 0:
        return 0
    tot = 0
    for j in _j_range(p, q, N):
        if j == 0:
            continue
        tot += p_cl(N - (j * p + 1) * (j * q + 1)) - p_cl(N - (j * p + 1) * (j * q - 1) - 1)
    return tot


def _ns_exponents(p: int, q: int, cutoff2: int) -> Dict[int, int]:
    """Doubled exponents of sum_{k != 0} x^{(kp+1)(kq+1)/2} - x^{((kp+1)(kq-1)+1)/2}."""
    out: Dict[int, int] = {}
    for k in _j_range(p, q, cutoff2):
        if k == 0:
            continue
        a = (k * p + 1) * (k * q + 1)
        b = (k * p + 1) * (k * q - 1) + 1
        if 0 <= a <= cutoff2:
            out[a] = out.get(a, 0) + 1
        if 0 <= b <= cutoff2:
            out[b] = out.get(b, 0) - 1
    return out


@lru_cache(maxsize=None)
def _superpartition_table(cutoff2: int) -> Tuple[int, ...]:
    t = [0] * (cutoff2 + 1)
    for (a, _), c in psi_inverse(cutoff2).items():
        t[a] += c
    return tuple(t)


def _half(N) -> int:
    N2 = Q(N) * 2
    if N2.denominator != 1:
        raise ValueError(f"level {N} is not a half-integer")
    return int(N2)


def dim_Lpq_ns(p: int, q: int, N) -> int:
    """dim at level N (a half-integer) of the maximal submodule of the NS vacuum module at c^S_pq."""
    if not (p > q >= 2 and in_Y(p, q)):
        raise ValueError(f"need p > q >= 2 with (p, q) in Y, got ({p}, {q})")
    N2 = _half(N)
    if N2 < 0:
        return 0
    sp = _superpartition_table(max(N2, 1))
    return sum(c * sp[N2 - a] for a, c in _ns_exponents(p, q, N2).items() if a <= N2)


def _vir_pairs(N: int) -> Iterable[Tuple[int, int]]:
    # the lowest level of L^{pq} is (p-1)(q-1)
    for q in range(2, N + 2):
        for p in range(q + 1, N + 3):
            if (p - 1) * (q - 1) <= N and math.gcd(p, q) == 1:
                yield p, q


def virasoro_vacuum_det(N: int) -> FactoredDeterminant:
    if N < 0:
        raise ValueError("level must be non-negative")
    fd = FactoredDeterminant("virasoro", (N,))
    for p, q in _vir_pairs(N):
        fd.add(Poly.linear("c", 1, -c_pq(p, q)), dim_Lpq(p, q, N))
    return fd


def ns_vacuum_det(N) -> FactoredDeterminant:
    N2 = _half(N)
    if N2 < 0:
        raise ValueError("level must be non-negative")
    fd = FactoredDeterminant("ns", (Fraction(N2, 2),))
    # lowest level (p-1)(q-1)/2
    for q in range(2, N2 + 2):
        for p in range(q + 2, N2 + 4, 2):
            if (p - 1) * (q - 1) <= N2 and in_Y(p, q):
                fd.add(Poly.linear("c", 1, -c_pq_ns(p, q)), dim_Lpq_ns(p, q, Fraction(N2, 2)))
    return fd


def kac_factor(r: int, s: int) -> Poly:
    """Phi_{r,s}(h, c): h - h_{r,r} if r == s, else (h - h_{r,s})(h - h_{s,r}) as a polynomial in h, c."""
    h = Poly.var("h", ("h", "c"))
    c = Poly.var("c", ("h", "c"))
    if r == s:
        return h + (c - 1) * Fraction(r * r - 1, 24)
    A = Fraction(r * r - 1, 4)
    B = Fraction(s * s - 1, 4)
    D = Fraction(r * s - 1, 2)
    u = (13 - c) * Fraction(1, 6)
    lin = (13 - c) * Fraction(r * r + s * s - 2, 24) - (r * s - 1)
    return (h * h - h * lin + u * u * (A * B) + (A - B) ** 2
            - u * (D * (A + B)) + D * D)


def virasoro_verma_det(N: int) -> FactoredDeterminant:
    """Kac determinant at level N, up to a constant, in (h, c)."""
    if N < 1:
        raise ValueError("level must be at least 1")
    fd = FactoredDeterminant("kac", (N,))
    for r in range(1, N + 1):
        for s in range(r, N + 1):
            if r * s <= N:
                fd.add(kac_factor(r, s), p_cl(N - r * s))
    return fd


# ---------------------------------------------------------------------------
# degree identities
# ---------------------------------------------------------------------------

def vir_degree(n: int) -> int:
    """Sum of the number of parts over partitions of n with no part equal to 1."""
    from .partitions import partitions
    return sum(len(lam) for lam in partitions(n, min_part=2))


def ns_degree(n2: int) -> int:
    """Sum of lengths of superpartitions of n2/2 without parts 1/2 and 1 (doubled units)."""
    from .partitions import superpartitions
    return sum(len(lam) for lam in superpartitions(n2) if 1 not in lam and 2 not in lam)


def _first_mismatch(a: Dict[int, int], b: Dict[int, int], cutoff: int) -> Optional[int]:
    for n in range(cutoff + 1):
        if a.get(n, 0) != b.get(n, 0):
            return n
    return None


def vircon1_sides(cutoff: int) -> Tuple[Dict[int, int], Dict[int, int]]:
    lhs: Dict[int, int] = {}
    for r in range(2, cutoff + 1):
        for s in range(1, cutoff // r + 1):
            lhs[r * s] = lhs.get(r * s, 0) + 1
            if r * s + 1 <= cutoff:
                lhs[r * s + 1] = lhs.get(r * s + 1, 0) - 1
    rhs: Dict[int, int] = {}
    for q in range(2, cutoff + 2):
        for p in range(q + 1, cutoff + 3):
            if math.gcd(p, q) != 1 or (p - 1) * (q - 1) > cutoff:
                continue
            for k in _j_range(p, q, cutoff):
                if k == 0:
                    continue
                a = (1 + k * q) * (1 + k * p)
                b = (k * q - 1) * (1 + k * p) + 1
                if a <= cutoff:
                    rhs[a] = rhs.get(a, 0) + 1
                if b <= cutoff:
                    rhs[b] = rhs.get(b, 0) - 1
    return lhs, rhs


def ns_degree_sides(cutoff2: int, literal: bool = False) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Both sides of the NS degree identity in y = x^{1/2}.

    The symmetric form sums the right side over k != 0.  ``literal`` uses
    only k >= 1 with the second exponent (kp-1)(kq+1)+1.
    """
    lhs: Dict[int, int] = {}
    for r in range(2, cutoff2 + 1):
        for s in range(1, cutoff2 // r + 1):
            if (r - s) % 2:
                continue
            lhs[r * s] = lhs.get(r * s, 0) + 1
            if r * s + 1 <= cutoff2:
                lhs[r * s + 1] = lhs.get(r * s + 1, 0) - 1
    rhs: Dict[int, int] = {}
    for q in range(2, cutoff2 + 2):
        for p in range(q + 2, cutoff2 + 4, 2):
            if not in_Y(p, q) or (p - 1) * (q - 1) > cutoff2:
                continue
            if literal:
                for j in range(1, cutoff2 + 1):
                    a = (j * p + 1) * (j * q + 1)
                    b = (j * p - 1) * (j * q + 1) + 1
                    if a <= cutoff2:
                        rhs[a] = rhs.get(a, 0) + 1
                    if b <= cutoff2:
                        rhs[b] = rhs.get(b, 0) - 1
            else:
                for a, c in _ns_exponents(p, q, cutoff2).items():
                    rhs[a] = rhs.get(a, 0) + c
    return ({k: v for k, v in lhs.items() if v}, {k: v for k, v in rhs.items() if v})


def _series_mul(a: Dict[int, int], b: Dict[int, int], cutoff: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= cutoff:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _euler(cutoff: int) -> Dict[int, int]:
    """prod_{m >= 1} (1 - x^m) truncated."""
    cur = {0: 1}
    for m in range(1, cutoff + 1):
        nxt = dict(cur)
        for e, c in cur.items():
            if e + m <= cutoff:
                nxt[e + m] = nxt.get(e + m, 0) - c
        cur = {k: v for k, v in nxt.items() if v}
    return cur


@dataclass
class IdentityReport:
    name: str
    cutoff: int
    holds: bool
    first_mismatch: Optional[int] = None
    detail: str = ""


def identity_checks(name: str, cutoff: int = 60) -> IdentityReport:
    """Exact coefficient comparison of a generating-function identity up to the cutoff.

    ``vircon1``: the Virasoro degree identity; the left side is also checked
    against the degree generating function times the Euler product.
    ``ns_degree``: the NS analogue in y = x^{1/2} (cutoff is the y-degree),
    also checked against psi(x,1) times the degree series.
    ``ns_degree_literal``: the same with only j >= 1 on the right.
    ``leading_term``: top-degree parts for sl2 and sl3 Verma modules at
    heights up to ``cutoff`` (capped at 4), against the oracle.
    """
    if name == "vircon1":
        lhs, rhs = vircon1_sides(cutoff)
        gen = _series_mul(_euler(cutoff), {n: vir_degree(n) for n in range(cutoff + 1)}, cutoff)
        m = _first_mismatch(lhs, gen, cutoff)
        if m is not None:
            return IdentityReport(name, cutoff, False, m, "degree series")
        m = _first_mismatch(lhs, rhs, cutoff)
        return IdentityReport(name, cutoff, m is None, m)
    if name in ("ns_degree", "ns_degree_literal"):
        lhs, rhs = ns_degree_sides(cutoff, literal=(name == "ns_degree_literal"))
        psi = {}
        for (a, _), c in psi_series(cutoff).items():
            psi[a] = psi.get(a, 0) + c
        gen = _series_mul(psi, {n: ns_degree(n) for n in range(cutoff + 1)}, cutoff)
        m = _first_mismatch(lhs, gen, cutoff)
        if m is not None:
            return IdentityReport(name, cutoff, False, m, "degree series")
        m = _first_mismatch(lhs, rhs, cutoff)
        return IdentityReport(name, cutoff, m is None, m)
    if name == "leading_term":
        return _leading_term_report(min(cutoff, 4))
    raise ValueError(f"unknown identity {name!r}")


def _leading_term_report(max_height: int) -> IdentityReport:
    from . import oracle
    from .roots import catalog
    cases = [("A1", oracle.sl_n(2), ()), ("A2", oracle.sl_n(3), ()),
             ("A2", oracle.sl_n(3), (0,)), ("A2", oracle.sl_n(3), (1,))]
    for name, alg, I in cases:
        rs = catalog(name)
        mod = oracle.finite_verma(alg, I)
        for nu in box((max_height,) * rs.rank):
            if not 0 < sum(nu) <= max_height:
                continue
            claimed = leading_term_exponents(rs, I, nu)
            prod = Poly.const(1)
            for f, e in claimed.items():
                prod = prod * f ** e
            brute = oracle.brute_det(mod, nu)
            full = gen_verma_det(rs, I, nu).expand()
            if not proportional(top_degree_part(full), prod):
                return IdentityReport("leading_term", max_height, False, sum(nu),
                                      f"{name} I={I} nu={nu}: product formula")
            if not proportional(top_degree_part(brute), prod):
                return IdentityReport("leading_term", max_height, False, sum(nu),
                                      f"{name} I={I} nu={nu}: oracle")
    return IdentityReport("leading_term", max_height, True)
