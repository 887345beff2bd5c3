"""Kazhdan-Lusztig R-, P- and inverse Q-polynomials for crystallographic
Coxeter groups.

A group element ``w`` is stored as the integer vector ``w(rho)`` in
fundamental-weight coordinates of the reflection representation built from
an integral Cartan matrix.  ``rho`` is regular, so this vector determines
``w``; ``s_i`` is a left descent of ``w`` exactly when coordinate ``i`` is
negative.  Reading off the smallest descent repeatedly gives the ShortLex
normal form.

Polynomials in ``q`` are handled internally as integer coefficient tuples
(index = degree) and returned as :class:`~vacdet.exact.Poly`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import Poly

CPoly = Tuple[int, ...]

ONE: CPoly = (1,)
ZERO: CPoly = ()


# ---------------------------------------------------------------------------
# coefficient-tuple arithmetic
# ---------------------------------------------------------------------------

def _trim(c: List[int]) -> CPoly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a: CPoly, b: CPoly, sign: int = 1) -> CPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a: CPoly, b: CPoly) -> CPoly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: CPoly, m: int) -> CPoly:
    return (0,) * m + a if a else ZERO


def _bar_shift(a: CPoly, m: int) -> CPoly:
    """``q^m * a(q^-1)``; requires ``deg a <= m``."""
    if not a:
        return ZERO
    if len(a) - 1 > m:
        raise ValueError("bar shift would leave negative powers")
    out = [0] * (m + 1)
    for i, x in enumerate(a):
        out[m - i] = x
    return _trim(out)


def _truncate(a: CPoly, deg: int) -> CPoly:
    return _trim(list(a[:deg + 1])) if deg >= 0 else ZERO


Q_MINUS_ONE: CPoly = (-1, 1)


def to_poly(a: CPoly) -> Poly:
    return Poly(("q",), {(i,): x for i, x in enumerate(a) if x})


def cpoly_str(a: CPoly) -> str:
    if not a:
        return "0"
    parts = []
    for i, x in enumerate(a):
        if not x:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        if mono and abs(x) == 1:
            coef = "-" if x < 0 else "+"
            parts.append(f"{coef}{mono}")
        else:
            parts.append(f"{x:+d}{mono}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# Coxeter groups
# ---------------------------------------------------------------------------

_CARTAN_PAIR = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), 0: (-2, -2)}


def cartan_from_coxeter(m: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """A crystallographic Cartan matrix realizing the Coxeter matrix ``m``.

    ``m[i][j] = 0`` encodes an infinite bond.
    """
    n = len(m)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            if m[i][j] not in _CARTAN_PAIR:
                raise ValueError(f"m_ij = {m[i][j]} is not crystallographic")
            a[i][j], a[j][i] = _CARTAN_PAIR[m[i][j]]
    return tuple(tuple(r) for r in a)


class GroupMismatch(ValueError):
    pass


class IntervalTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    group: str
    vec: Tuple[int, ...]


class CoxeterGroup:
    """Coxeter group of an integral Cartan matrix ``A`` with ``A[i][j] = <alpha_j, alpha_i^vee>``."""

    def __init__(self, cartan: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = "W"):
        self.cartan = tuple(tuple(int(x) for x in r) for r in cartan)
        self.rank = len(self.cartan)
        self.labels = tuple(labels) if labels else tuple(f"s{i + 1}" for i in range(self.rank))
        self.name = name
        self.e = Element(name, (1,) * self.rank)
        self._word: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        self._leq: Dict[Tuple[tuple, tuple], bool] = {}
        self._lower: Dict[Tuple[int, ...], frozenset] = {}

    # basic operations --------------------------------------------------
    def _check(self, *xs: Element):
        for x in xs:
            if x.group != self.name:
                raise GroupMismatch(f"element of {x.group} used in {self.name}")

    def _reflect(self, i: int, v: Tuple[int, ...]) -> Tuple[int, ...]:
        c = v[i]
        if not c:
            return v
        return tuple(v[j] - c * self.cartan[j][i] for j in range(self.rank))

    def descents(self, x: Element) -> List[int]:
        """Left descents: ``i`` with ``l(s_i x) < l(x)``."""
        return [i for i, c in enumerate(x.vec) if c < 0]

    def lmul(self, i: int, x: Element) -> Element:
        return Element(self.name, self._reflect(i, x.vec))

    def word(self, x: Element) -> Tuple[int, ...]:
        """ShortLex-minimal reduced word (generator indices)."""
        self._check(x)
        v = x.vec
        if v in self._word:
            return self._word[v]
        path = []
        u = v
        while True:
            if u in self._word:
                tail = self._word[u]
                break
            i = next((j for j, c in enumerate(u) if c < 0), None)
            if i is None:
                tail = ()
                self._word[u] = tail
                break
            path.append((u, i))
            u = self._reflect(i, u)
        for u, i in reversed(path):
            tail = (i,) + tail
            self._word[u] = tail
        return self._word[v]

    def length(self, x: Element) -> int:
        return len(self.word(x))

    def from_word(self, word: Iterable[int]) -> Element:
        v = self.e.vec
        for i in reversed(tuple(word)):
            v = self._reflect(i, v)
        return Element(self.name, v)

    def rmul(self, x: Element, i: int) -> Element:
        return self.from_word(self.word(x) + (i,))

    def inverse(self, x: Element) -> Element:
        return self.from_word(reversed(self.word(x)))

    def gen(self, i: int) -> Element:
        return self.from_word((i,))

    # parsing / printing ---------------------------------------------------
    def parse(self, text: str) -> Element:
        """Parse ``"s0s1s2"``, ``"s0 s1 s2"``, ``"e"``; ``(...)^n`` powers are allowed."""
        t = text.replace(" ", "")
        if t in ("", "e", "1"):
            return self.e
        while "(" in t:
            m = re.search(r"\(([^()]*)\)\^?(\d*)", t)
            if not m:
                raise ValueError(f"cannot parse {text!r}")
            t = t[:m.start()] + m.group(1) * int(m.group(2) or 1) + t[m.end():]
        idx = {lab: i for i, lab in enumerate(self.labels)}
        toks = re.findall(r"s\d+", t)
        if "".join(toks) != t:
            raise ValueError(f"cannot parse {text!r}")
        try:
            return self.from_word(idx[s] for s in toks)
        except KeyError as e:
            raise ValueError(f"unknown generator {e.args[0]} in {self.name}") from None

    def format(self, x: Element) -> str:
        w = self.word(x)
        return "".join(self.labels[i] for i in w) if w else "e"

    # Bruhat order -----------------------------------------------------------
    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """``x <= y`` via the lifting property on a left descent of ``y``."""
        self._check(x, y)
        key = (x.vec, y.vec)
        hit = self._leq.get(key)
        if hit is not None:
            return hit
        if x.vec == y.vec:
            res = True
        else:
            dy = self.descents(y)
            if not dy:
                res = False
            else:
                s = dy[0]
                lx = self.length(x)
                if lx >= self.length(y):
                    res = False
                else:
                    sy = self.lmul(s, y)
                    res = self.bruhat_leq(self.lmul(s, x) if x.vec[s] < 0 else x, sy)
        self._leq[key] = res
        return res

    def lower_interval(self, y: Element, limit: int = 200000) -> frozenset:
        """``[e, y]`` as the set of products of subwords of a reduced word of ``y``."""
        self._check(y)
        got = self._lower.get(y.vec)
        if got is not None:
            return got
        cur = {self.e.vec}
        for i in self.word(y):
            # right multiplication by s_i, done through from_word on stored words
            cur |= {self.rmul(Element(self.name, v), i).vec for v in cur}
            if len(cur) > limit:
                raise IntervalTooLarge(f"[e, {self.format(y)}] exceeds {limit} elements")
        res = frozenset(cur)
        self._lower[y.vec] = res
        return res

    def interval(self, x: Element, z: Element) -> List[Element]:
        """Elements of ``[x, z]`` sorted by (length, normal form)."""
        if not self.bruhat_leq(x, z):
            return []
        out = [Element(self.name, v) for v in self.lower_interval(z)]
        out = [w for w in out if self.bruhat_leq(x, w)]
        out.sort(key=lambda w: (self.length(w), self.word(w)))
        return out

    def elements_up_to(self, n: int) -> List[Element]:
        """All elements of length ``<= n`` (breadth first)."""
        seen = {self.e.vec}
        layer = [self.e.vec]
        out = [self.e]
        for _ in range(n):
            nxt = []
            for v in layer:
                for i in range(self.rank):
                    if v[i] > 0:  # s_i w is longer
                        u = self._reflect(i, v)
                        if u not in seen:
                            seen.add(u)
                            nxt.append(u)
            if not nxt:
                break
            out.extend(Element(self.name, u) for u in nxt)
            layer = nxt
        return out


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------

def _chain(n: int, bonds: Dict[Tuple[int, int], int]) -> List[List[int]]:
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), v in bonds.items():
        m[i][j] = m[j][i] = v
    return m


def _finite_coxeter(kind: str, n: int) -> List[List[int]]:
    """Coxeter matrix, nodes numbered 1..n with the multiple bond between 1 and 2
    for B/C, and the branch node 3 joined to 1 and 2 for D."""
    if kind == "A":
        return _chain(n, {(i, i + 1): 3 for i in range(n - 1)})
    if kind in ("B", "C"):
        bonds = {(i, i + 1): 3 for i in range(1, n - 1)}
        bonds[(0, 1)] = 4
        return _chain(n, bonds)
    if kind == "D":
        bonds = {(0, 2): 3, (1, 2): 3}
        bonds.update({(i, i + 1): 3 for i in range(2, n - 1)})
        return _chain(n, bonds)
    if kind == "G":
        return _chain(2, {(0, 1): 6})
    if kind == "F":
        return _chain(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})
    if kind == "I":  # dihedral I2(m) handled by caller
        raise ValueError
    raise ValueError(kind)


# affine diagrams: node 0 first, then the finite nodes 1..n
_AFFINE = {
    "A2": _chain(3, {(0, 1): 3, (0, 2): 3, (1, 2): 3}),
    "C2": _chain(3, {(0, 1): 4, (1, 2): 4}),
    "B2": _chain(3, {(0, 1): 4, (1, 2): 4}),
    "G2": _chain(3, {(0, 1): 3, (1, 2): 6}),
}


def diagram(name: str) -> CoxeterGroup:
    """Coxeter group by diagram name.

    Finite: ``A3``, ``B2``, ``C3``, ``D4``, ``F4``, ``G2`` (generators
    ``s1..sn``).  Affine: ``affine-A2``, ``affine-C2``, ``affine-G2``,
    ``affine-An`` (generators ``s0..sn``); in ``affine-G2`` node 0 joins
    node 1 and node 1 joins node 2 by the sixfold bond.
    """
    s = name.strip().replace(" ", "")
    m = re.fullmatch(r"(?:affine-|~)([A-G])(\d)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        key = f"{kind}{n}"
        if key in _AFFINE:
            cox = _AFFINE[key]
        elif kind == "A" and n >= 2:
            cox = _chain(n + 1, {(i, (i + 1) % (n + 1)): 3 for i in range(n + 1)})
        else:
            raise ValueError(f"unsupported affine diagram {name!r}")
        return CoxeterGroup(cartan_from_coxeter(cox), [f"s{i}" for i in range(n + 1)], f"affine-{key}")
    m = re.fullmatch(r"([A-G])(\d)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        cox = _finite_coxeter(kind, n)
        if len(cox) != n:
            raise ValueError(f"unsupported diagram {name!r}")
        return CoxeterGroup(cartan_from_coxeter(cox), [f"s{i + 1}" for i in range(n)], f"{kind}{n}")
    m = re.fullmatch(r"I2\((\d+)\)", s)
    if m:
        return CoxeterGroup(cartan_from_coxeter(_chain(2, {(0, 1): int(m.group(1))})), ["s1", "s2"], s)
    raise ValueError(f"unknown diagram {name!r}")


# ---------------------------------------------------------------------------
# KL tables
# ---------------------------------------------------------------------------

class KLTable:
    """Memoized R, P, Q polynomials for one group (one table per computation)."""

    def __init__(self, group: CoxeterGroup, max_interval: int = 50000):
        self.W = group
        self.max_interval = max_interval
        self._R: Dict[Tuple[tuple, tuple], CPoly] = {}
        self._P: Dict[Tuple[tuple, tuple], CPoly] = {}
        self._Q: Dict[Tuple[str, tuple, tuple], CPoly] = {}

    def _el(self, x) -> Element:
        if isinstance(x, str):
            return self.W.parse(x)
        self.W._check(x)
        return x

    def _interval(self, x: Element, z: Element) -> List[Element]:
        iv = self.W.interval(x, z)
        if len(iv) > self.max_interval:
            raise IntervalTooLarge(f"interval has {len(iv)} elements")
        return iv

    # R --------------------------------------------------------------------
    def _r(self, x: Element, y: Element) -> CPoly:
        key = (x.vec, y.vec)
        hit = self._R.get(key)
        if hit is not None:
            return hit
        W = self.W
        if x.vec == y.vec:
            res = ONE
        elif not W.bruhat_leq(x, y):
            res = ZERO
        else:
            s = W.descents(y)[0]
            sx, sy = W.lmul(s, x), W.lmul(s, y)
            if x.vec[s] < 0:
                res = self._r(sx, sy)
            else:
                # R_{sx,y} = R_{x,sy} here, since s is a descent of both sx and y
                res = _add(_mul(Q_MINUS_ONE, self._r(x, sy)), _shift(self._r(sx, sy), 1))
        self._R[key] = res
        return res

    def r_poly(self, x, y) -> Poly:
        return to_poly(self._r(self._el(x), self._el(y)))

    # P --------------------------------------------------------------------
    def _p(self, x: Element, y: Element) -> CPoly:
        key = (x.vec, y.vec)
        hit = self._P.get(key)
        if hit is not None:
            return hit
        W = self.W
        if not W.bruhat_leq(x, y):
            return ZERO
        ly = W.length(y)
        L = ly - W.length(x)
        if L <= 2:
            self._P[key] = ONE
            return ONE
        # P_{x,y} - q^L Pbar_{x,y} = sum over w in ]x,y] of
        #   (-1)^{l(w)-l(x)} R_{x,w} q^{l(y)-l(w)} Pbar_{w,y}
        acc = ZERO
        lx = ly - L
        for w in self._interval(x, y):
            if w.vec == x.vec:
                continue
            lw = W.length(w)
            term = _mul(self._r(x, w), _bar_shift(self._p(w, y), ly - lw))
            acc = _add(acc, term, -1 if (lw - lx) % 2 else 1)
        res = _truncate(acc, (L - 1) // 2)
        if _add(acc, res, -1) != _add(ZERO, _bar_shift(res, L), -1):
            raise ArithmeticError("P recursion is inconsistent")
        self._P[key] = res
        return res

    def p_poly(self, x, y) -> Poly:
        return to_poly(self._p(self._el(x), self._el(y)))

    # Q --------------------------------------------------------------------
    def _q_inverse(self, y: Element, z: Element) -> CPoly:
        """From sum_w (-1)^{l(w)-l(y)} Q_{y,w} P_{w,z} = delta_{y,z}."""
        key = ("defQ", y.vec, z.vec)
        hit = self._Q.get(key)
        if hit is not None:
            return hit
        W = self.W
        if not W.bruhat_leq(y, z):
            return ZERO
        if y.vec == z.vec:
            return ONE
        ly, lz = W.length(y), W.length(z)
        acc = ZERO
        for w in self._interval(y, z):
            if w.vec == z.vec:
                continue
            lw = W.length(w)
            acc = _add(acc, _mul(self._q_inverse(y, w), self._p(w, z)), -1 if (lw - ly) % 2 else 1)
        # (-1)^{l(z)-l(y)} Q_{y,z} = -acc
        res = acc if (lz - ly) % 2 else _add(ZERO, acc, -1)
        self._Q[key] = res
        return res

    def _q_rform(self, x: Element, z: Element) -> CPoly:
        """From Q_{x,z} = sum_w (-1)^{l(z)-l(w)} q^{l(w)-l(x)} Qbar_{x,w} R_{w,z}."""
        key = ("prQ", x.vec, z.vec)
        hit = self._Q.get(key)
        if hit is not None:
            return hit
        W = self.W
        if not W.bruhat_leq(x, z):
            return ZERO
        lx, lz = W.length(x), W.length(z)
        L = lz - lx
        if L == 0:
            return ONE
        acc = ZERO
        for w in self._interval(x, z):
            if w.vec == z.vec:
                continue
            lw = W.length(w)
            term = _mul(_bar_shift(self._q_rform(x, w), lw - lx), self._r(w, z))
            acc = _add(acc, term, -1 if (lz - lw) % 2 else 1)
        # Q - q^L Qbar = acc, with deg Q <= (L-1)/2
        res = _truncate(acc, (L - 1) // 2)
        if _add(acc, res, -1) != _add(ZERO, _bar_shift(res, L), -1):
            raise ArithmeticError("Q recursion is inconsistent")
        self._Q[key] = res
        return res

    def q_cpoly(self, x, z, route: str = "defQ") -> CPoly:
        x, z = self._el(x), self._el(z)
        if route == "defQ":
            return self._q_inverse(x, z)
        if route == "prQ":
            return self._q_rform(x, z)
        raise ValueError(f"unknown route {route!r}")

    def q_poly(self, x, z, route: str = "defQ") -> Poly:
        return to_poly(self.q_cpoly(x, z, route))

    def q_routes_agree(self, x, z) -> bool:
        return self.q_cpoly(x, z, "defQ") == self.q_cpoly(x, z, "prQ")

    # M --------------------------------------------------------------------
    def m_cpoly(self, x, z) -> CPoly:
        x, z = self._el(x), self._el(z)
        W = self.W
        lx, lz = W.length(x), W.length(z)
        acc = ZERO
        for w in self._interval(x, z):
            lw = W.length(w)
            acc = _add(acc, _shift(self._r(w, z), lw - lx), -1 if (lz - lw) % 2 else 1)
        return acc

    def m_statistic(self, x, z) -> Poly:
        return to_poly(self.m_cpoly(x, z))


@dataclass
class ThetaResult:
    member: bool
    node: str
    diagram: str
    bound: int
    witness: Optional[str] = None
    q: Optional[str] = None

    @property
    def verdict(self) -> str:
        return "member" if self.member else f"non-member up to length {self.bound}"


def theta_member(node: str, diagram_name: str, length_bound: int, route: str = "prQ") -> ThetaResult:
    """Search for ``w`` with ``l(w) <= length_bound`` and ``Q_{s,w} != 1``.

    The witness is a shortest such ``w`` (ShortLex-first among those).
    """
    W = diagram_name if isinstance(diagram_name, CoxeterGroup) else diagram(diagram_name)
    table = KLTable(W)
    s = W.parse(node)
    if W.length(s) != 1:
        raise ValueError(f"{node} is not a generator")
    cands = [w for w in W.elements_up_to(length_bound) if W.bruhat_leq(s, w)]
    cands.sort(key=lambda w: (W.length(w), W.word(w)))
    for w in cands:
        qv = table.q_cpoly(s, w, route)
        if qv != ONE:
            return ThetaResult(True, node, W.name, length_bound, W.format(w), cpoly_str(qv))
    return ThetaResult(False, node, W.name, length_bound)


def multiplicity_sum(table: KLTable, z: Element, s0: Element) -> int:
    """``sum over s0 <= w <= z of (-1)^{l(w)+1} P_{w,z}(1)``."""
    W = table.W
    total = 0
    for w in table._interval(s0, z):
        total += (-1) ** (W.length(w) + 1) * sum(table._p(w, z))
    return total
