"""Root data for finite and affine Lie (super)algebras.

Lattice vectors are integer tuples in the basis of simple roots.  Affine
systems put ``alpha_0 = delta - theta`` first, so ``delta`` has coordinates
``(1, theta...)`` and the height of a vector is simply its coordinate sum.

Finite systems also carry an ambient epsilon-basis realization with the
bilinear form used in the catalog tables; ``scaled`` rescales the form.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .linalg import identity, solve

Vec = Tuple[int, ...]


@dataclass(frozen=True)
class Root:
    vec: Vec
    parity: int = 0
    mult: int = 1


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _smul(c, v):
    return tuple(c * a for a in v)


class RootSystem:
    """Common interface: a symmetric form on the root lattice plus rho."""

    name: str
    rank: int
    B: Tuple[Tuple[Fraction, ...], ...]
    simple_parity: Tuple[int, ...]
    rho_pair: Tuple[Fraction, ...]
    affine = False

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        B = self.B
        s = Fraction(0)
        for i, a in enumerate(u):
            if a:
                row = B[i]
                for j, b in enumerate(v):
                    if b:
                        s += a * b * row[j]
        return s

    def norm(self, v) -> Fraction:
        return self.form(v, v)

    def rho(self, v) -> Fraction:
        """The pairing (rho|v) for a lattice vector v."""
        return sum((a * r for a, r in zip(v, self.rho_pair)), Fraction(0))

    def parity(self, v) -> int:
        return sum(a * p for a, p in zip(v, self.simple_parity)) % 2

    def height(self, v) -> int:
        return sum(v)

    def basis_tag(self) -> str:
        return self.name

    def simple_vec(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def positive_roots(self, cutoff: Optional[int] = None) -> List[Root]:
        raise NotImplementedError

    def casimir_eigenvalue(self, lam) -> Fraction:
        """(lam + 2 rho | lam) for a lattice vector lam."""
        return self.norm(lam) + 2 * self.rho(lam)

    def is_positive_root(self, v) -> bool:
        v = tuple(v)
        return any(r.vec == v for r in self.positive_roots(self.height(v)))


# ---------------------------------------------------------------------------
# finite systems
# ---------------------------------------------------------------------------

class FiniteRootSystem(RootSystem):
    """A finite root system (Lie or super) with an ambient realization.

    ``ambient_gram`` is the form on the epsilon basis; simple roots and the
    stated rho and theta are ambient vectors.  ``sharp`` selects the even
    roots spanning the subsystem used for the group W#.
    """

    def __init__(self, name: str, labels: Sequence[str], ambient_gram, simple: Sequence,
                 simple_parity: Sequence[int], even_pos: Sequence, odd_pos: Sequence,
                 theta, rho_stated=None, S: Sequence[int] = (), sharp: Optional[Callable] = None,
                 std_scale=Fraction(1), aliases: Sequence[str] = (), imag_mult: Optional[int] = None,
                 scale=Fraction(1), family: str = "lie"):
        self.name = name
        self.labels = tuple(labels)
        self._gram0 = tuple(tuple(Fraction(x) for x in row) for row in ambient_gram)
        self.scale = Fraction(scale)
        self.ambient_gram = tuple(tuple(x * self.scale for x in row) for row in self._gram0)
        self.simple_ambient = tuple(tuple(Fraction(x) for x in v) for v in simple)
        self.rank = len(simple)
        self.simple_parity = tuple(simple_parity)
        self.family = family
        self.B = tuple(tuple(self.aform(a, b) for b in self.simple_ambient) for a in self.simple_ambient)
        roots = []
        for v in even_pos:
            roots.append(Root(self.from_ambient(v), 0))
        for v in odd_pos:
            roots.append(Root(self.from_ambient(v), 1))
        for r in roots:
            if any(a < 0 for a in r.vec):
                raise ValueError(f"{name}: listed root {r.vec} is not positive for the chosen simple roots")
            if self.parity(r.vec) != r.parity:
                raise ValueError(f"{name}: parity mismatch for {r.vec}")
        self._roots = sorted(roots, key=lambda r: (sum(r.vec), r.vec))
        self.theta_ambient = tuple(Fraction(x) for x in theta)
        self.theta = self.from_ambient(theta)
        self.rho_ambient = self._rho_from_roots()
        self.rho_stated = tuple(Fraction(x) for x in rho_stated) if rho_stated is not None else None
        self.rho_pair = tuple(self.aform(self.rho_ambient, a) for a in self.simple_ambient)
        self.S = tuple(S)
        self._sharp = sharp
        self.std_scale = Fraction(std_scale)
        self.aliases = tuple(aliases)
        self.imag_mult = imag_mult if imag_mult is not None else self.rank
        self._ctor = dict(name=name, labels=labels, ambient_gram=ambient_gram, simple=simple,
                          simple_parity=simple_parity, even_pos=even_pos, odd_pos=odd_pos,
                          theta=theta, rho_stated=rho_stated, S=S, sharp=sharp,
                          std_scale=std_scale, aliases=aliases, imag_mult=imag_mult, family=family)

    # ambient helpers ----------------------------------------------------
    def aform(self, x, y) -> Fraction:
        G = self.ambient_gram
        return sum((x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y))
                    if x[i] and y[j]), Fraction(0))

    def from_ambient(self, x) -> Vec:
        c = solve(self.simple_ambient, [Fraction(a) for a in x])
        if any(a.denominator != 1 for a in c):
            raise ValueError(f"{x} is not in the root lattice")
        return tuple(int(a) for a in c)

    def to_ambient(self, v) -> Tuple[Fraction, ...]:
        n = len(self.labels)
        out = [Fraction(0)] * n
        for a, s in zip(v, self.simple_ambient):
            if a:
                for i in range(n):
                    out[i] += a * s[i]
        return tuple(out)

    def _rho_from_roots(self):
        n = len(self.labels)
        out = [Fraction(0)] * n
        for r in self._roots:
            amb = self.to_ambient(r.vec)
            sgn = -1 if r.parity else 1
            for i in range(n):
                out[i] += sgn * amb[i] / 2
        return tuple(out)

    def scaled(self, s) -> "FiniteRootSystem":
        """Same system with the bilinear form multiplied by ``s``."""
        kw = dict(self._ctor)
        return FiniteRootSystem(scale=self.scale * Fraction(s), **kw)

    def standard(self) -> "FiniteRootSystem":
        """Rescale to the standard normalization (long roots of the sharp part of norm 2)."""
        return self.scaled(self.std_scale / self.scale) if self.scale != 1 else self.scaled(self.std_scale)

    # data -----------------------------------------------------------------
    def positive_roots(self, cutoff: Optional[int] = None) -> List[Root]:
        if cutoff is None:
            return list(self._roots)
        return [r for r in self._roots if sum(r.vec) <= cutoff]

    def roots(self) -> List[Root]:
        return self._roots + [Root(_smul(-1, r.vec), r.parity) for r in self._roots]

    @cached_property
    def root_set(self):
        return {r.vec for r in self.roots()}

    @property
    def even_positive(self) -> List[Vec]:
        return [r.vec for r in self._roots if r.parity == 0]

    @property
    def odd_positive(self) -> List[Vec]:
        return [r.vec for r in self._roots if r.parity == 1]

    @property
    def sharp_positive(self) -> List[Vec]:
        if self._sharp is None:
            return self.even_positive
        return [v for v in self.even_positive if self._sharp(self.to_ambient(v))]

    @property
    def is_lie(self) -> bool:
        return all(p == 0 for p in self.simple_parity)

    @property
    def defect(self) -> int:
        return len(self.S)

    def dual_coxeter(self) -> Fraction:
        """h^vee_B = (rho|theta) + (theta|theta)/2 in the current normalization."""
        return self.rho(self.theta) + self.norm(self.theta) / 2

    def rho_norm(self) -> Fraction:
        return self.aform(self.rho_ambient, self.rho_ambient)

    def bilinear(self, a, b) -> Fraction:
        return self.form(a, b)

    def __repr__(self):
        return f"FiniteRootSystem({self.name!r}, rank={self.rank}, scale={self.scale})"


def indecomposables(pos: Sequence[Vec]) -> List[Vec]:
    """Elements of a positive system that are not sums of two of its elements."""
    s = set(pos)
    out = []
    for v in pos:
        if not any(_sub(v, u) in s for u in pos if u != v):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# affine systems
# ---------------------------------------------------------------------------

class AffineRootSystem(RootSystem):
    """Untwisted affinization; coordinates (alpha_0, alpha_1, ..., alpha_n)."""

    affine = True

    def __init__(self, fin: FiniteRootSystem):
        self.finite = fin
        self.name = fin.name + "^"
        n = fin.rank
        self.rank = n + 1
        th = fin.theta
        Bf = fin.B
        rows = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        rows[0][0] = fin.norm(th)
        for i in range(n):
            x = -sum(th[j] * Bf[j][i] for j in range(n))
            rows[0][i + 1] = rows[i + 1][0] = x
            for j in range(n):
                rows[i + 1][j + 1] = Bf[i][j]
        self.B = tuple(tuple(r) for r in rows)
        self.simple_parity = (fin.parity(th),) + fin.simple_parity
        self.hvee = fin.dual_coxeter()
        self.rho_pair = (self.hvee - fin.rho(th),) + fin.rho_pair
        self.delta = (1,) + tuple(th)
        self.imag_mult = fin.imag_mult

    def level_pair(self, v) -> int:
        """(Lambda_0 | v): the delta-coefficient of v."""
        return v[0]

    def split(self, v) -> Tuple[int, Vec]:
        """Write v = u*delta + gamma' and return (u, gamma')."""
        u = v[0]
        return u, tuple(a - u * t for a, t in zip(v[1:], self.finite.theta))

    def compose(self, u: int, gamma: Sequence[int]) -> Vec:
        return (u,) + tuple(a + u * t for a, t in zip(gamma, self.finite.theta))

    def embed(self, gamma: Sequence[int]) -> Vec:
        return (0,) + tuple(gamma)

    def delta_height(self) -> int:
        return sum(self.delta)

    def positive_roots(self, cutoff: Optional[int] = None) -> List[Root]:
        if cutoff is None:
            raise ValueError("affine root systems need an explicit height cutoff")
        fin = self.finite
        out = [Root(self.embed(r.vec), r.parity) for r in fin.positive_roots(cutoff)]
        hd = self.delta_height()
        allroots = fin.roots()
        u = 1
        while u * hd - sum(fin.theta) <= cutoff:
            d = self.compose(u, (0,) * fin.rank)
            if sum(d) <= cutoff:
                out.append(Root(d, 0, self.imag_mult))
            for r in allroots:
                v = self.compose(u, r.vec)
                if sum(v) <= cutoff:
                    out.append(Root(v, r.parity))
            u += 1
        out.sort(key=lambda r: (sum(r.vec), r.vec))
        return out

    def is_real_finite(self, v) -> bool:
        return v[0] == 0

    def phi_coeffs(self, xi) -> Tuple[Fraction, Fraction]:
        """phi_xi(k Lambda_0) = slope*k + intercept."""
        return Fraction(xi[0]), self.rho(xi) - self.norm(xi) / 2

    def __repr__(self):
        return f"AffineRootSystem({self.finite.name!r})"


def affinize(fin: FiniteRootSystem) -> AffineRootSystem:
    if fin.theta is None:
        raise ValueError("missing theta")
    return AffineRootSystem(fin)


# ---------------------------------------------------------------------------
# Weyl groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    word: Tuple[int, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]   # columns-as-rows: matrix[i] = image row i
    shift: Tuple[Fraction, ...]                # w.0 = w(rho) - rho
    length: int

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, v) -> tuple:
        return tuple(sum(self.matrix[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))

    def dot(self, v) -> tuple:
        w = self.act(v)
        return tuple(a + b for a, b in zip(w, self.shift))


def reflection_data(rs: RootSystem, beta) -> Tuple[tuple, tuple]:
    """Matrix and dot-shift of the reflection in a non-isotropic root beta."""
    nb = rs.norm(beta)
    if nb == 0:
        raise ValueError("cannot reflect in an isotropic root")
    n = rs.rank
    cols = []
    for j in range(n):
        e = rs.simple_vec(j)
        c = 2 * rs.form(e, beta) / nb
        cols.append(tuple(Fraction(e[i]) - c * beta[i] for i in range(n)))
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    c = 2 * rs.rho(beta) / nb
    shift = tuple(-c * b for b in beta)
    return mat, shift


def _compose(m1, s1, m2, s2):
    """(m1,s1) after (m2,s2) as affine maps v -> m v + s."""
    n = len(m1)
    m = tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n)) for i in range(n))
    s = tuple(sum(m1[i][k] * s2[k] for k in range(n)) + s1[i] for i in range(n))
    return m, s


def weyl_generators(rs: RootSystem, which: str = "full") -> List[Vec]:
    """Simple roots (lattice vectors) of the reflection group requested.

    For an affine system the finite group is used, embedded in the affine
    lattice.
    """
    fin = rs.finite if rs.affine else rs
    if which == "full":
        pos = fin.even_positive
    elif which == "sharp":
        pos = fin.sharp_positive
    else:
        raise ValueError("which must be 'full' or 'sharp'")
    gens = indecomposables(pos)
    if rs.affine:
        gens = [rs.embed(g) for g in gens]
    return gens


def weyl_group(rs: RootSystem, which: str = "full", max_size: int = 20000) -> List[WeylElement]:
    """Enumerate the finite group W or W# by breadth-first search.

    Each element appears once, with a reduced word in the generators and
    its length.
    """
    gens = weyl_generators(rs, which)
    data = [reflection_data(rs, g) for g in gens]
    n = rs.rank
    ident = tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
    zero = tuple(Fraction(0) for _ in range(n))
    start = WeylElement((), ident, zero, 0)
    seen = {ident: start}
    out = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for gi, (m, s) in enumerate(data):
            nm, ns = _compose(m, s, w.matrix, w.shift)
            if nm not in seen:
                e = WeylElement(w.word + (gi,), nm, ns, w.length + 1)
                seen[nm] = e
                out.append(e)
                queue.append(e)
                if len(out) > max_size:
                    raise ValueError("Weyl group larger than the size bound")
    return out


def dot_action(w: WeylElement, lam) -> tuple:
    return w.dot(lam)


def phi(rs: AffineRootSystem, xi) -> "Poly":
    """phi_xi(k Lambda_0) = (k Lambda_0 + rho^|xi) - (xi|xi)/2 as a polynomial in k."""
    from .exact import Poly
    a, b = rs.phi_coeffs(xi)
    return Poly(("k",), {(1,): a, (0,): b})


def phi_finite(rs: RootSystem, xi, lam_pair: Sequence) -> Fraction:
    """(lam + rho|xi) - (xi|xi)/2 where lam is given by its pairings with simple roots."""
    return (sum((a * x for a, x in zip(xi, lam_pair)), Fraction(0)) + rs.rho(xi) - rs.norm(xi) / 2)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _e(n, *pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _diag(*xs):
    n = len(xs)
    return [[Fraction(xs[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def _lie_positive(cartan_B) -> List[Vec]:
    """Positive roots of a finite Lie algebra from its symmetrized Cartan matrix."""
    n = len(cartan_B)

    def pair(v, i):  # <v, alpha_i^vee>
        return sum(2 * v[j] * cartan_B[j][i] for j in range(n)) / cartan_B[i][i]

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for v in layer:
            for i in range(n):
                p = 0
                w = _sub(v, simple[i])
                while w in roots:
                    p += 1
                    w = _sub(w, simple[i])
                q = p - pair(v, i)
                if q > 0:
                    u = _add(v, simple[i])
                    if u not in roots:
                        roots.add(u)
                        nxt.append(u)
        layer = nxt
    return sorted(roots, key=lambda v: (sum(v), v))


def _lie(name, labels, gram, simple, aliases=()):
    n = len(labels)
    fake = FiniteRootSystem.__new__(FiniteRootSystem)
    fake.ambient_gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
    simple = [tuple(Fraction(x) for x in s) for s in simple]
    Bm = [[fake.aform.__func__(fake, a, b) for b in simple] for a in simple]
    pos = _lie_positive(Bm)
    amb = []
    for v in pos:
        x = [Fraction(0)] * n
        for c, s in zip(v, simple):
            for i in range(n):
                x[i] += c * s[i]
        amb.append(tuple(x))
    theta = amb[-1]
    return FiniteRootSystem(name, labels, gram, simple, [0] * len(simple), amb, [], theta,
                            aliases=aliases, family="lie")


def _type_A(n):
    m = n + 1
    labels = [f"e{i}" for i in range(1, m + 1)]
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)]
    return _lie(f"A{n}", labels, _diag(*([1] * m)), simple, aliases=(f"sl{m}", f"sl({m})"))


def _type_B(n):
    labels = [f"e{i}" for i in range(1, n + 1)]
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    return _lie(f"B{n}", labels, _diag(*([1] * n)), simple, aliases=(f"so{2 * n + 1}",))


def _type_C(n):
    labels = [f"e{i}" for i in range(1, n + 1)]
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    return _lie(f"C{n}", labels, _diag(*([Fraction(1, 2)] * n)), simple, aliases=(f"sp{2 * n}",))


def _type_D(n):
    labels = [f"e{i}" for i in range(1, n + 1)]
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 2, 1), (n - 1, 1))]
    return _lie(f"D{n}", labels, _diag(*([1] * n)), simple, aliases=(f"so{2 * n}",))


def _type_G2():
    # plane x1+x2+x3=0 in R^3, form scaled so long roots have norm 2
    g = _diag(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    simple = [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    return _lie("G2", ["e1", "e2", "e3"], g, simple)


def _type_F4():
    h = Fraction(1, 2)
    simple = [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)),
              _e(4, (0, h), (1, -h), (2, -h), (3, -h))]
    return _lie("F4", ["e1", "e2", "e3", "e4"], _diag(1, 1, 1, 1), simple)


def _not_e0(x):
    return any(a != 0 for a in x[1:])


def _sl1n(n):
    m = n + 1
    labels = [f"e{i}" for i in range(m)]
    g = _diag(-1, *([1] * n))
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)]
    even = [_e(m, (i, 1), (j, -1)) for i in range(1, m) for j in range(i + 1, m)]
    odd = [_e(m, (0, 1), (i, -1)) for i in range(1, m)]
    half = Fraction(n, 2)
    rho = _e(m, (0, -half), *[(i, half + 1 - i) for i in range(1, m)])
    theta = _e(m, (0, 1), (n, -1))
    return FiniteRootSystem(f"sl(1|{n})", labels, g, simple, [1] + [0] * (n - 1), even, odd, theta,
                            rho, S=(0,), sharp=_not_e0, std_scale=1,
                            aliases=(f"A(0,{n - 1})", f"sl(1,{n})"), family="defect1")


def _osp2_2n(n):
    m = n + 1
    labels = [f"e{i}" for i in range(m)]
    g = _diag(-1, *([1] * n))
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)] + [_e(m, (n, 2))]
    even = [_e(m, (i, 2)) for i in range(1, m)]
    even += [_e(m, (i, 1), (j, s)) for i in range(1, m) for j in range(i + 1, m) for s in (1, -1)]
    odd = [_e(m, (0, 1), (i, s)) for i in range(1, m) for s in (1, -1)]
    rho = _e(m, (0, -n), *[(i, n + 1 - i) for i in range(1, m)])
    theta = _e(m, (0, 1), (1, 1))
    return FiniteRootSystem(f"osp(2|{2 * n})", labels, g, simple, [1] + [0] * n, even, odd, theta,
                            rho, S=(0,), sharp=_not_e0, std_scale=Fraction(1, 2),
                            aliases=(f"C({n + 1})", f"osp(2,{2 * n})"), family="defect1")


def _B_1n(n):
    """osp(3|2n) = B(1,n); epsilon_0 spans the so(3) direction."""
    m = n + 1
    labels = [f"e{i}" for i in range(m)]
    g = _diag(-1, *([1] * n))
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)] + [_e(m, (n, 1))]
    odd = [_e(m, (0, 1), (i, s)) for i in range(1, m) for s in (1, -1)] + [_e(m, (i, 1)) for i in range(1, m)]
    even = [_e(m, (i, 2)) for i in range(1, m)] + [_e(m, (0, 1))]
    even += [_e(m, (i, 1), (j, s)) for i in range(1, m) for j in range(i + 1, m) for s in (1, -1)]
    rho = _e(m, (0, -(n - Fraction(1, 2))), *[(i, n - i + Fraction(1, 2)) for i in range(1, m)])
    theta = _e(m, (0, 1), (1, 1))
    return FiniteRootSystem(f"osp(3|{2 * n})", labels, g, simple, [1] + [0] * (n - 1) + [1], even, odd,
                            theta, rho, S=(0,), sharp=_not_e0, std_scale=Fraction(1, 2),
                            aliases=(f"B(1,{n})", f"osp(3,{2 * n})"), family="defect1")


def _B_n1(n):
    """osp(2n+1|2) = B(n,1), n >= 2; epsilon_0 spans the sp(2) direction."""
    m = n + 1
    labels = [f"e{i}" for i in range(m)]
    g = _diag(-1, *([1] * n))
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)] + [_e(m, (n, 1))]
    odd = [_e(m, (0, 1), (i, s)) for i in range(1, m) for s in (1, -1)] + [_e(m, (0, 1))]
    even = [_e(m, (i, 1)) for i in range(1, m)] + [_e(m, (0, 2))]
    even += [_e(m, (i, 1), (j, s)) for i in range(1, m) for j in range(i + 1, m) for s in (1, -1)]
    rho = _e(m, (0, -(n - Fraction(1, 2))), *[(i, n - i + Fraction(1, 2)) for i in range(1, m)])
    theta = _e(m, (0, 2))
    return FiniteRootSystem(f"osp({2 * n + 1}|2)", labels, g, simple, [1] + [0] * n, even, odd, theta,
                            rho, S=(0,), sharp=_not_e0, std_scale=1,
                            aliases=(f"B({n},1)", f"osp({2 * n + 1},2)"), family="defect1")


def _D_n1(n):
    """osp(2n|2) = D(n,1), n >= 2."""
    m = n + 1
    labels = [f"e{i}" for i in range(m)]
    g = _diag(-1, *([1] * n))
    simple = [_e(m, (i, 1), (i + 1, -1)) for i in range(n)] + [_e(m, (n - 1, 1), (n, 1))]
    odd = [_e(m, (0, 1), (i, s)) for i in range(1, m) for s in (1, -1)]
    even = [_e(m, (0, 2))]
    even += [_e(m, (i, 1), (j, s)) for i in range(1, m) for j in range(i + 1, m) for s in (1, -1)]
    rho = _e(m, (0, -(n - 1)), *[(i, n - i) for i in range(1, m)])
    theta = _e(m, (0, 2))
    return FiniteRootSystem(f"osp({2 * n}|2)", labels, g, simple, [1] + [0] * n, even, odd, theta,
                            rho, S=(0,), sharp=_not_e0, std_scale=1,
                            aliases=(f"D({n},1)", f"osp({2 * n},2)"), family="defect1")


def _F4super():
    h = Fraction(1, 2)
    labels = ["e0", "e1", "e2", "e3"]
    g = _diag(-6, 2, 2, 2)
    beta = _e(4, (0, h), (1, h), (2, h), (3, h))
    simple = [beta, _e(4, (1, -1)), _e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1))]
    odd = [_e(4, (0, h), (1, a * h), (2, b * h), (3, c * h)) for a, b, c in product((1, -1), repeat=3)]
    even = [_e(4, (0, 1))] + [_e(4, (i, -1)) for i in (1, 2, 3)]
    even += [_e(4, (i, -1), (j, s)) for i in (1, 2, 3) for j in (1, 2, 3) if j < i for s in (1, -1)]
    rho = _e(4, (0, -Fraction(3, 2)), (1, -h), (2, -Fraction(3, 2)), (3, -Fraction(5, 2)))
    return FiniteRootSystem("F(4)", labels, g, simple, [1, 0, 0, 0], even, odd, _e(4, (0, 1)), rho,
                            S=(0,), sharp=_not_e0, std_scale=Fraction(1, 2), family="defect1")


def _G3super():
    # ambient (e0, e1, e2); e3 = -e1 - e2
    labels = ["e0", "e1", "e2"]
    g = [[-2, 0, 0], [0, 2, -1], [0, -1, 2]]

    def E(i, c=1):
        if i == 3:
            return _e(3, (1, -c), (2, -c))
        return _e(3, (i, c))

    def S_(*vs):
        out = (Fraction(0),) * 3
        for v in vs:
            out = _add(out, v)
        return out

    simple = [S_(E(0), E(1)), E(2), S_(E(3), E(2, -1))]
    odd = [E(0)] + [S_(E(0), E(i, s)) for i in (1, 2, 3) for s in (1, -1)]
    even = [E(0, 2), E(1, -1), E(2), E(3), S_(E(3), E(2, -1)), S_(E(2), E(1, -1)), S_(E(3), E(1, -1))]
    rho = S_(E(0, Fraction(-5, 2)), E(1, Fraction(-3, 2)), E(2, Fraction(1, 2)), E(3, Fraction(3, 2)))
    return FiniteRootSystem("G(3)", labels, g, simple, [1, 0, 0], even, odd, E(0, 2), rho,
                            S=(0,), sharp=_not_e0, std_scale=Fraction(1, 3), family="defect1")


def _D21a(a):
    a = Fraction(a)
    if a in (0, -1):
        raise ValueError("D(2,1,a) needs a not in {0, -1}")
    labels = ["e0", "e1", "e2"]
    g = _diag((-1 - a) / 2, a / 2, Fraction(1, 2))
    beta = _e(3, (0, 1), (1, -1), (2, -1))
    simple = [beta, _e(3, (1, 2)), _e(3, (2, 2))]
    odd = [_e(3, (0, 1), (1, s), (2, t)) for s in (1, -1) for t in (1, -1)]
    even = [_e(3, (0, 2)), _e(3, (1, 2)), _e(3, (2, 2))]
    rho = _e(3, (0, -1), (1, 1), (2, 1))
    return FiniteRootSystem(f"D(2,1,a={a})", labels, g, simple, [1, 0, 0], even, odd, _e(3, (0, 2)), rho,
                            S=(0,), sharp=_not_e0, std_scale=1, family="D21a")


def _gl22():
    labels = ["e1", "e2", "e3", "e4"]
    g = _diag(1, 1, -1, -1)
    b1 = _e(4, (2, 1), (0, -1))
    al = _e(4, (0, 1), (1, -1))
    b2 = _e(4, (1, 1), (3, -1))
    even = [al, _e(4, (2, 1), (3, -1))]
    odd = [b1, b2, _e(4, (2, 1), (1, -1)), _e(4, (0, 1), (3, -1))]
    rho = tuple(-(x + y) / 2 for x, y in zip(b1, b2))
    return FiniteRootSystem("gl(2|2)", labels, g, [b1, al, b2], [1, 0, 1], even, odd,
                            _e(4, (2, 1), (3, -1)), rho, S=(0, 2),
                            sharp=lambda x: x[2] == 0 and x[3] == 0, std_scale=1,
                            aliases=("gl(2,2)",), imag_mult=3, family="gl22")


def _osp1_2n(n):
    """osp(1|2n) with odd roots of norm 2."""
    labels = [f"e{i}" for i in range(1, n + 1)]
    g = _diag(*([2] * n))
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    even = [_e(n, (i, 2)) for i in range(n)]
    even += [_e(n, (i, 1), (j, s)) for i in range(n) for j in range(i + 1, n) for s in (1, -1)]
    odd = [_e(n, (i, 1)) for i in range(n)]
    return FiniteRootSystem(f"osp(1|{2 * n})", labels, g, simple, [0] * (n - 1) + [1], even, odd,
                            _e(n, (0, 2)), None, S=(), sharp=None, std_scale=Fraction(1, 4),
                            aliases=(f"B(0,{n})", f"osp(1,{2 * n})"), family="osp1")


_LIE = {"A": _type_A, "B": _type_B, "C": _type_C, "D": _type_D}


def catalog(name: str) -> FiniteRootSystem:
    """Look up a finite root system by identifier.

    Accepted forms: ``A3``, ``B2``, ``C3``, ``D4``, ``G2``, ``F4``, ``sl2``,
    ``sl(1|n)``, ``osp(2|2n)``, ``osp(3|2n)``, ``osp(2n+1|2)``,
    ``osp(2n+2|2)``, ``F(4)``, ``G(3)``, ``D(2,1,a=p/q)``, ``gl(2|2)``,
    ``osp(1|2n)``, and the Kac labels ``A(0,n)``, ``B(m,n)``, ``C(n)``,
    ``D(n,1)``.  Here ``C(n+1)`` names ``osp(2|2n)``.
    """
    s = name.strip().replace(" ", "").rstrip("^")
    m = re.fullmatch(r"([ABCD])(\d+)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        lo = {"A": 1, "B": 2, "C": 2, "D": 3}[kind]
        if n < lo or n > 8:
            raise ValueError(f"{kind}{n} outside the supported range {kind}{lo}..{kind}8")
        return _LIE[kind](n)
    if s == "G2":
        return _type_G2()
    if s == "F4":
        return _type_F4()
    m = re.fullmatch(r"sl\(?(\d+)\)?", s)
    if m:
        return catalog(f"A{int(m.group(1)) - 1}")
    m = re.fullmatch(r"sl\(1[|,](\d+)\)", s)
    if m:
        n = int(m.group(1))
        if not 2 <= n <= 6:
            raise ValueError("sl(1|n) supported for 2 <= n <= 6")
        return _sl1n(n)
    m = re.fullmatch(r"A\(0,(\d+)\)", s)
    if m:
        return catalog(f"sl(1|{int(m.group(1)) + 1})")
    m = re.fullmatch(r"osp\((\d+)[|,](\d+)\)", s)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if b % 2:
            raise ValueError("osp(m|n) needs n even")
        if a == 1 and 1 <= b // 2 <= 4:
            return _osp1_2n(b // 2)
        if a == 2 and 1 <= b // 2 <= 4:
            return _osp2_2n(b // 2)
        if a == 3 and 1 <= b // 2 <= 4:
            return _B_1n(b // 2)
        if b == 2 and a % 2 == 1 and 2 <= (a - 1) // 2 <= 4:
            return _B_n1((a - 1) // 2)
        if b == 2 and a % 2 == 0 and 2 <= a // 2 <= 5:
            return _D_n1(a // 2)
        raise ValueError(f"unsupported orthosymplectic algebra {name}")
    m = re.fullmatch(r"B\((\d+),(\d+)\)", s)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a == 0:
            return catalog(f"osp(1|{2 * b})")
        if a == 1:
            return catalog(f"osp(3|{2 * b})")
        if b == 1:
            return catalog(f"osp({2 * a + 1}|2)")
        raise ValueError(f"unsupported {name}")
    m = re.fullmatch(r"C\((\d+)\)", s)
    if m:
        return catalog(f"osp(2|{2 * (int(m.group(1)) - 1)})")
    m = re.fullmatch(r"D\((\d+),1\)", s)
    if m:
        return catalog(f"osp({2 * int(m.group(1))}|2)")
    if s == "F(4)":
        return _F4super()
    if s == "G(3)":
        return _G3super()
    m = re.fullmatch(r"D\(2,1,(?:a=)?(-?\d+(?:/\d+)?)\)", s)
    if m:
        return _D21a(Fraction(m.group(1)))
    if s in ("gl(2|2)", "gl(2,2)"):
        return _gl22()
    raise ValueError(f"unknown algebra {name!r}")


def get_system(name: str):
    """Catalog lookup that also accepts a trailing ``^`` for the affinization."""
    fin = catalog(name)
    return affinize(fin) if name.strip().endswith("^") else fin


CATALOG_IDS = ("A1..A8", "B2..B8", "C2..C8", "D3..D8", "G2", "F4", "sl(1|n)", "osp(1|2n)",
               "osp(2|2n)", "osp(3|2n)", "osp(2n+1|2)", "osp(2n+2|2)", "F(4)", "G(3)",
               "D(2,1,a=p/q)", "gl(2|2)")


def isotropic_cone(rs: FiniteRootSystem, max_height: int) -> List[Vec]:
    """Elements of NS (non-negative combinations of S) up to a height."""
    S = [rs.simple_vec(i) for i in rs.S]
    out = []
    for coeffs in product(range(max_height + 1), repeat=len(S)):
        if sum(coeffs) <= max_height:
            v = (0,) * rs.rank
            for c, s in zip(coeffs, S):
                v = _add(v, _smul(c, s))
            out.append(v)
    return out
