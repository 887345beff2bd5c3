"""Brute-force Shapovalov forms via PBW normal ordering.

A module vector is a dict ``{word: Poly}`` where a word is a tuple of
creation generators in normal order, read left to right as operators
applied to the highest-weight vector.  Acting by any generator is done by
commuting it to the right until it hits the highest-weight vector, which
it either kills or scales.  Everything is exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .exact import Poly, poly_det
from .linalg import nullspace

Label = Hashable
Word = Tuple[Label, ...]
Vector = Dict[Word, Poly]

CREATE, ZERO, SCALAR = "create", "zero", "scalar"


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class ModeAlgebra:
    """Interface for a graded Lie superalgebra given by structure constants."""

    central: Tuple[Label, ...] = ()

    def parity(self, a: Label) -> int:
        raise NotImplementedError

    def depth(self, a: Label) -> tuple:
        """Amount by which the generator increases the level."""
        raise NotImplementedError

    def bracket(self, a: Label, b: Label) -> Dict[Label, Fraction]:
        raise NotImplementedError

    def sigma(self, a: Label) -> Tuple[int, Label]:
        raise NotImplementedError

    def key(self, a: Label):
        raise NotImplementedError

    def name(self, a: Label) -> str:
        return str(a)


def _half(n2: int) -> str:
    return str(n2 // 2) if n2 % 2 == 0 else f"{n2}/2"


class Virasoro(ModeAlgebra):
    """Virasoro algebra; labels ("L", n) and the central "C"."""

    central = ("C",)

    def parity(self, a):
        return 0

    def depth(self, a):
        return (0,) if a == "C" else (-a[1],)

    def bracket(self, a, b):
        if a == "C" or b == "C":
            return {}
        m, n = a[1], b[1]
        out = {}
        if m != n:
            out[("L", m + n)] = Fraction(m - n)
        if m + n == 0 and m ** 3 != m:
            out["C"] = Fraction(m ** 3 - m, 12)
        return out

    def sigma(self, a):
        return (1, a) if a == "C" else (1, ("L", -a[1]))

    def key(self, a):
        return (a[1],)

    def name(self, a):
        return "C" if a == "C" else f"L_{{{a[1]}}}"


class NeveuSchwarz(ModeAlgebra):
    """Neveu-Schwarz algebra with doubled indices: ("L", 2n) and odd ("L", 2r).

    The odd generators G_r are written L_r with half-integer r.
    """

    central = ("C",)

    def parity(self, a):
        return 0 if a == "C" else a[1] % 2

    def depth(self, a):
        return (0,) if a == "C" else (-a[1],)

    def bracket(self, a, b):
        if a == "C" or b == "C":
            return {}
        x, y = a[1], b[1]
        m, n = Fraction(x, 2), Fraction(y, 2)
        out = {}
        if x % 2 == 0 and y % 2 == 0:
            if m != n:
                out[("L", x + y)] = m - n
            if x + y == 0 and m ** 3 != m:
                out["C"] = (m ** 3 - m) / 12
        elif x % 2 == 0:
            c = m / 2 - n
            if c:
                out[("L", x + y)] = c
        elif y % 2 == 0:
            c = -(n / 2 - m)
            if c:
                out[("L", x + y)] = c
        else:
            out[("L", x + y)] = Fraction(2)
            if x + y == 0:
                c = (m * m - Fraction(1, 4)) / 3
                if c:
                    out["C"] = c
        return out

    def sigma(self, a):
        return (1, a) if a == "C" else (1, ("L", -a[1]))

    def key(self, a):
        return (a[1],)

    def name(self, a):
        return "C" if a == "C" else f"L_{{{_half(a[1])}}}"


class FiniteSuperAlgebra(ModeAlgebra):
    """A finite-dimensional Lie superalgebra from a bracket table.

    ``roots`` gives each basis element's weight in simple-root coordinates,
    ``form`` the invariant supersymmetric form, ``sigma`` the
    anti-involution as (sign, label).
    """

    def __init__(self, name, labels, parity, roots, table, form, sigma, cartan):
        self.title = name
        self.labels = tuple(labels)
        self._parity = dict(parity)
        self.roots = {k: tuple(v) for k, v in roots.items()}
        self.table = {}
        for (a, b), val in table.items():
            self.table[(a, b)] = {k: Fraction(v) for k, v in val.items() if v}
            sgn = -(-1) ** (self._parity[a] * self._parity[b])
            if (b, a) not in table:
                self.table[(b, a)] = {k: sgn * Fraction(v) for k, v in val.items() if v}
        self.form = {k: Fraction(v) for k, v in form.items()}
        self._sigma = dict(sigma)
        self.cartan = tuple(cartan)
        self.index = {a: i for i, a in enumerate(self.labels)}

    def parity(self, a):
        return self._parity[a]

    def depth(self, a):
        return tuple(-x for x in self.roots[a])

    def bracket(self, a, b):
        return dict(self.table.get((a, b), {}))

    def sigma(self, a):
        return self._sigma[a]

    def key(self, a):
        return (sum(self.roots[a]), self.index[a])

    def pair(self, a, b) -> Fraction:
        return self.form.get((a, b), Fraction(0))

    def scaled_form(self, s) -> "FiniteSuperAlgebra":
        out = FiniteSuperAlgebra.__new__(FiniteSuperAlgebra)
        out.__dict__.update(self.__dict__)
        out.form = {k: v * Fraction(s) for k, v in self.form.items()}
        return out

    def check_jacobi(self) -> bool:
        """Super-antisymmetry and super-Jacobi identity on the stored table."""
        L = self.labels
        p = self._parity

        def br(u: Dict, v: Dict) -> Dict:
            out: Dict = {}
            for a, x in u.items():
                for b, y in v.items():
                    for c, z in self.bracket(a, b).items():
                        out[c] = out.get(c, 0) + x * y * z
            return {k: v for k, v in out.items() if v}

        for a in L:
            for b in L:
                s = -(-1) ** (p[a] * p[b])
                if self.bracket(a, b) != {k: s * v for k, v in self.bracket(b, a).items()}:
                    return False
        for a, b, c in product(L, repeat=3):
            lhs = br({a: 1}, br({b: 1}, {c: 1}))
            r1 = br(br({a: 1}, {b: 1}), {c: 1})
            r2 = br({b: 1}, br({a: 1}, {c: 1}))
            sgn = (-1) ** (p[a] * p[b])
            tot = dict(r1)
            for k, v in r2.items():
                tot[k] = tot.get(k, 0) + sgn * v
            tot = {k: v for k, v in tot.items() if v}
            if lhs != tot:
                return False
        return True

    def check_form_invariant(self) -> bool:
        L = self.labels
        for a, b, c in product(L, repeat=3):
            lhs = sum((v * self.pair(k, c) for k, v in self.bracket(a, b).items()), Fraction(0))
            rhs = sum((v * self.pair(a, k) for k, v in self.bracket(b, c).items()), Fraction(0))
            if lhs != rhs:
                return False
        return True


def sl_n(n: int) -> FiniteSuperAlgebra:
    """sl(n) with basis E_ij (i != j) and H_i; trace form, roots of norm 2."""
    def mat(i, j):
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        return m

    labels, roots, parity, sigma = [], {}, {}, {}
    mats = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                lab = f"E{i + 1}{j + 1}"
                labels.append(lab)
                mats[lab] = mat(i, j)
                v = [0] * (n - 1)
                lo, hi = min(i, j), max(i, j)
                for t in range(lo, hi):
                    v[t] = 1 if i < j else -1
                roots[lab] = tuple(v)
                parity[lab] = 0
                sigma[lab] = (1, f"E{j + 1}{i + 1}")
    cartan = []
    for i in range(n - 1):
        lab = f"H{i + 1}"
        m = [[0] * n for _ in range(n)]
        m[i][i], m[i + 1][i + 1] = 1, -1
        labels.append(lab)
        cartan.append(lab)
        mats[lab] = m
        roots[lab] = (0,) * (n - 1)
        parity[lab] = 0
        sigma[lab] = (1, lab)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def decompose(m):
        out = {}
        for i in range(n):
            for j in range(n):
                if i != j and m[i][j]:
                    out[f"E{i + 1}{j + 1}"] = Fraction(m[i][j])
        # diagonal: sum c_t H_t with c_t = running sum of diagonal entries
        run = Fraction(0)
        for t in range(n - 1):
            run += m[t][t]
            if run:
                out[f"H{t + 1}"] = run
        return out

    table, form = {}, {}
    for a in labels:
        for b in labels:
            A, B = mats[a], mats[b]
            ab, ba = mul(A, B), mul(B, A)
            c = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            d = decompose(c)
            if d:
                table[(a, b)] = d
            tr = sum(ab[i][i] for i in range(n))
            if tr:
                form[(a, b)] = Fraction(tr)
    return FiniteSuperAlgebra(f"sl{n}", labels, parity, roots, table, form, sigma, cartan)


def osp12(form_scale=Fraction(1, 4)) -> FiniteSuperAlgebra:
    """osp(1|2) with basis e, h, f (even) and x, y (odd).

    Roots are in units of the odd simple root.  With (h|h) = 2s the dual
    form has (alpha|alpha) = 1/(2s), so the default s = 1/4 gives the odd
    root norm 2 and ``form_scale=1`` gives the standard form (theta of norm 2).
    """
    labels = ["e", "h", "f", "x", "y"]
    parity = {"e": 0, "h": 0, "f": 0, "x": 1, "y": 1}
    roots = {"e": (2,), "h": (0,), "f": (-2,), "x": (1,), "y": (-1,)}
    table = {
        ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1},
        ("h", "x"): {"x": 1}, ("h", "y"): {"y": -1},
        ("x", "x"): {"e": -2}, ("y", "y"): {"f": 2}, ("x", "y"): {"h": 1},
        ("e", "y"): {"x": 1}, ("f", "x"): {"y": 1},
    }
    s = Fraction(form_scale)
    form = {("h", "h"): 2 * s, ("e", "f"): s, ("f", "e"): s, ("x", "y"): 2 * s, ("y", "x"): -2 * s}
    # sigma(x) = y, sigma(y) = -x: a rational super anti-involution with sigma^2 = parity
    sigma = {"e": (1, "f"), "f": (1, "e"), "h": (1, "h"), "x": (1, "y"), "y": (-1, "x")}
    return FiniteSuperAlgebra("osp(1|2)", labels, parity, roots, table, form, sigma, ["h"])


class LoopAlgebra(ModeAlgebra):
    """Affinization g[t, 1/t] + CK of a finite superalgebra; labels (X, n) and "K".

    Depths are affine simple-root coordinates: X t^n raises the level by
    (-n) delta - root(X), where delta = alpha_0 + theta.
    """

    central = ("K",)

    def __init__(self, g: FiniteSuperAlgebra, theta: Sequence[int]):
        self.g = g
        self.theta = tuple(theta)

    def parity(self, a):
        return 0 if a == "K" else self.g.parity(a[0])

    def depth(self, a):
        if a == "K":
            return (0,) * (len(self.theta) + 1)
        X, n = a
        u = -n
        r = self.g.roots[X]
        return (u,) + tuple(u * t - x for t, x in zip(self.theta, r))

    def bracket(self, a, b):
        if a == "K" or b == "K":
            return {}
        (X, m), (Y, n) = a, b
        out = {(Z, m + n): c for Z, c in self.g.bracket(X, Y).items()}
        if m + n == 0 and m != 0:
            f = self.g.pair(X, Y)
            if f:
                out["K"] = m * f
        return out

    def sigma(self, a):
        if a == "K":
            return (1, "K")
        s, Y = self.g.sigma(a[0])
        return (s, (Y, -a[1]))

    def key(self, a):
        return (a[1],) + self.g.key(a[0])

    def name(self, a):
        return "K" if a == "K" else f"{a[0]}(t^{a[1]})"


# ---------------------------------------------------------------------------
# highest-weight modules
# ---------------------------------------------------------------------------

def _vadd(acc: Vector, vec: Vector, coeff) -> None:
    for w, c in vec.items():
        x = acc.get(w)
        y = c * coeff if coeff != 1 else c
        s = y if x is None else x + y
        if s.is_zero():
            acc.pop(w, None)
        else:
            acc[w] = s


class HighestWeightModule:
    """A module induced from a one-dimensional representation.

    ``classify(label)`` returns CREATE, ZERO or (SCALAR, Poly).
    ``candidates(level)`` lists the creation generators whose depth is
    componentwise at most ``level``.
    """

    def __init__(self, algebra: ModeAlgebra, classify: Callable, candidates: Callable, symbols: Sequence[str],
                 raising: Optional[Callable] = None):
        self.algebra = algebra
        self._raising = raising
        self.classify = classify
        self.candidates = candidates
        self.symbols = tuple(symbols)
        self._memo: Dict[Tuple[Label, Word], Vector] = {}
        self._one = Poly.const(1, self.symbols)

    # action ---------------------------------------------------------------
    def act(self, a: Label, word: Word) -> Vector:
        key = (a, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._act(a, word)
        self._memo[key] = res
        return res

    def _act(self, a: Label, word: Word) -> Vector:
        A = self.algebra
        kind = self.classify(a)
        if not word:
            if kind == CREATE:
                return {(a,): self._one}
            if kind == ZERO:
                return {}
            val = kind[1]
            return {} if val.is_zero() else {(): val}
        if kind == CREATE:
            y = word[0]
            ka, ky = A.key(a), A.key(y)
            if ka < ky:
                return {(a,) + word: self._one}
            if a == y:
                if A.parity(a) == 0:
                    return {(a,) + word: self._one}
                # odd generator squared is half its self-bracket
                out: Vector = {}
                for z, c in A.bracket(a, a).items():
                    _vadd(out, self.act(z, word[1:]), Fraction(c) / 2)
                return out
        # general case: a y rest = [a,y] rest + (-1)^{|a||y|} y (a rest)
        y, rest = word[0], word[1:]
        out = {}
        for z, c in A.bracket(a, y).items():
            _vadd(out, self.act(z, rest), Fraction(c))
        sgn = -1 if A.parity(a) and A.parity(y) else 1
        inner = self.act(a, rest)
        for w, c in inner.items():
            _vadd(out, self.act(y, w), c * sgn)
        return out

    def act_vector(self, a: Label, vec: Vector) -> Vector:
        out: Vector = {}
        for w, c in vec.items():
            _vadd(out, self.act(a, w), c)
        return out

    def act_word(self, ops: Sequence[Label], vec: Vector) -> Vector:
        """Apply ops[-1] first, as in the product ops[0] ops[1] ... ops[-1]."""
        for a in reversed(ops):
            vec = self.act_vector(a, vec)
        return vec

    # bases ------------------------------------------------------------------
    def basis(self, level: Sequence[int]) -> List[Word]:
        """Normal-ordered monomials of the given level."""
        A = self.algebra
        level = tuple(level)
        gens = sorted(self.candidates(level), key=A.key)
        out: List[Word] = []

        def rec(start: int, remaining: tuple, acc: list):
            if all(x == 0 for x in remaining):
                out.append(tuple(acc))
                return
            for i in range(start, len(gens)):
                g = gens[i]
                d = A.depth(g)
                rem = tuple(r - x for r, x in zip(remaining, d))
                if any(x < 0 for x in rem):
                    continue
                acc.append(g)
                rec(i + 1 if A.parity(g) else i, rem, acc)
                acc.pop()

        rec(0, level, [])
        return out

    def gram_matrix(self, level: Sequence[int]) -> List[List[Poly]]:
        """Entries <sigma(u) v> taken as the highest-weight coefficient."""
        B = self.basis(level)
        A = self.algebra
        rows = []
        for u in B:
            # sigma(Y1...Ym) = sigma(Ym)...sigma(Y1); sigma(Y1) acts first
            ops = []
            sign = 1
            for y in u:
                s, z = A.sigma(y)
                sign *= s
                ops.append(z)
            row = []
            for v in B:
                vec: Vector = {v: self._one}
                for z in ops:
                    vec = self.act_vector(z, vec)
                    if not vec:
                        break
                c = vec.get((), None)
                row.append(c * sign if c is not None else Poly.const(0, self.symbols))
            rows.append(row)
        return rows

    def det(self, level: Sequence[int]) -> Poly:
        return poly_det(self.gram_matrix(level))

    def raising_ops(self, level: Sequence[int]) -> List[Label]:
        """Non-creation generators that can lower the level and stay within it."""
        if self._raising is not None:
            return list(self._raising(tuple(level)))
        A = self.algebra
        return [A.sigma(g)[1] for g in self.candidates(level)]

    def singular_vectors(self, level: Sequence[int], values: Dict[str, object],
                         raising: Optional[Iterable[Label]] = None) -> List[Vector]:
        """Basis of vectors at ``level`` killed by all raising generators, at numeric parameters."""
        level = tuple(level)
        if all(x == 0 for x in level):
            return []
        B = self.basis(level)
        ops = list(raising) if raising is not None else self.raising_ops(level)
        rows: Dict[Tuple[Label, Word], List[Fraction]] = {}
        for j, w in enumerate(B):
            for op in ops:
                for tgt, c in self.act(op, w).items():
                    val = c.subs(**values).constant_value() if c.used_vars() else c.constant_value()
                    if val:
                        rows.setdefault((op, tgt), [Fraction(0)] * len(B))[j] += val
        kern = nullspace(list(rows.values()), len(B))
        out = []
        for v in kern:
            out.append({B[i]: Poly.const(x, self.symbols) for i, x in enumerate(v) if x})
        return out


# ---------------------------------------------------------------------------
# module constructors
# ---------------------------------------------------------------------------

def _mode_raising(lv):
    return [("L", n) for n in range(1, lv[0] + 1)]


def virasoro_vacuum() -> HighestWeightModule:
    A = Virasoro()
    c = Poly.var("c")

    def classify(a):
        if a == "C":
            return (SCALAR, c)
        n = a[1]
        if n <= -2:
            return CREATE
        return ZERO

    return HighestWeightModule(A, classify, lambda lv: [("L", -n) for n in range(2, lv[0] + 1)], ("c",),
                               _mode_raising)


def virasoro_verma() -> HighestWeightModule:
    A = Virasoro()
    h, c = Poly.var("h", ("h", "c")), Poly.var("c", ("h", "c"))

    def classify(a):
        if a == "C":
            return (SCALAR, c)
        n = a[1]
        if n < 0:
            return CREATE
        if n == 0:
            return (SCALAR, h)
        return ZERO

    return HighestWeightModule(A, classify, lambda lv: [("L", -n) for n in range(1, lv[0] + 1)], ("h", "c"))


def ns_vacuum() -> HighestWeightModule:
    """Levels are doubled: level (3,) means L_0-eigenvalue 3/2."""
    A = NeveuSchwarz()
    c = Poly.var("c")

    def classify(a):
        if a == "C":
            return (SCALAR, c)
        return CREATE if a[1] <= -3 else ZERO

    return HighestWeightModule(A, classify, lambda lv: [("L", -n) for n in range(3, lv[0] + 1)], ("c",),
                               _mode_raising)


def ns_verma() -> HighestWeightModule:
    A = NeveuSchwarz()
    h, c = Poly.var("h", ("h", "c")), Poly.var("c", ("h", "c"))

    def classify(a):
        if a == "C":
            return (SCALAR, c)
        n = a[1]
        if n < 0:
            return CREATE
        if n == 0:
            return (SCALAR, h)
        return ZERO

    return HighestWeightModule(A, classify, lambda lv: [("L", -n) for n in range(1, lv[0] + 1)], ("h", "c"))


def affine_vacuum(g: FiniteSuperAlgebra, theta: Sequence[int], symbol: str = "k") -> HighestWeightModule:
    """Vacuum module V^k of the affinization; levels in affine simple-root coordinates."""
    A = LoopAlgebra(g, theta)
    k = Poly.var(symbol)

    def classify(a):
        if a == "K":
            return (SCALAR, k)
        return CREATE if a[1] <= -1 else ZERO

    def candidates(lv):
        out = []
        umax = lv[0]
        for n in range(1, umax + 1):
            for X in g.labels:
                d = A.depth((X, -n))
                if all(0 <= x <= y for x, y in zip(d, lv)):
                    out.append((X, -n))
        return out

    def raising(lv):
        out = [(X, 0) for X in g.labels if any(x > 0 for x in g.roots[X])]
        for n in range(1, lv[0] + 1):
            out += [(X, n) for X in g.labels]
        return out

    return HighestWeightModule(A, classify, candidates, (symbol,), raising)


def finite_verma(g: FiniteSuperAlgebra, I: Iterable[int] = (), symbols: Optional[Sequence[str]] = None
                 ) -> HighestWeightModule:
    """Generalized Verma module M_I(lambda) for a finite algebra.

    The highest weight is symbolic on the Cartan generators outside I and
    zero on those in I.  Lowering generators with roots in the span of I
    kill the highest-weight vector.
    """
    I = set(I)
    n = len(g.cartan)
    symbols = tuple(symbols) if symbols else tuple(f"l{i + 1}" for i in range(n) if i not in I)
    vals = {}
    si = iter(symbols)
    for i, H in enumerate(g.cartan):
        vals[H] = Poly.const(0, symbols) if i in I else Poly.var(next(si), symbols)

    def in_I(r):
        return all(x == 0 for j, x in enumerate(r) if j not in I)

    def classify(a):
        r = g.roots[a]
        if a in vals:
            return (SCALAR, vals[a])
        if any(x < 0 for x in r) and not in_I(r):
            return CREATE
        return ZERO

    def candidates(lv):
        return [a for a in g.labels if classify(a) == CREATE
                and all(x <= y for x, y in zip(g.depth(a), lv))]

    def raising(lv):
        return [a for a in g.labels if any(x > 0 for x in g.roots[a])]

    return HighestWeightModule(g, classify, candidates, symbols, raising)


def module_from_name(name: str) -> HighestWeightModule:
    """Named oracle modules: vir-vacuum, vir-verma, ns-vacuum, ns-verma, sl2-affine, osp12-affine."""
    table = {
        "vir-vacuum": virasoro_vacuum,
        "vir-verma": virasoro_verma,
        "ns-vacuum": ns_vacuum,
        "ns-verma": ns_verma,
        "sl2-affine": lambda: affine_vacuum(sl_n(2), (1,)),
        "sl3-affine": lambda: affine_vacuum(sl_n(3), (1, 1)),
        "osp12-affine": lambda: affine_vacuum(osp12(), (2,)),
        "sl2-verma": lambda: finite_verma(sl_n(2)),
        "sl3-verma": lambda: finite_verma(sl_n(3)),
    }
    if name not in table:
        raise ValueError(f"unknown oracle module {name!r}; choose from {sorted(table)}")
    return table[name]()


def brute_det(m: HighestWeightModule, level: Sequence[int]) -> Poly:
    return m.det(level)


def normal_order(m: HighestWeightModule, ops: Sequence[Label]) -> Vector:
    """The vector ops[0] ops[1] ... ops[-1] |hw>, in the PBW basis."""
    return m.act_word(ops, {(): m._one})


# ---------------------------------------------------------------------------
# ordered-operator rewriting (no module)
# ---------------------------------------------------------------------------

def normal_order_product(A: ModeAlgebra, ops: Sequence[Label], creation: Callable[[Label], bool],
                         central_values: Optional[Dict[Label, object]] = None) -> Dict[Word, Fraction]:
    """Rewrite a product of generators as creation-part * rest with rest sorted by key.

    Returns ``{word: coeff}`` where each word lists creation generators
    first (in key order) followed by the remaining generators in key order.
    Central generators stay as letters unless values are supplied.
    """
    central_values = central_values or {}

    def rank(x):
        if x in A.central:
            return (2,)
        return (0,) + tuple(A.key(x)) if creation(x) else (1,) + tuple(A.key(x))

    out: Dict[Word, Fraction] = {}
    stack = [(tuple(ops), Fraction(1))]
    while stack:
        word, c = stack.pop()
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            ra, rb = rank(a), rank(b)
            if ra > rb or (a == b and A.parity(a) and a not in A.central):
                if a == b:
                    # odd square
                    for z, v in A.bracket(a, a).items():
                        stack.append((word[:i] + (z,) + word[i + 2:], c * v / 2))
                    break
                sgn = -1 if A.parity(a) and A.parity(b) else 1
                stack.append((word[:i] + (b, a) + word[i + 2:], c * sgn))
                for z, v in A.bracket(a, b).items():
                    stack.append((word[:i] + (z,) + word[i + 2:], c * v))
                break
        else:
            coeff = c
            kept = []
            for x in word:
                if x in central_values:
                    coeff *= Fraction(central_values[x])
                else:
                    kept.append(x)
            key = tuple(kept)
            out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# singular vector shape checks
# ---------------------------------------------------------------------------

def _indices(word: Word) -> Tuple[int, ...]:
    """Ascending (doubled for NS) positive indices of a word of L_{-i}."""
    return tuple(sorted(-a[1] for a in word))


def minimal_monomial(v: Vector) -> Word:
    """Minimal monomial in the lexicographic order comparing the smallest indices first."""
    if not v:
        raise ValueError("zero vector")
    return min(v, key=_indices)


def is_singular(m: HighestWeightModule, v: Vector, values: Dict[str, object], max_raise: int) -> bool:
    """Killed by L_n (all n with 0 < n <= max_raise in the module's index units)."""
    for n in range(1, max_raise + 1):
        out = m.act_vector(("L", n), v)
        if any(not c.subs(**values).is_zero() for c in out.values()):
            return False
    return True


def verify_minimal_monomial(v: Vector, algebra: str, values: Dict[str, object]) -> Dict[str, object]:
    """Classify the minimal monomial of a vacuum singular vector.

    Virasoro: the predicted shape is L_{-2}^m.  NS: L_{-2}^m L_{-3/2}
    (even p, q) or L_{-5/2} L_{-2}^m L_{-3/2} (odd p, q).  Indices are
    doubled for NS.
    """
    if algebra not in ("vir", "ns"):
        raise ValueError("algebra must be 'vir' or 'ns'")
    m = virasoro_vacuum() if algebra == "vir" else ns_vacuum()
    v = {w: c for w, c in v.items() if not c.subs(**values).is_zero()}
    if not v:
        raise ValueError("zero vector is not a singular vector")
    depth = sum(-a[1] for a in next(iter(v)))
    if not is_singular(m, v, values, depth):
        raise ValueError("input is not a singular vector")
    mono = minimal_monomial(v)
    idx = _indices(mono)
    if algebra == "vir":
        ok = len(idx) >= 1 and all(i == 2 for i in idx)
        return {"monomial": mono, "shape": "L_{-2}^m", "m": len(idx), "matches": ok}
    if idx and idx[0] == 3 and all(i == 4 for i in idx[1:]):
        return {"monomial": mono, "shape": "L_{-2}^m L_{-3/2}", "m": len(idx) - 1, "matches": True}
    if len(idx) >= 2 and idx[0] == 3 and idx[-1] == 5 and all(i == 4 for i in idx[1:-1]):
        return {"monomial": mono, "shape": "L_{-5/2} L_{-2}^m L_{-3/2}", "m": len(idx) - 2, "matches": True}
    return {"monomial": mono, "shape": None, "m": None, "matches": False}


def c2_singular_form(v: Vector, algebra: str) -> bool:
    """True iff an integer-level vacuum vector is (L_{-2}^k + a)|0> with a in the right ideal of L_{-i}, i > 2.

    Monomials outside that ideal at integer level are only powers of
    L_{-2}, so the test is that the coefficient of L_{-2}^k is nonzero.
    For NS a half-integer level input is first hit with L_{-1/2}.
    """
    if not v:
        return False
    depth = sum(-a[1] for a in next(iter(v)))
    if algebra == "ns":
        if depth % 2 == 1:
            v = ns_vacuum().act_vector(("L", -1), v)
            depth += 1
        two = 4
    elif algebra == "vir":
        two = 2
    else:
        raise ValueError("algebra must be 'vir' or 'ns'")
    if depth % two:
        return False
    k = depth // two
    target = (("L", -two),) * k
    c = v.get(target)
    return c is not None and not c.is_zero()
