"""Exact arithmetic substrate: sparse polynomials, truncated lattice series,
fraction-free determinants.

Everything here works over :class:`fractions.Fraction`; no floats are ever
produced.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from typing import Dict, Iterable, List, Sequence, Tuple

Rational = Fraction


def Q(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Sparse polynomial with rational coefficients in named variables.

    Terms are stored as ``{exponent tuple: Fraction}`` with no zero
    coefficients. Polynomials over different variable sets are combined by
    merging the variable lists.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Dict[tuple, Fraction] | None = None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            for e, c in terms.items():
                c = Q(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "Poly":
        return cls(vars, {(0,) * len(vars): Q(c)})

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "Poly":
        vars = tuple(vars) if vars else (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: Fraction(1)})

    @classmethod
    def linear(cls, name: str, slope, intercept) -> "Poly":
        """``slope*name + intercept``."""
        return cls((name,), {(1,): Q(slope), (0,): Q(intercept)})

    # helpers ------------------------------------------------------------
    def _lift(self, vars: Tuple[str, ...]) -> Dict[tuple, Fraction]:
        if vars == self.vars:
            return self.terms
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return out

    @staticmethod
    def _merge_vars(a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[str, ...]:
        if a == b:
            return a
        out = list(a)
        for v in b:
            if v not in out:
                out.append(v)
        return tuple(out)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_vars(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            for v, x in zip(self.vars, e):
                if x:
                    used.add(v)
        return tuple(v for v in self.vars if v in used)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> Tuple[tuple, Fraction]:
        """Leading (exponent, coefficient) in graded-lex order."""
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def coeff(self, exps: tuple) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        vars = self._merge_vars(self.vars, other.vars)
        out = dict(self._lift(vars))
        for e, c in other._lift(vars).items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly(vars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.vars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Q(other)
            p = Poly(self.vars)
            p.terms = {e: v * c for e, v in self.terms.items()} if c else {}
            return p
        vars = self._merge_vars(self.vars, other.vars)
        a, b = self._lift(vars), other._lift(vars)
        out: Dict[tuple, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        p = Poly(vars)
        p.terms = {e: c for e, c in out.items() if c}
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.divexact(other)
        return self * (Fraction(1) / Q(other))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other, self.vars)
            except (TypeError, ValueError):
                return NotImplemented
        vars = self._merge_vars(self.vars, other.vars)
        return self._lift(vars) == other._lift(vars)

    def __hash__(self):
        return hash(tuple(sorted((self._named_key(e), c) for e, c in self.terms.items())))

    def _named_key(self, e):
        return tuple((v, x) for v, x in zip(self.vars, e) if x)

    def divmod_lead(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Multivariate division by leading terms (graded lex)."""
        vars = self._merge_vars(self.vars, other.vars)
        rem = dict(self._lift(vars))
        dv = other._lift(vars)
        if not dv:
            raise ZeroDivisionError("division by zero polynomial")
        le = max(dv, key=lambda t: (sum(t), t))
        lc = dv[le]
        quo: Dict[tuple, Fraction] = {}
        rest: Dict[tuple, Fraction] = {}
        while rem:
            e = max(rem, key=lambda t: (sum(t), t))
            c = rem[e]
            if all(x >= y for x, y in zip(e, le)):
                qe = tuple(x - y for x, y in zip(e, le))
                qc = c / lc
                quo[qe] = quo.get(qe, 0) + qc
                for e2, c2 in dv.items():
                    ee = tuple(x + y for x, y in zip(qe, e2))
                    v = rem.get(ee, 0) - qc * c2
                    if v:
                        rem[ee] = v
                    else:
                        rem.pop(ee, None)
            else:
                rest[e] = c
                del rem[e]
        return Poly(vars, quo), Poly(vars, rest)

    def divexact(self, other: "Poly") -> "Poly":
        q, r = self.divmod_lead(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    # evaluation -------------------------------------------------------------
    def subs(self, **values) -> "Poly":
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        nvars = tuple(self.vars[i] for i in keep)
        out: Dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            val = c
            for v, x in zip(self.vars, e):
                if v in values and x:
                    val *= Q(values[v]) ** x
            ne = tuple(e[i] for i in keep)
            out[ne] = out.get(ne, 0) + val
        return Poly(nvars, out)

    def __call__(self, **values):
        p = self.subs(**values)
        return p.constant_value() if p.is_constant() else p

    def univariate_coeffs(self, var: str) -> List[Fraction]:
        """Coefficient list (ascending) of a polynomial in ``var`` only."""
        other = [v for v in self.used_vars() if v != var]
        if other:
            raise ValueError(f"not univariate in {var}: also uses {other}")
        if self.is_zero():
            return []
        i = self.vars.index(var) if var in self.vars else None
        deg = self.degree(var)
        out = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            out[e[i] if i is not None else 0] += c
        return out

    # printing -----------------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            c = self.terms[e]
            mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}"
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def poly_det(m: Sequence[Sequence]) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination.

    Entries may be Polys or rationals. The empty matrix has determinant 1.
    """
    n = len(m)
    if n == 0:
        return Poly.const(1)
    a = [[x if isinstance(x, Poly) else Poly.const(x) for x in row] for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.const(0)
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = num if k == 0 and prev == 1 else num.divexact(prev)
            a[i][k] = Poly.const(0)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def cofactor_det(m: Sequence[Sequence]) -> Poly:
    """Laplace expansion along the first row; only for small matrices."""
    n = len(m)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        x = m[0][0]
        return x if isinstance(x, Poly) else Poly.const(x)
    total = Poly.const(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = cofactor_det(minor) * m[0][j]
        total = total + (term if j % 2 == 0 else -term)
    return total


def divide_linear_factors(p: Poly, candidates: Iterable[Tuple[str, object]]) -> Tuple[List[int], Poly]:
    """Strip each ``var - root`` from ``p`` as often as it divides.

    Returns the list of multiplicities (one per candidate, in order) and the
    remaining quotient.
    """
    exps = []
    rem = p
    for var, root in candidates:
        root = Q(root)
        lin = Poly.linear(var, 1, -root)
        k = 0
        while not rem.is_zero():
            qt, r = rem.divmod_lead(lin)
            if not r.is_zero():
                break
            rem = qt
            k += 1
        exps.append(k)
    return exps, rem


# ---------------------------------------------------------------------------
# truncated lattice series
# ---------------------------------------------------------------------------

def height(v: Sequence[int]) -> int:
    return sum(v)


class Series:
    """Truncated formal character ``sum c_nu e^{-nu}``.

    Keys are integer coordinate tuples over a named basis; every stored
    vector has height (coordinate sum) at most ``cutoff``. Coefficients are
    ints or Fractions.
    """

    __slots__ = ("basis", "rank", "cutoff", "coeffs")

    def __init__(self, basis: str, rank: int, cutoff: int, coeffs: Dict[tuple, object] | None = None):
        self.basis = basis
        self.rank = rank
        self.cutoff = cutoff
        self.coeffs = {}
        if coeffs:
            for v, c in coeffs.items():
                v = tuple(v)
                if len(v) != rank:
                    raise ValueError("vector of wrong rank")
                if c and height(v) <= cutoff:
                    self.coeffs[v] = self.coeffs.get(v, 0) + c
            self.coeffs = {v: c for v, c in self.coeffs.items() if c}

    @classmethod
    def one(cls, basis: str, rank: int, cutoff: int) -> "Series":
        return cls(basis, rank, cutoff, {(0,) * rank: 1})

    def copy(self) -> "Series":
        s = Series(self.basis, self.rank, self.cutoff)
        s.coeffs = dict(self.coeffs)
        return s

    def __getitem__(self, v) -> object:
        v = tuple(v)
        if height(v) > self.cutoff:
            raise KeyError(f"{v} lies beyond the cutoff {self.cutoff}")
        return self.coeffs.get(v, 0)

    def get(self, v, default=0):
        return self.coeffs.get(tuple(v), default)

    def items(self):
        return self.coeffs.items()

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Series"):
        if self.basis != other.basis or self.rank != other.rank:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        cut = min(self.cutoff, other.cutoff)
        out = Series(self.basis, self.rank, cut)
        d = {v: c for v, c in self.coeffs.items() if height(v) <= cut}
        for v, c in other.coeffs.items():
            if height(v) <= cut:
                d[v] = d.get(v, 0) + c
        out.coeffs = {v: c for v, c in d.items() if c}
        return out

    def __neg__(self):
        out = self.copy()
        out.coeffs = {v: -c for v, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Series":
        out = self.copy()
        out.coeffs = {v: x * c for v, x in self.coeffs.items()} if c else {}
        return out

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if self.basis != other.basis:
            return False
        cut = min(self.cutoff, other.cutoff)
        a = {v: c for v, c in self.coeffs.items() if height(v) <= cut}
        b = {v: c for v, c in other.coeffs.items() if height(v) <= cut}
        return a == b

    def truncate(self, cutoff: int) -> "Series":
        out = Series(self.basis, self.rank, min(cutoff, self.cutoff))
        out.coeffs = {v: c for v, c in self.coeffs.items() if height(v) <= out.cutoff}
        return out

    def shift(self, mu: Sequence[int], coeff=1) -> "Series":
        """Multiply by ``coeff * e^{-mu}``."""
        mu = tuple(mu)
        out = Series(self.basis, self.rank, self.cutoff)
        d = {}
        for v, c in self.coeffs.items():
            w = tuple(a + b for a, b in zip(v, mu))
            if height(w) <= self.cutoff:
                d[w] = c * coeff
        out.coeffs = d
        return out

    def mul_binomial(self, gamma: Sequence[int], sign: int = -1, power: int = 1) -> "Series":
        """Multiply by ``(1 + sign*e^{-gamma})**power`` (power may be negative)."""
        gamma = tuple(gamma)
        hg = height(gamma)
        if hg <= 0:
            raise ValueError("binomial factor needs a vector of positive height")
        cur = self
        if power >= 0:
            for _ in range(power):
                d = dict(cur.coeffs)
                for v, c in cur.coeffs.items():
                    w = tuple(a + b for a, b in zip(v, gamma))
                    if height(w) <= cur.cutoff:
                        x = d.get(w, 0) + sign * c
                        if x:
                            d[w] = x
                        else:
                            d.pop(w, None)
                cur = Series(cur.basis, cur.rank, cur.cutoff)
                cur.coeffs = d
            return cur
        for _ in range(-power):
            # b = a / (1 + sign e^{-gamma}):  b(v) = a(v) - sign*b(v - gamma)
            d: Dict[tuple, object] = {}
            order = sorted(cur.coeffs, key=height)
            for v0 in order:
                c = cur.coeffs[v0]
                w, k = v0, 0
                while height(w) <= cur.cutoff:
                    x = d.get(w, 0) + c * (-sign) ** k
                    if x:
                        d[w] = x
                    else:
                        d.pop(w, None)
                    w = tuple(a + b for a, b in zip(w, gamma))
                    k += 1
            cur = Series(cur.basis, cur.rank, cur.cutoff)
            cur.coeffs = d
        return cur

    def __repr__(self):
        items = sorted(self.coeffs.items(), key=lambda kv: (height(kv[0]), kv[0]))
        body = " + ".join(f"{c}*e^-{v}" for v, c in items[:12])
        more = " + ..." if len(items) > 12 else ""
        return f"Series[{self.basis}, cutoff={self.cutoff}]({body or '0'}{more})"


def series_multiply(a: Series, b: Series) -> Series:
    """Product of two truncated series; the result keeps the smaller cutoff."""
    a._check(b)
    cut = min(a.cutoff, b.cutoff)
    d: Dict[tuple, object] = {}
    bl = [(v, c, height(v)) for v, c in b.coeffs.items()]
    for v1, c1 in a.coeffs.items():
        h1 = height(v1)
        for v2, c2, h2 in bl:
            if h1 + h2 <= cut:
                w = tuple(x + y for x, y in zip(v1, v2))
                d[w] = d.get(w, 0) + c1 * c2
    out = Series(a.basis, a.rank, cut)
    out.coeffs = {v: c for v, c in d.items() if c}
    return out


def series_invert(a: Series) -> Series:
    """Inverse of a series supported in the positive cone with constant term +-1."""
    zero = (0,) * a.rank
    a0 = a.coeffs.get(zero, 0)
    if a0 not in (1, -1):
        raise ValueError("constant term must be +1 or -1")
    rest = [(v, c) for v, c in a.coeffs.items() if v != zero]
    if any(height(v) <= 0 for v, _ in rest):
        raise ValueError("series must be supported in positive height away from 0")
    # all vectors reachable as sums of support elements, by height
    reach = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for u in frontier:
            for v, _ in rest:
                w = tuple(x + y for x, y in zip(u, v))
                if height(w) <= a.cutoff and w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt
    b: Dict[tuple, object] = {zero: a0}
    for w in sorted(reach - {zero}, key=height):
        s = 0
        for v, c in rest:
            u = tuple(x - y for x, y in zip(w, v))
            bu = b.get(u)
            if bu:
                s += c * bu
        if s:
            b[w] = -s * a0
    out = Series(a.basis, a.rank, a.cutoff)
    out.coeffs = {v: c for v, c in b.items() if c}
    return out


def univariate_series_mul(a: List, b: List, n: int) -> List:
    """Product of two coefficient lists truncated to degree ``n``."""
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def box(upper: Sequence[int]) -> Iterable[tuple]:
    """All integer vectors between 0 and ``upper`` componentwise."""
    return _iproduct(*(range(u + 1) for u in upper))
