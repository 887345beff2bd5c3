"""Decision procedures for irreducibility of vacuum modules and simplicity
of the associated vertex algebras.

Every verdict is computed from exact rationals.  Irrational inputs are
symbolic tags: :class:`Irrational` for a level or central charge outside
``Q`` (and outside ``Q + Q a`` for D(2,1,a)), and :class:`ALinear` for an
element ``r + s a`` of ``Q + Q a`` with ``a`` irrational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .roots import FiniteRootSystem, AffineRootSystem, catalog

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
CONJ_REDUCIBLE = "ConjecturalReducible"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Irrational:
    """A number known only to lie outside the rationals."""
    label: str = "irrational"

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ALinear:
    """``r + s*a`` where ``a`` is the (irrational) D(2,1,a) parameter."""
    r: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "s", Fraction(self.s))

    def __str__(self):
        if self.s == 0:
            return str(self.r)
        a = {1: "a", -1: "-a"}.get(self.s, f"{self.s}*a")
        return a if self.r == 0 else f"{self.r}+{a}".replace("+-", "-")


Number = Union[Fraction, int, Irrational, ALinear]


@dataclass
class Verdict:
    algebra: str
    value: str
    status: str
    criterion: str
    witness: Dict[str, object] = field(default_factory=dict)
    kind: str = "k"

    @property
    def negative(self) -> bool:
        """True for Reducible / NotSimple / ConjecturalReducible."""
        return self.status in (REDUCIBLE, NOT_SIMPLE, CONJ_REDUCIBLE)

    def to_dict(self) -> dict:
        return {"algebra": self.algebra, self.kind: self.value, "status": self.status,
                "witness": {k: _plain(v) for k, v in sorted(self.witness.items())},
                "criterion": self.criterion}


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


class UnsupportedAlgebra(ValueError):
    pass


def _is_rational(x) -> bool:
    if isinstance(x, ALinear):
        return x.s == 0
    return isinstance(x, (Fraction, int))


def _as_fraction(x) -> Fraction:
    return x.r if isinstance(x, ALinear) else Fraction(x)


def _inverse_of(x: Fraction, parity: Optional[int]) -> bool:
    """Is ``x == 1/n`` for a positive integer ``n`` of the given parity (None: any)?"""
    if x <= 0 or x.numerator != 1:
        return False
    return parity is None or x.denominator % 2 == parity


# ---------------------------------------------------------------------------
# vacuum modules
# ---------------------------------------------------------------------------

def _resolve(algebra) -> Tuple[str, FiniteRootSystem]:
    if isinstance(algebra, AffineRootSystem):
        algebra = algebra.finite
    if isinstance(algebra, FiniteRootSystem):
        return algebra.name, algebra
    try:
        rs = catalog(algebra)
    except ValueError as e:
        raise UnsupportedAlgebra(str(e)) from None
    return rs.name, rs.standard()


def _is_symbolic_d21a(algebra) -> bool:
    return isinstance(algebra, str) and algebra.replace(" ", "").rstrip("^") in ("D(2,1,a)", "D(2,1;a)")


def _d21a_irrational(k) -> Verdict:
    # standard normalization, h^vee = 0
    name = "D(2,1,a)"
    if isinstance(k, Irrational):
        return Verdict(name, str(k), IRREDUCIBLE, "irrational-level")
    k = k if isinstance(k, ALinear) else ALinear(Fraction(k), 0)
    if k.r == 0 and k.s == 0:
        return Verdict(name, str(k), REDUCIBLE, "critical-level", {"critical": True})
    if k.s == 0 and k.r >= 0:
        return Verdict(name, str(k), REDUCIBLE, "d21a-irrational", {"k_over": "1", "ratio": k.r})
    if k.r == 0 and k.s > 0:
        return Verdict(name, str(k), REDUCIBLE, "d21a-irrational", {"k_over": "a", "ratio": k.s})
    if k.r == k.s and k.r < 0:
        return Verdict(name, str(k), REDUCIBLE, "d21a-irrational", {"k_over": "-1-a", "ratio": -k.r})
    return Verdict(name, str(k), IRREDUCIBLE, "d21a-irrational")


def vacuum_irreducible(algebra, k: Number) -> Verdict:
    """Is the vacuum module ``V^k`` over the affinization irreducible?

    ``algebra`` is a catalog name (then ``k`` is read in the standard
    normalization) or a :class:`FiniteRootSystem`, in whose normalization
    ``k`` is read.  ``"D(2,1,a)"`` with no value of ``a`` selects the
    irrational-parameter case; ``k`` is then an :class:`ALinear`.
    """
    if _is_symbolic_d21a(algebra):
        return _d21a_irrational(k)
    name, rs = _resolve(algebra)
    hv = rs.dual_coxeter()
    if isinstance(k, ALinear) and k.s != 0:
        raise UnsupportedAlgebra(f"a-linear level given for {name}")
    if not _is_rational(k):
        return Verdict(name, str(k), IRREDUCIBLE, "irrational-level")
    k = _as_fraction(k)
    shifted = k + hv
    if shifted == 0:
        return Verdict(name, str(k), REDUCIBLE, "critical-level", {"critical": True, "h_vee": hv})

    if rs.family == "lie":
        short = min(rs.even_positive, key=lambda v: (abs(rs.norm(v)), sum(v), v))
        ka = shifted / rs.norm(short)
        red = ka >= 0 and not _inverse_of(ka, 0)
        return Verdict(name, str(k), REDUCIBLE if red else IRREDUCIBLE, "lie-short-root",
                       {"root": short, "k_alpha": ka})
    if rs.family == "osp1":
        odd = min(rs.odd_positive, key=lambda v: (abs(rs.norm(v)), sum(v), v))
        ka = shifted / rs.norm(odd)
        red = ka >= 0 and not _inverse_of(ka, 1)
        return Verdict(name, str(k), REDUCIBLE if red else IRREDUCIBLE, "osp1-odd-root",
                       {"root": odd, "k_alpha": ka})

    # positive defect: k_alpha in Q_{>=0} for some even root
    hit = None
    for v in rs.even_positive:
        nv = rs.norm(v)
        if nv != 0 and shifted / nv >= 0:
            hit = (v, shifted / nv)
            break
    wit = {"root": hit[0], "k_alpha": hit[1]} if hit else {}
    if rs.family in ("defect1", "D21a"):
        return Verdict(name, str(k), REDUCIBLE if hit else IRREDUCIBLE, "defect-one-even-root", wit)
    if rs.family == "gl22":
        return Verdict(name, str(k), REDUCIBLE if hit else IRREDUCIBLE, "gl22-even-root", wit)
    if hit:
        return Verdict(name, str(k), CONJ_REDUCIBLE, "even-root-conjecture", wit)
    return Verdict(name, str(k), UNKNOWN, "even-root-conjecture")


# ---------------------------------------------------------------------------
# Virasoro and Neveu-Schwarz
# ---------------------------------------------------------------------------

def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def virasoro_pq(c: Fraction) -> Optional[Tuple[int, int]]:
    """The coprime pair ``p > q >= 2`` with ``c = 1 - 6(p-q)^2/(pq)``, if any.

    With ``gcd(p, q) = 1`` the fraction ``(p-q)^2/(pq)`` is already reduced,
    so ``t = (1-c)/6 = m/n`` forces ``m = d^2`` and ``n = q(q+d)``; ``q`` is
    then the positive root of a quadratic and the pair is unique.
    """
    t = (1 - Fraction(c)) / 6
    if t <= 0:
        return None
    d = _isqrt_exact(t.numerator)
    if d is None:
        return None
    s = _isqrt_exact(d * d + 4 * t.denominator)
    if s is None or (s - d) % 2:
        return None
    q = (s - d) // 2
    p = q + d
    if q < 2 or math.gcd(p, q) != 1:
        return None
    return p, q


def ns_pq(c: Fraction) -> Optional[Tuple[int, int]]:
    """The pair ``p > q >= 2`` with ``p = q mod 2``, ``gcd((p-q)/2, q) = 1``
    and ``c = 3/2 (1 - 2(p-q)^2/(pq))``, if any (smallest ``q`` first).

    Writing ``p = q + 2e`` gives ``t = (1 - 2c/3)/2 = 4e^2 / (q(q+2e))`` with
    ``gcd(e, q(q+2e)) = 1``; so the reduced form ``m/n`` of ``t`` satisfies
    ``m*g = 4e^2`` and ``n*g = q(q+2e)`` for ``g = gcd(4, q(q+2e))``.  The
    three values of ``g`` are tried in turn.
    """
    t = (1 - Fraction(2, 3) * Fraction(c)) / 2
    if t <= 0:
        return None
    m, n = t.numerator, t.denominator
    found = []
    for g in (1, 2, 4):
        if (m * g) % 4:
            continue
        e = _isqrt_exact(m * g // 4)
        if not e:
            continue
        s = _isqrt_exact(e * e + n * g)
        if s is None:
            continue
        q = s - e
        p = q + 2 * e
        if q >= 2 and math.gcd(e, q) == 1 and math.gcd(4, q * p) == g:
            found.append((p, q))
    return min(found, key=lambda x: x[1]) if found else None


def virasoro_simple(c: Number) -> Verdict:
    if not _is_rational(c):
        return Verdict("Vir", str(c), SIMPLE, "virasoro-minimal-charge", kind="c")
    c = _as_fraction(c)
    pq = virasoro_pq(c)
    if pq:
        return Verdict("Vir", str(c), NOT_SIMPLE, "virasoro-minimal-charge", {"p": pq[0], "q": pq[1]}, "c")
    return Verdict("Vir", str(c), SIMPLE, "virasoro-minimal-charge", kind="c")


def ns_simple(c: Number) -> Verdict:
    if not _is_rational(c):
        return Verdict("NS", str(c), SIMPLE, "ns-minimal-charge", kind="c")
    c = _as_fraction(c)
    pq = ns_pq(c)
    if pq:
        return Verdict("NS", str(c), NOT_SIMPLE, "ns-minimal-charge", {"p": pq[0], "q": pq[1]}, "c")
    return Verdict("NS", str(c), SIMPLE, "ns-minimal-charge", kind="c")


def c2_condition(algebra: str, c: Number) -> bool:
    """Zhu's C2 condition for the vacuum vertex algebra, i.e. non-simplicity."""
    a = algebra.strip().lower()
    if a in ("vir", "virasoro"):
        return virasoro_simple(c).negative
    if a in ("ns", "neveu-schwarz", "n1"):
        return ns_simple(c).negative
    raise UnsupportedAlgebra(f"C2 test is available for Vir and NS, not {algebra!r}")


# ---------------------------------------------------------------------------
# minimal W-algebras
# ---------------------------------------------------------------------------

def w_normalized(name: str) -> FiniteRootSystem:
    """Catalog system rescaled so that the highest even root has norm 2."""
    try:
        rs = catalog(name)
    except ValueError as e:
        raise UnsupportedAlgebra(str(e)) from None
    if rs.family == "D21a" or rs.family == "gl22":
        raise UnsupportedAlgebra(f"no minimal W-algebra normalization for {name}")
    theta = rs.theta if rs.is_lie else max(
        (v for v in rs.even_positive if rs.norm(v) != 0), key=lambda v: (sum(v), v))
    return rs.scaled(Fraction(2) / rs.norm(theta))


def superdimension(rs: FiniteRootSystem) -> int:
    even = len(rs.even_positive)
    odd = len(rs.odd_positive)
    return rs.rank + 2 * even - 2 * odd


def w_central_charge(name: str, k: Fraction) -> Fraction:
    """Central charge of the minimal W-algebra at level ``k``, with (theta|theta)=2."""
    rs = w_normalized(name)
    hv = rs.dual_coxeter()
    k = Fraction(k)
    if k + hv == 0:
        raise ValueError("central charge undefined at the critical level")
    return k * superdimension(rs) / (k + hv) - 6 * k + hv - 4


def w_algebra_simple(g: str, k: Number) -> Verdict:
    """Is the minimal W-algebra of ``g`` at level ``k`` simple?

    ``k`` is read in the normalization where the highest even root has
    norm 2.  For ``sl2`` the algebra is the Virasoro vertex algebra.
    """
    rs = w_normalized(g)
    name = f"W({rs.name})"
    if not _is_rational(k):
        return Verdict(name, str(k), SIMPLE, "w-irrational-level")
    k = _as_fraction(k)
    hv = rs.dual_coxeter()
    if k + hv == 0:
        return Verdict(name, str(k), NOT_SIMPLE, "w-critical-level", {"critical": True})
    if rs.rank == 1 and rs.family in ("lie", "osp1"):
        # Virasoro resp. Neveu-Schwarz, determined by the central charge
        c = w_central_charge(g, k)
        v = virasoro_simple(c) if rs.is_lie else ns_simple(c)
        wit = dict(v.witness)
        wit["c"] = c
        tag = "w-sl2-virasoro" if rs.is_lie else "w-osp12-ns"
        return Verdict(name, str(k), v.status, tag, wit)
    vac = vacuum_irreducible(rs, k)
    wit = dict(vac.witness)
    wit["vacuum"] = vac.status
    if vac.status == IRREDUCIBLE:
        return Verdict(name, str(k), SIMPLE, "w-vacuum-irreducible", wit)
    if rs.is_lie:
        return Verdict(name, str(k), NOT_SIMPLE, "w-lie-lacety", wit)
    if k.denominator != 1 or k < 0:
        return Verdict(name, str(k), NOT_SIMPLE, "w-vacuum-reducible", wit)
    if rs.family == "defect1" and rs.rank == 2 and rs.name.startswith("sl(1|2)"):
        wit["length_two"] = True
        return Verdict(name, str(k), SIMPLE, "w-length-two", wit)
    return Verdict(name, str(k), UNKNOWN, "w-length-two-open", wit)


# ---------------------------------------------------------------------------
# superconformal algebras
# ---------------------------------------------------------------------------

FAMILIES = ("N1", "N2", "N3", "N4", "bigN4")


def _positive_int(x: Fraction) -> bool:
    return x.denominator == 1 and x > 0


def superconformal_simple(family: str, c: Number, a: Optional[Fraction] = None) -> Verdict:
    """Simplicity of the N=1,2,3,4 and big N=4 vertex algebras at charge ``c``.

    For ``bigN4`` the parameter ``a`` is a rational, or ``None`` for an
    irrational ``a``; then ``c`` may be an :class:`ALinear`.
    """
    fam = family.replace(" ", "").replace("=", "")
    if fam not in FAMILIES:
        raise UnsupportedAlgebra(f"unknown superconformal family {family!r}")
    if fam == "N1":
        v = ns_simple(c)
        v.algebra = "N1"
        return v
    tag = f"{fam}-charge"
    if fam == "bigN4":
        return _big_n4(c, a, tag)
    if not _is_rational(c):
        return Verdict(fam, str(c), SIMPLE, tag, kind="c")
    c = _as_fraction(c)
    if fam == "N2":
        x = (3 - c) / 6  # = p/q
        if x > 0 and x.denominator >= 2:
            return Verdict(fam, str(c), NOT_SIMPLE, tag, {"p": x.numerator, "q": x.denominator}, "c")
        return Verdict(fam, str(c), SIMPLE, tag, kind="c")
    if fam == "N3":
        b = -c / 3
        if _positive_int(b) and b.numerator % 2 == 1:
            return Verdict(fam, str(c), UNKNOWN, tag, {"b": b}, "c")
        return Verdict(fam, str(c), NOT_SIMPLE, tag, {"rational": True}, "c")
    b = -c / 6
    if _positive_int(b):
        return Verdict(fam, str(c), UNKNOWN, tag, {"b": b}, "c")
    return Verdict(fam, str(c), NOT_SIMPLE, tag, {"rational": True}, "c")


def _big_n4(c, a, tag) -> Verdict:
    if isinstance(c, Irrational):
        return Verdict("bigN4", str(c), SIMPLE, tag, kind="c")
    if a is None:
        x = c if isinstance(c, ALinear) else ALinear(Fraction(c), 0)
        if x.s == 0 and x.r >= 0:
            member = {"c_over": "1", "ratio": x.r}
        elif x.r == 0 and x.s > 0:
            member = {"c_over": "a", "ratio": x.s}
        elif x.r == x.s and x.r < 0:
            member = {"c_over": "-1-a", "ratio": -x.r}
        else:
            member = None
        cval = x.r if x.s == 0 else None
    else:
        a = Fraction(a)
        if isinstance(c, ALinear):
            c = c.r + c.s * a
        cval = Fraction(c)
        member = None
        if cval >= 0:
            member = {"c_over": "1", "ratio": cval}
        elif a != 0 and cval / a > 0:
            member = {"c_over": "a", "ratio": cval / a}
        elif a != -1 and cval / (-1 - a) > 0:
            member = {"c_over": "-1-a", "ratio": cval / (-1 - a)}
    if member is None:
        return Verdict("bigN4", str(c), SIMPLE, tag, kind="c")
    if cval is not None:
        b = -cval / 3
        if _positive_int(b) and b.numerator % 2 == 1:
            member["b"] = b
            return Verdict("bigN4", str(c), UNKNOWN, tag, member, "c")
    return Verdict("bigN4", str(c), NOT_SIMPLE, tag, member, "c")
