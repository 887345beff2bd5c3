"""Command-line front end: determinants, verdicts, KL polynomials, identities, M_b.

Every command prints one report with the keys ``query``, ``result``,
``cutoffs`` and ``provenance``.  Exit status: 0 success, 2 oracle (or
route) mismatch, 3 unsupported or malformed input.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import criteria as cr
from . import determinants as dt
from .exact import box, divide_linear_factors
from .roots import AffineRootSystem, catalog, get_system

EXIT_OK, EXIT_MISMATCH, EXIT_UNSUPPORTED = 0, 2, 3
CACHE_ENV = "VACDET_CACHE_DIR"
CONFIG_ENV = "VACDET_CONFIG"

DEFAULTS = {"cutoff": "12", "depth": "1", "bound": "8", "format": "human"}

EPILOG = f"""\
configuration:
  --config FILE (or ${CONFIG_ENV}) names a file of key=value lines giving
  defaults for cutoff, depth, bound and format.  Command-line flags win.

cache:
  ${CACHE_ENV}, when set, is a directory where M_b tables are stored as
  JSON and reused by later invocations.

exit status:
  0 success, 2 oracle or route mismatch, 3 unsupported or malformed input.
"""


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_UNSUPPORTED, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)(\*?a)?")


def parse_number(text: str):
    """Exact value of a sum like ``-3/2+1/3`` or ``1/2-3``.

    ``irrational`` gives the symbolic irrational tag; terms ending in ``a``
    (``2a``, ``-1/3*a``, bare ``a``) give an ``ALinear`` in the D(2,1,a)
    parameter.
    """
    t = text.replace(" ", "")
    if t.lower() in ("irrational", "irr"):
        return cr.Irrational()
    t = re.sub(r"(^|[+-])a", r"\g<1>1a", t)
    pos, r, s = 0, Fraction(0), Fraction(0)
    while pos < len(t):
        m = _TERM.match(t, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse number {text!r}")
        v = Fraction(m.group(2)) * (-1 if m.group(1) == "-" else 1)
        if m.group(3):
            s += v
        else:
            r += v
        pos = m.end()
    if not t:
        raise InputError("empty number")
    return cr.ALinear(r, s) if s else r


def parse_half(text: str) -> Fraction:
    v = parse_number(text)
    if not isinstance(v, Fraction) or (2 * v).denominator != 1 or v < 0:
        raise InputError(f"expected a non-negative integer or half-integer, got {text!r}")
    return v


def parse_range(text: str, half: bool = False) -> List[Fraction]:
    """``4`` or ``0..7`` (step 1/2 when ``half``)."""
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = parse_half(a), parse_half(b)
        step = Fraction(1, 2) if half else Fraction(1)
        out, x = [], lo
        while x <= hi:
            out.append(x)
            x += step
        return out
    return [parse_half(text)]


def parse_vec(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise InputError(f"cannot parse vector {text!r}") from None


def load_config(path: Optional[str]) -> Dict[str, str]:
    cfg = dict(DEFAULTS)
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        p = Path(path)
        if not p.is_file():
            raise InputError(f"config file {path} not found")
        cp = configparser.ConfigParser()
        cp.read_string("[defaults]\n" + p.read_text())
        cfg.update(cp["defaults"])
    return cfg


def affine(name: str) -> AffineRootSystem:
    n = name if name.strip().endswith("^") else name + "^"
    try:
        return get_system(n)
    except ValueError as e:
        raise InputError(str(e)) from None


def default_route(rs: AffineRootSystem) -> str:
    if rs.finite.family == "osp1":
        return "proosp"
    return "cordet" if rs.finite.is_lie else "detdef"


# ---------------------------------------------------------------------------
# M_b cache
# ---------------------------------------------------------------------------

def mb_table_cached(rs: AffineRootSystem, cutoff: int, route: str):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return dt.mb_table(rs, cutoff, route)
    d = Path(root)
    d.mkdir(parents=True, exist_ok=True)
    key = re.sub(r"[^A-Za-z0-9=.,()|-]", "_", f"{rs.finite.name}-{rs.finite.scale}-{route}-{cutoff}")
    f = d / f"mb-{key}.json"
    if f.is_file():
        raw = json.loads(f.read_text())
        return {Fraction(b): {tuple(int(x) for x in k.split(",")): c for k, c in v.items()}
                for b, v in raw.items()}
    tab = dt.mb_table(rs, cutoff, route)
    f.write_text(json.dumps({str(b): {",".join(map(str, k)): c for k, c in v.items()}
                             for b, v in tab.items()}, sort_keys=True))
    return tab


# ---------------------------------------------------------------------------
# oracle comparison
# ---------------------------------------------------------------------------

_ORACLE_AFFINE = {"A1": "sl2-affine", "A2": "sl3-affine", "osp(1|2)": "osp12-affine"}
_ORACLE_VERMA = {"A1": 2, "A2": 3}


def compare(formula: dt.FactoredDeterminant, brute) -> dict:
    """Agreement flag and, for univariate factors, the zero-multiset difference."""
    agree = formula.matches(brute)
    out = {"agree": agree}
    try:
        zeros = formula.zeros()
    except ValueError:
        zeros = None
    if zeros is not None and not agree:
        var = next(iter(formula.factors)).used_vars()[0] if formula.factors else "k"
        mult, rest = divide_linear_factors(brute, [(var, z) for z in zeros])
        diff = {str(z): [zeros[z], m] for z, m in zip(zeros, mult) if zeros[z] != m}
        out["zero_diff"] = diff
        out["unexplained_degree"] = 0 if rest.is_zero() else rest.degree()
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_det(args, cfg) -> tuple:
    kind = args.kind
    rows, status = [], EXIT_OK
    prov = []
    cut = {}
    if kind in ("virasoro", "ns"):
        Ns = parse_range(args.N or "0..4", half=(kind == "ns"))
        if kind == "virasoro" and any(n.denominator != 1 for n in Ns):
            raise InputError("Virasoro levels are integers")
        mod = None
        if args.oracle:
            from .oracle import module_from_name
            mod = module_from_name("vir-vacuum" if kind == "virasoro" else "ns-vacuum")
        for N in Ns:
            d = dt.virasoro_vacuum_det(int(N)) if kind == "virasoro" else dt.ns_vacuum_det(N)
            row = {"N": str(N), "factors": [[str(f), e] for f, e in d.items()], "degree": d.degree()}
            if mod is not None:
                lvl = (int(N),) if kind == "virasoro" else (int(2 * N),)
                row["oracle"] = compare(d, mod.det(lvl))
                if not row["oracle"]["agree"]:
                    status = EXIT_MISMATCH
            rows.append(row)
        prov = ["virasoro-vacuum-product"] if kind == "virasoro" else ["ns-vacuum-product"]
        cut = {"N": [str(n) for n in Ns]}
    elif kind == "verma":
        alg = (args.algebra or "Vir").strip()
        if alg.lower() in ("vir", "virasoro"):
            Ns = parse_range(args.N or "1..3")
            mod = None
            if args.oracle:
                from .oracle import module_from_name
                mod = module_from_name("vir-verma")
            for N in Ns:
                d = dt.virasoro_verma_det(int(N))
                row = {"N": str(N), "factors": [[str(f), e] for f, e in d.items()]}
                if mod is not None:
                    row["oracle"] = compare(d, mod.det((int(N),)))
                    status = status or (EXIT_MISMATCH if not row["oracle"]["agree"] else EXIT_OK)
                rows.append(row)
            prov = ["kac-determinant"]
            cut = {"N": [str(n) for n in Ns]}
        else:
            try:
                rs = catalog(alg)
            except ValueError as e:
                raise InputError(str(e)) from None
            if not args.nu:
                raise InputError("finite Verma determinants need --nu")
            nu = parse_vec(args.nu)
            I = parse_vec(args.I) if args.I else ()
            if len(nu) != rs.rank:
                raise InputError(f"--nu needs {rs.rank} coordinates")
            d = dt.gen_verma_det(rs, I, nu)
            row = {"nu": list(nu), "I": list(I), "symbols": list(dt.finite_symbols(rs, I)),
                   "factors": [[str(f), e] for f, e in d.items()]}
            if args.oracle:
                if rs.name not in _ORACLE_VERMA or rs.scale != 1:
                    raise InputError(f"no oracle for {alg}")
                from . import oracle
                mod = oracle.finite_verma(oracle.sl_n(_ORACLE_VERMA[rs.name]), I)
                row["oracle"] = compare(d, mod.det(nu))
                if not row["oracle"]["agree"]:
                    status = EXIT_MISMATCH
            rows.append(row)
            prov = ["generalized-verma-product"]
            cut = {"nu": list(nu)}
    else:  # vacuum
        if not args.algebra:
            raise InputError("--algebra is required")
        rs = affine(args.algebra)
        route = args.route or default_route(rs)
        fn = {"cordet": dt.vacuum_det, "detdef": dt.vacuum_det_defect, "proosp": dt.vacuum_det_osp12n}
        if route not in fn:
            raise InputError(f"unknown route {route!r}")
        if args.nu:
            levels = [parse_vec(args.nu)]
        else:
            depth = int(args.depth or cfg["depth"])
            top = tuple(depth * x for x in rs.delta)
            levels = sorted((nu for nu in box(top) if nu[0] >= 1), key=lambda v: (sum(v), v))
        mod = None
        if args.oracle:
            name = _ORACLE_AFFINE.get(rs.finite.name)
            if name is None:
                raise InputError(f"no oracle for {args.algebra}")
            from .oracle import module_from_name
            mod = module_from_name(name)
        for nu in levels:
            if len(nu) != len(rs.delta):
                raise InputError(f"--nu needs {len(rs.delta)} coordinates")
            try:
                d = fn[route](rs, nu)
            except dt.PreconditionError as e:
                raise InputError(str(e)) from None
            row = {"nu": list(nu), "factors": [[str(f), e] for f, e in d.items()]}
            if mod is not None:
                row["oracle"] = compare(d, mod.det(nu))
                if not row["oracle"]["agree"]:
                    status = EXIT_MISMATCH
            rows.append(row)
        prov = [f"vacuum-{route}"]
        cut = {"levels": [list(v) for v in levels], "h_vee": str(rs.finite.dual_coxeter())}
    return rows, cut, prov, status


def cmd_simplicity(args, cfg) -> tuple:
    rows = []
    if args.family:
        if not args.c:
            raise InputError("--family needs --c")
        a = parse_number(args.a) if args.a else None
        for c in args.c:
            rows.append(cr.superconformal_simple(args.family, parse_number(c), a).to_dict())
        return rows, {}, ["superconformal-charge"], EXIT_OK
    if not args.algebra:
        raise InputError("--algebra or --family is required")
    alg = args.algebra.strip()
    if alg.lower() in ("vir", "virasoro", "ns"):
        if not args.c:
            raise InputError(f"{alg} needs --c")
        f = cr.virasoro_simple if alg.lower() != "ns" else cr.ns_simple
        for c in args.c:
            v = f(parse_number(c)).to_dict()
            v["c2_condition"] = v["status"] == cr.NOT_SIMPLE
            rows.append(v)
        return rows, {}, ["minimal-charge"], EXIT_OK
    if not args.k:
        raise InputError("--algebra needs --k")
    for ktext in args.k:
        k = parse_number(ktext)
        row = {"vacuum": cr.vacuum_irreducible(alg, k).to_dict()}
        try:
            row["w_algebra"] = cr.w_algebra_simple(alg, k).to_dict()
        except (cr.UnsupportedAlgebra, ValueError, TypeError):
            pass
        rows.append(row)
    return rows, {}, ["vacuum-criterion", "w-algebra-criterion"], EXIT_OK


def cmd_kl(args, cfg) -> tuple:
    from . import kl
    try:
        W = kl.diagram(args.diagram)
    except ValueError as e:
        raise InputError(str(e)) from None
    T = kl.KLTable(W)
    rows, status = [], EXIT_OK
    try:
        if args.theta:
            bound = int(args.bound or cfg["bound"])
            t = kl.theta_member(args.theta, W, bound)
            rows.append({"node": args.theta, "verdict": t.verdict, "witness": t.witness, "Q": t.q})
            return rows, {"length_bound": bound}, ["theta-search"], EXIT_OK
        for op in ("q", "p", "r", "m"):
            pair = getattr(args, op)
            if not pair:
                continue
            x, z = W.parse(pair[0]), W.parse(pair[1])
            row = {"op": op.upper(), "x": W.format(x), "z": W.format(z),
                   "leq": W.bruhat_leq(x, z)}
            if op == "q":
                a = T.q_cpoly(x, z, "defQ")
                b = T.q_cpoly(x, z, "prQ")
                row["value"] = kl.cpoly_str(a)
                row["routes_agree"] = a == b
                if a != b:
                    row["prQ_value"] = kl.cpoly_str(b)
                    status = EXIT_MISMATCH
            elif op == "p":
                row["value"] = kl.cpoly_str(T._p(x, z))
            elif op == "r":
                row["value"] = kl.cpoly_str(T._r(x, z))
            else:
                row["value"] = kl.cpoly_str(T.m_cpoly(x, z))
            rows.append(row)
    except kl.IntervalTooLarge as e:
        raise InputError(str(e)) from None
    if not rows:
        raise InputError("give one of --q, --p, --r, --m, --theta")
    return rows, {}, ["kl-recursion"], status


IDENTITIES = ("vircon1", "ns_degree", "ns_degree_literal", "leading_term", "kwn")


def cmd_identity(args, cfg) -> tuple:
    cutoff = int(args.cutoff or cfg["cutoff"])
    if args.name == "kwn":
        from .partitions import kwn_identity_check
        alg = args.algebra or "sl(1|2)"
        try:
            rs = catalog(alg)
        except ValueError as e:
            raise InputError(str(e)) from None
        ok = kwn_identity_check(rs, cutoff)
        row = {"name": "kwn", "algebra": rs.name, "holds": ok}
    elif args.name in IDENTITIES:
        rep = dt.identity_checks(args.name, cutoff)
        row = {"name": rep.name, "holds": rep.holds, "first_mismatch": rep.first_mismatch}
        if rep.detail:
            row["detail"] = rep.detail
        cutoff = rep.cutoff
    else:
        raise InputError(f"unknown identity {args.name!r}; choose from {', '.join(IDENTITIES)}")
    row["verdict"] = "PASS" if row["holds"] else "FAIL"
    return [row], {"cutoff": cutoff}, [f"identity-{args.name}"], EXIT_OK


def cmd_mb(args, cfg) -> tuple:
    rs = affine(args.algebra)
    cutoff = int(args.cutoff or cfg["cutoff"])
    route = args.route or default_route(rs)
    if route not in ("cordet", "detdef", "proosp"):
        raise InputError(f"unknown route {route!r}")
    try:
        tab = mb_table_cached(rs, cutoff, route)
    except dt.PreconditionError as e:
        raise InputError(str(e)) from None
    rows = []
    bs = [parse_number(b) for b in args.b] if args.b else sorted(tab)
    for b in bs:
        if not isinstance(b, Fraction):
            raise InputError("b must be rational")
        coeffs = {v: c for v, c in tab.get(b, {}).items() if c}
        s = dt.MbSeries(b, cutoff, coeffs)
        rows.append({"b": str(b), "verdict": s.verdict(),
                     "lowest_terms": [[list(v), c] for v, c in s.lowest_terms()]})
    caveat = f"a zero verdict only covers heights <= {cutoff}"
    return rows, {"cutoff": cutoff, "caveat": caveat, "route": route}, [f"mb-{route}"], EXIT_OK


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _flat(prefix: str, v, out: List[tuple]):
    if isinstance(v, dict):
        for k in v:
            _flat(f"{prefix}.{k}" if prefix else str(k), v[k], out)
    elif isinstance(v, list) and v and all(isinstance(x, (list, dict)) for x in v):
        for i, x in enumerate(v):
            _flat(f"{prefix}[{i}]", x, out)
    else:
        out.append((prefix, v))


def render(report: dict, form: str) -> str:
    if form == "json":
        return json.dumps(report, indent=2)
    lines = []
    if form == "tsv":
        lines.append("row\tkey\tvalue")
        for i, row in enumerate(report["result"]):
            flat: List[tuple] = []
            _flat("", row, flat)
            for k, v in flat:
                lines.append(f"{i}\t{k}\t{json.dumps(v) if not isinstance(v, str) else v}")
        for k, v in report["cutoffs"].items():
            lines.append(f"cutoff\t{k}\t{json.dumps(v) if not isinstance(v, str) else v}")
        return "\n".join(lines)
    q = report["query"]
    lines.append(" ".join(f"{k}={v}" for k, v in q.items() if v not in (None, False, [])))
    for row in report["result"]:
        flat = []
        _flat("", row, flat)
        lines.append("  " + "; ".join(f"{k}: {v}" for k, v in flat))
    if report["cutoffs"]:
        lines.append("cutoffs: " + ", ".join(f"{k}={v}" for k, v in report["cutoffs"].items()))
    lines.append("provenance: " + ", ".join(report["provenance"]))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vacdet", description="Exact determinant formulas and simplicity criteria "
                "for vacuum modules.", epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", help="key=value defaults file")
    p.add_argument("--format", choices=("json", "tsv", "human"))
    # the same two options are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key=value defaults file")
    common.add_argument("--format", choices=("json", "tsv", "human"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("det", parents=[common], help="factored determinants, optionally checked against brute force")
    d.add_argument("kind", choices=("virasoro", "ns", "vacuum", "verma"))
    d.add_argument("--N", help="level or range a..b (half-integers for ns)")
    d.add_argument("--algebra", help="catalog id, e.g. sl2^, osp(1|2)^, Vir, A2")
    d.add_argument("--depth", help="vacuum: all weights below depth*delta")
    d.add_argument("--nu", help="a single weight, comma separated simple-root coordinates")
    d.add_argument("--I", help="verma: parabolic subset, comma separated")
    d.add_argument("--route", help="vacuum: cordet, detdef or proosp")
    d.add_argument("--oracle", action="store_true", help="compare with the brute-force Gram determinant")

    s = sub.add_parser("simplicity", parents=[common], help="irreducibility and simplicity verdicts")
    s.add_argument("--algebra", help="catalog id, D(2,1,a), Vir or NS")
    s.add_argument("--k", nargs="+", help="levels, e.g. -3/2+1/3, irrational, 1/2*a")
    s.add_argument("--family", help="N1, N2, N3, N4 or bigN4")
    s.add_argument("--c", nargs="+", help="central charges")
    s.add_argument("--a", help="bigN4: rational value of a (omit for irrational a)")

    k = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomials")
    k.add_argument("--diagram", required=True, help="A3, C3, G2, affine-A2, affine-C2, affine-G2, ...")
    for op, what in (("q", "inverse KL polynomial Q"), ("p", "KL polynomial P"),
                     ("r", "R polynomial"), ("m", "the M statistic")):
        k.add_argument(f"--{op}", nargs=2, metavar=("X", "Z"), help=what)
    k.add_argument("--theta", metavar="NODE", help="search for Q_{s,w} != 1")
    k.add_argument("--bound", help="length bound for --theta")

    i = sub.add_parser("identity", parents=[common], help="generating-function identities")
    i.add_argument("--name", required=True, help=", ".join(IDENTITIES))
    i.add_argument("--cutoff")
    i.add_argument("--algebra", help="kwn: catalog id")

    m = sub.add_parser("mb", parents=[common], help="the M_b series of an affine system")
    m.add_argument("--algebra", required=True)
    m.add_argument("--b", nargs="*")
    m.add_argument("--cutoff")
    m.add_argument("--route")
    return p


COMMANDS = {"det": cmd_det, "simplicity": cmd_simplicity, "kl": cmd_kl,
            "identity": cmd_identity, "mb": cmd_mb}


def _strip(v):
    if isinstance(v, str):
        return v.strip()
    if isinstance(v, list):
        return [_strip(x) for x in v]
    return v


_NEG = re.compile(r"-[0-9a][0-9a/*+\-]*")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a leading space keeps values like -3/2+1/3 from being read as flags
    argv = [" " + a if _NEG.fullmatch(a) else a for a in argv]
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        form = args.format or cfg["format"]
        if form not in ("json", "tsv", "human"):
            raise InputError(f"unknown format {form!r}")
        rows, cut, prov, status = COMMANDS[args.command](args, cfg)
    except (InputError, cr.UnsupportedAlgebra) as e:
        print(f"vacdet: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    query = {k: _strip(v) for k, v in vars(args).items() if k not in ("config", "format")}
    report = {"query": query, "result": rows, "cutoffs": cut, "provenance": prov}
    print(render(report, form))
    return status


if __name__ == "__main__":
    sys.exit(main())
