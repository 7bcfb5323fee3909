"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.  Complex
arguments are file paths, or ``corpus:<name>`` for a built-in example.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cells, geometry
from .complex import StratComplex, Subcomplex, barycentric_subdivision, glue
from .errors import InputError, StratLinkError
from .fileformat import (
    format_complex,
    format_delta_complex,
    parse_any,
    parse_simplex_list,
    parse_vertex_map,
    read,
)
from .flags import make_flag, make_regular
from .homology import homology, mayer_vietoris_check
from .neighborhoods import holink_model, simplicial_link, stan_hood_flag
from .poset import count_regular_flags, regular_flags

FLAG_WARNING = 2 ** 20
DIM_NAMES = ("vertices", "edges", "triangles", "tetrahedra")


def load(arg: str):
    if arg.startswith("corpus:"):
        return cells.corpus(arg[len("corpus:"):])
    return parse_any(read(arg))


def load_complex(arg: str) -> StratComplex:
    obj = load(arg)
    if isinstance(obj, cells.DeltaComplex):
        return cells.flatten(obj)[0]
    return obj


def parse_flag_arg(K, text: str):
    entries = [p.strip() for p in text.split(",") if p.strip()]
    return make_regular(K.poset, entries)


def _flags(K, given) -> list:
    if given:
        return [parse_flag_arg(K, f).entries for f in given]
    n = count_regular_flags(K.poset)
    if n > FLAG_WARNING:
        print(f"warning: {n} regular flags to enumerate", file=sys.stderr)
    return regular_flags(K.poset)


def _fmt_flag(I) -> str:
    return "[" + ",".join(I) + "]"


def summary(obj) -> list[str]:
    if isinstance(obj, cells.DeltaComplex):
        counts, chi, kind = obj.cell_counts, obj.euler_characteristic(), "cells"
    else:
        counts, chi, kind = obj.f_vector, obj.euler_characteristic(), "simplices"
    if not counts:
        return [f"0 {kind}"]
    parts = []
    for d, n in enumerate(counts):
        parts.append(f"{n} {DIM_NAMES[d]}" if d < len(DIM_NAMES) else f"{n} {d}-{kind}")
    return [", ".join(parts) + f", χ={chi}"]


def cmd_show(args) -> int:
    obj = load(args.complex)
    for line in summary(obj):
        print(line)
    if isinstance(obj, cells.DeltaComplex):
        print("Δ-complex; flattened: " + summary(cells.flatten(obj)[0])[0])
    else:
        counts = obj.strata_counts()
        print("open simplices per stratum: " + ", ".join(f"{p}: {counts[p]}" for p in obj.poset.elements))
    return 0


def cmd_holink(args) -> int:
    K = load_complex(args.complex)
    I = parse_flag_arg(K, args.flag)
    model = holink_model(K, I)
    print(f"# holink model of {_fmt_flag(I.entries)}: " + summary(model.complex)[0])
    print(homology(model.complex, args.coeff))
    return 0


def cmd_verify_a(args) -> int:
    K = load_complex(args.complex)
    failures = 0
    flags = _flags(K, args.flag)
    for I in flags:
        link = simplicial_link(K, I)
        model = holink_model(K, I).complex
        ok = True
        parts = []
        for coeff in args.coeffs:
            h1, h2 = homology(link, coeff), homology(model, coeff)
            same = h1.same_homology(h2)
            ok &= same
            parts.append(f"{coeff}: link {h1.trimmed()[0]} model {h2.trimmed()[0]}")
        note = " (both empty)" if not link.simplices and not model.simplices else ""
        print(f"{_fmt_flag(I)} {'PASS' if ok else 'FAIL'}{note}  " + "; ".join(parts))
        failures += not ok
    print(f"{len(flags) - failures}/{len(flags)} flags pass")
    return 1 if failures else 0


def cmd_verify_b(args) -> int:
    X = load_complex(args.x)
    B = load_complex(args.b)
    A = Subcomplex(B, frozenset(_closure(parse_simplex_list(read(args.sub)))))
    embed = parse_vertex_map(read(args.map))
    G = glue(X, B, A, embed)
    print("# Y: " + summary(G.Y)[0])
    failures = 0
    flags = _flags(G.Y, args.flag)
    for I in flags:
        links = [simplicial_link(S.complex(), I).simplices for S in (G.X, G.B, G.A)]
        LY = simplicial_link(G.Y, I)
        report = mayer_vietoris_check(LY, *links)
        chis = [_chi(s) for s in (LY.simplices, *links)]
        euler = chis[0] == chis[1] + chis[2] - chis[3]
        ok = report.ok and euler
        print(
            f"{_fmt_flag(I)} {'PASS' if ok else 'FAIL'}  χ: {chis[0]} = {chis[1]} + {chis[2]} - {chis[3]}"
            + ("" if report.ok else f"  ({report})")
        )
        failures += not ok
    print(f"{len(flags) - failures}/{len(flags)} flags pass")
    return 1 if failures else 0


def _closure(simplices):
    from itertools import combinations

    out = set()
    for s in simplices:
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


def _chi(simplices) -> int:
    return sum((-1) ** (len(s) - 1) for s in simplices)


def cmd_sd(args) -> int:
    obj = load(args.complex)
    if isinstance(obj, cells.DeltaComplex):
        for _ in range(args.count):
            obj = cells.delta_sd(obj)
        print(format_delta_complex(obj, [f"subdivided {args.count} times"]), end="")
        return 0
    for _ in range(args.count):
        obj = barycentric_subdivision(obj)
    print(format_complex(obj, [f"subdivided {args.count} times"]), end="")
    return 0


def cmd_link(args) -> int:
    K = load_complex(args.complex)
    I = parse_flag_arg(K, args.flag)
    L = simplicial_link(K, I)
    print(format_complex(L.complex(), [f"simplicial link of {_fmt_flag(I.entries)}", "subcomplex of sd of the input"]), end="")
    return 0


def cmd_neighborhood(args) -> int:
    K = load_complex(args.complex)
    I = parse_flag_arg(K, args.flag)
    S = stan_hood_flag(K, I)
    print(format_complex(S.complex(), [f"standard neighborhood of {_fmt_flag(I.entries)}", "subcomplex of sd of the input"]), end="")
    return 0


def cmd_corpus(args) -> int:
    if args.name == "list":
        print("\n".join(cells.corpus_names()))
        return 0
    obj = cells.corpus(args.name)
    if isinstance(obj, cells.DeltaComplex):
        if args.raw:
            print(format_delta_complex(obj, [f"corpus {args.name}"]), end="")
            return 0
        obj, k = cells.flatten(obj)
        print(format_complex(obj, [f"corpus {args.name}, subdivided {k} times"]), end="")
        return 0
    print(format_complex(obj, [f"corpus {args.name}"]), end="")
    return 0


def cmd_homology(args) -> int:
    K = load_complex(args.complex)
    print(homology(K, args.coeff))
    return 0


def _parse_phi(text: str | None) -> geometry.PLFunction:
    if not text:
        return geometry.ONE
    xs, ys = [], []
    for part in text.split(","):
        x, sep, y = part.partition(":")
        if not sep:
            return geometry.PLFunction.constant(Fraction(x))
        xs.append(Fraction(x))
        ys.append(Fraction(y))
    return geometry.PLFunction(tuple(xs), tuple(ys))


def _point(P, flag_text: str, point_text: str):
    J = make_flag(P, [p.strip() for p in flag_text.split(",")])
    try:
        coords = [Fraction(c) for c in point_text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational point {point_text!r}") from None
    try:
        return geometry.SimplexPoint(J, tuple(coords))
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_geom(args) -> int:
    from .poset import chain_poset

    order = args.poset.split(",") if args.poset else args.flag.split(",")
    P = chain_poset(dict.fromkeys(p.strip() for p in order))
    op = args.op
    if op == "barycenter":
        print(geometry.weighted_barycenter(make_flag(P, args.flag.split(","))))
        return 0
    if not args.point:
        raise InputError(f"geom {op} needs --point")
    if op not in ("point-stratum",) and op != "aspire" and not args.p:
        raise InputError(f"geom {op} needs --p")
    x = _point(P, args.flag, args.point)
    if op == "point-stratum":
        print(geometry.point_stratum(x))
    elif op == "s-coord":
        print(geometry.s_coord(x, args.p, args.mode))
    elif op == "t-coord":
        print(geometry.t_coord(x, args.p))
    elif op == "in-phi-hood":
        print(str(geometry.in_phi_hood(x, args.p, _parse_phi(args.phi))).lower())
    elif op == "rho":
        print(geometry.rho(x, args.p))
    elif op == "aspire":
        I = make_regular(P, args.aspire_flag.split(","))
        t = _point(P, args.aspire_flag, args.t)
        print(geometry.aspire_eval(x, I, t))
    elif op == "phi-reparam":
        print(geometry.phi_reparam(x, args.p, _parse_phi(args.phi)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stratlink", description="Combinatorial models of homotopy links of stratified complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def complex_cmd(name, func, help_text, flag=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("complex", help="complex file or corpus:<name>")
        if flag:
            p.add_argument("--flag", required=True, help="regular flag, e.g. 0,2")
        p.set_defaults(func=func)
        return p

    complex_cmd("show", cmd_show, "summary counts and Euler characteristic")
    p = complex_cmd("holink", cmd_holink, "homology of the holink model of a flag", flag=True)
    p.add_argument("--coeff", default="int")
    p = complex_cmd("verify-a", cmd_verify_a, "compare link and holink model homology for each flag")
    p.add_argument("--flag", action="append", help="restrict to this flag (repeatable); default all")
    p.add_argument("--coeffs", nargs="+", default=["int", "rat"])
    p = sub.add_parser("verify-b", help="Mayer-Vietoris check of link decompositions of a gluing")
    p.add_argument("x", help="complex X")
    p.add_argument("b", help="complex B")
    p.add_argument("--sub", required=True, help="file of 'simplex' lines spanning A inside B")
    p.add_argument("--map", required=True, help="file of '<vertex of A> <vertex of X>' lines")
    p.add_argument("--flag", action="append")
    p.set_defaults(func=cmd_verify_b)
    p = complex_cmd("sd", cmd_sd, "barycentric subdivision")
    p.add_argument("--count", type=int, default=1)
    complex_cmd("link", cmd_link, "simplicial link of a flag", flag=True)
    complex_cmd("neighborhood", cmd_neighborhood, "standard neighborhood of a flag", flag=True)
    p = sub.add_parser("corpus", help="print a built-in example ('list' for names)")
    p.add_argument("name")
    p.add_argument("--raw", action="store_true", help="print Δ-complexes without flattening")
    p.set_defaults(func=cmd_corpus)
    p = complex_cmd("homology", cmd_homology, "homology groups")
    p.add_argument("--coeff", default="int", help="int, rat or mod:<prime>")

    p = sub.add_parser("geom", help="exact coordinate calculus on a stratified simplex")
    p.add_argument(
        "op",
        choices=["point-stratum", "s-coord", "t-coord", "in-phi-hood", "rho", "aspire", "phi-reparam", "barycenter"],
    )
    p.add_argument("--flag", required=True, help="flag J of the simplex, e.g. 0,1,2")
    p.add_argument("--poset", help="chain order of labels (default: order of first appearance in --flag)")
    p.add_argument("--point", help="coordinates, e.g. 1/2,1/4,1/4")
    p.add_argument("--p", help="label")
    p.add_argument("--mode", default="eq", choices=["eq", "le", "lt", "not_le", "not_lt"])
    p.add_argument("--phi", help="constant c, or breakpoints 0:v0,...,1:vk")
    p.add_argument("--aspire-flag", help="regular flag I for 'aspire'")
    p.add_argument("--t", help="point of Δ^I for 'aspire'")
    p.set_defaults(func=cmd_geom)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError, ValueError, StratLinkError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
