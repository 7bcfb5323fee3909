"""Line-oriented text formats for complexes, Δ-complexes, subcomplexes and vertex maps.

::

    # comments start with a hash
    poset
    0
    1
    2
    rel 0 1
    rel 1 2
    vertex v0 0
    vertex v1 1
    simplex v0 v1

Δ-complexes replace ``vertex``/``simplex`` with cell lines
``cell <dim> <id> : <face ids> : <flag labels>``.
"""
from __future__ import annotations

from pathlib import Path

from .cells import DeltaComplex, validate
from .complex import StratComplex, from_maximal, simplex
from .errors import InputError, ParseError
from .poset import Poset

KEYWORDS = {"poset", "rel", "vertex", "simplex", "cell"}


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _parse_poset(rows) -> tuple[Poset, list]:
    labels, rels, rest = [], [], []
    in_poset = False
    seen_poset = False
    for no, tok in rows:
        head = tok[0]
        if head == "poset":
            if len(tok) != 1:
                raise ParseError("'poset' takes no arguments", no)
            in_poset = seen_poset = True
        elif head == "rel":
            if len(tok) != 3:
                raise ParseError("expected 'rel <p> <q>'", no)
            rels.append((no, tok[1], tok[2]))
        elif head in KEYWORDS:
            in_poset = False
            rest.append((no, tok))
        elif in_poset:
            if len(tok) != 1:
                raise ParseError(f"poset label must be a single token, got {' '.join(tok)!r}", no)
            labels.append((no, head))
        else:
            raise ParseError(f"unknown keyword {head!r}", no)
    if not seen_poset:
        raise ParseError("missing 'poset' section")
    names = [p for _, p in labels]
    for no, p in labels:
        if names.count(p) > 1:
            raise ParseError(f"duplicate poset label {p!r}", no)
        if set("<>|") & set(p):
            raise ParseError(f"label {p!r} uses a reserved character", no)
    for no, p, q in rels:
        for x in (p, q):
            if x not in names:
                raise ParseError(f"unknown label {x!r} in relation", no)
    try:
        P = Poset(names, [(p, q) for _, p, q in rels])
    except InputError as e:
        raise ParseError(str(e), rels[-1][0] if rels else None) from None
    return P, rest


def parse_complex(text: str) -> StratComplex:
    P, rest = _parse_poset(_lines(text))
    labels: dict[str, str] = {}
    tops = []
    for no, tok in rest:
        head = tok[0]
        if head == "vertex":
            if len(tok) != 3:
                raise ParseError("expected 'vertex <id> <label>'", no)
            v, p = tok[1], tok[2]
            if v in labels:
                raise ParseError(f"duplicate vertex {v!r}", no)
            if p not in P:
                raise ParseError(f"unknown label {p!r} for vertex {v}", no)
            if set("<>|") & set(v) and not (v.startswith("<") and v.endswith(">")):
                raise ParseError(f"vertex id {v!r} uses a reserved character", no)
            labels[v] = p
        elif head == "simplex":
            tops.append((no, tok[1:]))
        else:
            raise ParseError(f"'{head}' lines are not allowed in a simplicial complex file", no)
    for no, ids in tops:
        if not ids:
            raise ParseError("empty simplex", no)
        if len(set(ids)) != len(ids):
            raise ParseError(f"repeated vertex in simplex {ids}", no)
        for v in ids:
            if v not in labels:
                raise ParseError(f"unknown vertex {v!r}", no)
        if not P.is_chain(labels[v] for v in ids):
            raise ParseError(f"simplex {ids} has incomparable labels", no)
    return from_maximal(P, labels, [ids for _, ids in tops])


def parse_delta_complex(text: str) -> DeltaComplex:
    P, rest = _parse_poset(_lines(text))
    faces, flags = {}, {}
    for no, tok in rest:
        if tok[0] != "cell":
            raise ParseError(f"'{tok[0]}' lines are not allowed in a Δ-complex file", no)
        parts = " ".join(tok[1:]).split(":")
        if len(parts) != 3:
            raise ParseError("expected 'cell <dim> <id> : <faces> : <flag>'", no)
        head, fs, fl = (p.split() for p in parts)
        if len(head) != 2:
            raise ParseError("expected 'cell <dim> <id>' before the first ':'", no)
        try:
            dim = int(head[0])
        except ValueError:
            raise ParseError(f"bad dimension {head[0]!r}", no) from None
        cid = head[1]
        if cid in flags:
            raise ParseError(f"duplicate cell {cid!r}", no)
        if len(fl) != dim + 1:
            raise ParseError(f"{dim}-cell needs a flag of length {dim + 1}", no)
        if dim > 0 and len(fs) != dim + 1:
            raise ParseError(f"{dim}-cell needs {dim + 1} faces", no)
        if dim == 0 and fs:
            raise ParseError("0-cells have no faces", no)
        for p in fl:
            if p not in P:
                raise ParseError(f"unknown label {p!r}", no)
        faces[cid], flags[cid] = tuple(fs), tuple(fl)
    D = DeltaComplex(P, faces, flags)
    validate(D)
    return D


def is_delta_text(text: str) -> bool:
    return any(tok[0] == "cell" for _, tok in _lines(text))


def parse_any(text: str):
    return parse_delta_complex(text) if is_delta_text(text) else parse_complex(text)


def _poset_lines(P: Poset) -> list[str]:
    return ["poset"] + list(P.elements) + [f"rel {p} {q}" for p, q in P.hasse()]


def format_complex(K: StratComplex, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += _poset_lines(K.poset)
    lines += [f"vertex {v} {K.labels[v]}" for v in K.vertices]
    lines += ["simplex " + " ".join(s) for s in K.maximal_simplices()]
    return "\n".join(lines) + "\n"


def format_delta_complex(D: DeltaComplex, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += _poset_lines(D.poset)
    for c in D.cells:
        lines.append(f"cell {D.dim_of(c)} {c} : {' '.join(D.faces[c])} : {' '.join(D.flags[c])}")
    return "\n".join(lines) + "\n"


def parse_simplex_list(text: str) -> list[tuple]:
    """``simplex`` lines only; used to describe subcomplexes."""
    out = []
    for no, tok in _lines(text):
        if tok[0] != "simplex" or len(tok) < 2:
            raise ParseError("expected 'simplex <id> ...'", no)
        out.append(simplex(tok[1:]))
    return out


def parse_vertex_map(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for no, tok in _lines(text):
        if len(tok) != 2:
            raise ParseError("expected '<source vertex> <target vertex>'", no)
        if tok[0] in out:
            raise ParseError(f"vertex {tok[0]!r} mapped twice", no)
        out[tok[0]] = tok[1]
    return out


def read(path) -> str:
    return Path(path).read_text(encoding="utf-8")
