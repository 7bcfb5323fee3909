"""Stratified Δ-complexes: cells with ordered faces, identifications allowed.

A cell of dimension n has a flag of length n+1 and, for n >= 1, an ordered
list of n+1 faces ``(d_0, ..., d_n)``; ``d_i`` is the face opposite vertex i.

Barycentric subdivision works on pairs ``(c, S_0 ⊊ ... ⊊ S_n)`` of a cell and
a chain of nonempty index sets.  A pair is *canonical* when ``S_n`` is the
full index set of ``c``; any other pair is pushed to the face of ``c``
spanned by ``S_n`` and reindexed.  For example, in a triangle ``T`` with
faces ``(e0, e1, e2)``, the pair ``(T, {0} ⊊ {0,2})`` lives on the face
``d_1 T = e1`` (indices ``{0,2}``, renumbered ``0 -> 0, 2 -> 1``) and becomes
``(e1, {0} ⊊ {0,1})``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .complex import (
    StratComplex,
    Subcomplex,
    boundary_of_simplex,
    from_maximal,
    stratified_simplex,
)
from .errors import (
    FaceIdentityViolation,
    FlagMismatch,
    InvalidComplex,
    NotSimplicial,
    PrecursorCycle,
    UnknownCorpusName,
    UnknownElement,
)
from .poset import Poset, chain_poset


@dataclass(frozen=True, eq=False)
class DeltaComplex:
    poset: Poset
    faces: Mapping[str, tuple[str, ...]]
    flags: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        flags = {str(c): tuple(str(p) for p in f) for c, f in dict(self.flags).items()}
        faces = {str(c): tuple(str(x) for x in f) for c, f in dict(self.faces).items()}
        for c in flags:
            faces.setdefault(c, ())
        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "faces", faces)

    def dim_of(self, c: str) -> int:
        return len(self.flags[c]) - 1

    @property
    def cells(self) -> list[str]:
        return sorted(self.flags, key=lambda c: (self.dim_of(c), c))

    def cells_of_dim(self, n: int) -> list[str]:
        return sorted(c for c in self.flags if self.dim_of(c) == n)

    @property
    def dim(self) -> int:
        return max((self.dim_of(c) for c in self.flags), default=-1)

    @property
    def cell_counts(self) -> tuple[int, ...]:
        return tuple(len(self.cells_of_dim(n)) for n in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in enumerate(self.cell_counts))

    def face(self, c: str, i: int) -> str:
        return self.faces[c][i]

    def face_spanned(self, c: str, indices) -> str:
        """The face of ``c`` spanned by the vertex indices ``indices``."""
        keep = set(indices)
        for k in reversed(range(self.dim_of(c) + 1)):
            if k not in keep:
                c = self.faces[c][k]
        return c

    def vertices_of(self, c: str) -> tuple[str, ...]:
        return tuple(self.face_spanned(c, (i,)) for i in range(self.dim_of(c) + 1))


@dataclass
class ValidationReport:
    cell_counts: tuple[int, ...]
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(D: DeltaComplex, strict: bool = True) -> ValidationReport:
    """Check precursor acyclicity, face dimensions, face identities and flags.

    With ``strict`` the first problem is raised; otherwise all problems are
    collected in the report.
    """
    problems: list[Exception] = []

    for c, fs in D.faces.items():
        for x in fs:
            if x not in D.flags:
                problems.append(InvalidComplex(f"cell {c} references unknown face {x!r}"))
    if problems:
        if strict:
            raise problems[0]
        return ValidationReport((), problems)

    # precursor relation: c' precedes c when c' is a face of c
    state: dict[str, int] = {}
    for root in D.flags:
        if root in state:
            continue
        stack = [(root, iter(D.faces[root]))]
        state[root] = 1
        while stack:
            c, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[c] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                problems.append(PrecursorCycle(f"cell {nxt} is its own precursor"))
                stack.clear()
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(D.faces[nxt])))
    if problems:
        if strict:
            raise problems[0]
        return ValidationReport((), problems)

    for c in D.cells:
        n = D.dim_of(c)
        if n < 0:
            problems.append(InvalidComplex(f"cell {c} has an empty flag"))
            continue
        for p in D.flags[c]:
            if p not in D.poset:
                problems.append(UnknownElement(f"cell {c} has unknown label {p!r}"))
        fs = D.faces[c]
        if n == 0:
            if fs:
                problems.append(InvalidComplex(f"0-cell {c} lists faces"))
            continue
        if len(fs) != n + 1:
            problems.append(InvalidComplex(f"{n}-cell {c} needs {n + 1} faces, got {len(fs)}"))
            continue
        for i, x in enumerate(fs):
            if D.dim_of(x) != n - 1:
                problems.append(InvalidComplex(f"face d_{i} of {n}-cell {c} is the {D.dim_of(x)}-cell {x}"))
    if problems:
        if strict:
            raise problems[0]
        return ValidationReport((), problems)

    for c in D.cells:
        n = D.dim_of(c)
        flag = D.flags[c]
        for a, b in zip(flag, flag[1:]):
            if a in D.poset and b in D.poset and not D.poset.leq(a, b):
                problems.append(FlagMismatch(f"flag of {c} is not weakly increasing"))
        if n == 0:
            continue
        fs = D.faces[c]
        for i, x in enumerate(fs):
            expected = flag[:i] + flag[i + 1:]
            if D.flags[x] != expected:
                problems.append(
                    FlagMismatch(f"d_{i}({c}) = {x} has flag {list(D.flags[x])}, expected {list(expected)}")
                )
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    lhs = D.faces[fs[j]][i]
                    rhs = D.faces[fs[i]][j - 1]
                    if lhs != rhs:
                        problems.append(
                            FaceIdentityViolation(
                                f"cell {c}: d_{i} d_{j} = {lhs} but d_{j - 1} d_{i} = {rhs}"
                            )
                        )
    if problems and strict:
        raise problems[0]
    return ValidationReport(D.cell_counts, problems)


@lru_cache(maxsize=None)
def _chains_to(top: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All chains of nonempty subsets of ``top`` ending at ``top``."""
    out = [(top,)]
    for k in range(1, len(top)):
        for sub in combinations(top, k):
            out.extend(c + (top,) for c in _chains_to(sub))
    return tuple(out)


def _chain_id(c: str, chain) -> str:
    return c + "@" + "_".join(".".join(str(i) for i in s) for s in chain)


def _canonical(D: DeltaComplex, c: str, chain) -> tuple[str, tuple]:
    top = chain[-1]
    if len(top) == D.dim_of(c) + 1:
        return c, tuple(chain)
    carrier = D.face_spanned(c, top)
    pos = {s: i for i, s in enumerate(top)}
    return carrier, tuple(tuple(pos[s] for s in S) for S in chain)


def delta_sd(D: DeltaComplex) -> DeltaComplex:
    """Barycentric subdivision with the last-vertex stratification."""
    validate(D)
    faces: dict[str, tuple[str, ...]] = {}
    flags: dict[str, tuple[str, ...]] = {}
    for c in D.cells:
        n = D.dim_of(c)
        flag = D.flags[c]
        for chain in _chains_to(tuple(range(n + 1))):
            cid = _chain_id(c, chain)
            flags[cid] = tuple(flag[S[-1]] for S in chain)
            if len(chain) == 1:
                continue
            fs = []
            for i in range(len(chain)):
                sub = chain[:i] + chain[i + 1:]
                fs.append(_chain_id(*_canonical(D, c, sub)))
            faces[cid] = tuple(fs)
    return DeltaComplex(D.poset, faces, flags)


def to_strat_complex(D: DeltaComplex) -> StratComplex:
    """The simplicial complex presented by ``D``; NotSimplicial if there is none."""
    validate(D)
    labels = {v: D.flags[v][0] for v in D.cells_of_dim(0)}
    seen: dict[frozenset, str] = {}
    tops = []
    for c in D.cells:
        verts = D.vertices_of(c)
        if len(set(verts)) != len(verts):
            raise NotSimplicial(f"cell {c} has repeated vertices {list(verts)}")
        key = frozenset(verts)
        if key in seen:
            raise NotSimplicial(f"cells {seen[key]} and {c} have the same vertex set {sorted(key)}")
        seen[key] = c
        tops.append(verts)
    return from_maximal(D.poset, labels, tops)


def flatten(D: DeltaComplex, max_subdivisions: int = 2) -> tuple[StratComplex, int]:
    """Subdivide until simplicial; returns the complex and the number of subdivisions."""
    for k in range(max_subdivisions + 1):
        try:
            return to_strat_complex(D), k
        except NotSimplicial:
            if k == max_subdivisions:
                raise
            D = delta_sd(D)
    raise AssertionError("unreachable")


def from_strat_complex(K: StratComplex) -> DeltaComplex:
    """View a simplicial complex as a Δ-complex, vertices ordered by label then id."""
    from .complex import ordered_vertices

    faces, flags = {}, {}
    name = {s: (s[0] if len(s) == 1 else "(" + ",".join(s) + ")") for s in K.simplices}
    for s in K.simplices:
        order = ordered_vertices(K, s)
        flags[name[s]] = tuple(K.labels[v] for v in order)
        if len(s) > 1:
            faces[name[s]] = tuple(
                name[tuple(sorted(order[:i] + order[i + 1:]))] for i in range(len(order))
            )
    return DeltaComplex(K.poset, faces, flags)


def check_standard_nbhd_system(D: DeltaComplex) -> list[str]:
    """Check that the canonical subdivision defines a standard neighborhood system.

    For every cell ``c`` and every label ``p``, each boundary simplex of
    ``sd(Δ^{J_c})`` lying in the p-standard neighborhood of ``Δ^{J_c}`` must
    land, after canonicalisation, on a cell of a strict precursor of ``c``
    that lies in that precursor's p-standard neighborhood.  Returns the list
    of violations (empty when the condition holds).
    """
    validate(D)
    P = D.poset

    def in_hood(flag, S, p) -> bool:
        labels = {flag[i] for i in S}
        return p in labels or all(P.lt(q, p) for q in labels)

    precursors: dict[str, set[str]] = {}
    for c in D.cells:
        acc = set()
        for x in D.faces[c]:
            acc.add(x)
            acc |= precursors[x]
        precursors[c] = acc

    problems = []
    for c in D.cells:
        n = D.dim_of(c)
        flag = D.flags[c]
        full = tuple(range(n + 1))
        for k in range(1, n + 1):
            for top in combinations(full, k):
                for chain in _chains_to(top):
                    carrier, canon = _canonical(D, c, chain)
                    cflag = D.flags[carrier]
                    for p in P.elements:
                        if not all(in_hood(flag, S, p) for S in chain):
                            continue
                        if carrier not in precursors[c]:
                            problems.append(f"{_chain_id(c, chain)} does not land on a precursor of {c}")
                        elif not all(in_hood(cflag, S, p) for S in canon):
                            problems.append(
                                f"{_chain_id(c, chain)} leaves the {p}-neighborhood of {carrier}"
                            )
    return problems


# --------------------------------------------------------------------------
# corpus


def pinched_torus() -> DeltaComplex:
    """The stratified pinched torus cell structure over 0 < 1 < 2.

    The square l-u-r-d with both diagonals; the diagonals cross at the
    1-stratum point m.  The corners l, r are the single 0-stratum point x,
    the corners u, d are the point y, the edges l-u and l-d are identified
    (edge a) and so are r-u and r-d (edge b).  The horizontal diagonal
    x-m-x is the 1-stratum, everything else the 2-stratum.
    """
    P = chain_poset("012")
    flags = {
        "x": ("0",), "m": ("1",), "y": ("2",),
        "a": ("0", "2"), "b": ("0", "2"),
        "lm": ("0", "1"), "rm": ("0", "1"),
        "um": ("1", "2"), "dm": ("1", "2"),
        "Tlu": ("0", "1", "2"), "Tld": ("0", "1", "2"),
        "Tru": ("0", "1", "2"), "Trd": ("0", "1", "2"),
    }
    faces = {
        "a": ("y", "x"), "b": ("y", "x"),
        "lm": ("m", "x"), "rm": ("m", "x"),
        "um": ("y", "m"), "dm": ("y", "m"),
        "Tlu": ("um", "a", "lm"), "Tld": ("dm", "a", "lm"),
        "Tru": ("um", "b", "rm"), "Trd": ("dm", "b", "rm"),
    }
    return DeltaComplex(P, faces, flags)


def loop() -> DeltaComplex:
    """A single 1-cell whose two ends are the same 0-cell."""
    P = chain_poset("0")
    return DeltaComplex(P, {"e": ("v", "v")}, {"v": ("0",), "e": ("0", "0")})


def cone_on_circle() -> StratComplex:
    """Cone over a triangle boundary; apex in stratum a, rim in stratum b."""
    P = chain_poset("ab")
    labels = {"c": "a", "r0": "b", "r1": "b", "r2": "b"}
    return from_maximal(P, labels, [("c", "r0", "r1"), ("c", "r1", "r2"), ("c", "r0", "r2")])


def suspension() -> StratComplex:
    """Suspension of a triangle boundary; the two poles in stratum a, the equator in b."""
    P = chain_poset("ab")
    labels = {"n": "a", "s": "a", "r0": "b", "r1": "b", "r2": "b"}
    tops = []
    for pole in "ns":
        tops += [(pole, "r0", "r1"), (pole, "r1", "r2"), (pole, "r0", "r2")]
    return from_maximal(P, labels, tops)


def cylinder() -> StratComplex:
    """Triangulated annulus over 0 < 1 < 2: bottom circle in stratum 1, top circle in 2."""
    P = chain_poset("012")
    labels = {f"b{i}": "1" for i in range(3)} | {f"t{i}": "2" for i in range(3)}
    tops = []
    for i in range(3):
        j = (i + 1) % 3
        tops += [(f"b{i}", f"b{j}", f"t{i}"), (f"b{j}", f"t{i}", f"t{j}")]
    return from_maximal(P, labels, tops)


def cone_012() -> StratComplex:
    """Cone over a triangle boundary over 0 < 1 < 2: apex 0, rim 1 (caps the cylinder)."""
    P = chain_poset("012")
    labels = {"c": "0", "b0": "1", "b1": "1", "b2": "1"}
    return from_maximal(P, labels, [("c", "b0", "b1"), ("c", "b1", "b2"), ("c", "b0", "b2")])


def circle() -> StratComplex:
    P = chain_poset("0")
    labels = {f"v{i}": "0" for i in range(3)}
    return from_maximal(P, labels, [("v0", "v1"), ("v1", "v2"), ("v0", "v2")])


def sphere() -> StratComplex:
    """Boundary of the 3-simplex."""
    return boundary_of_simplex(chain_poset("0"), ["0"] * 4)


def torus() -> StratComplex:
    """3x3 grid triangulation of the torus (9 vertices, 18 triangles)."""
    P = chain_poset("0")
    v = lambda i, j: f"v{i % 3}{j % 3}"
    labels = {v(i, j): "0" for i in range(3) for j in range(3)}
    tops = []
    for i in range(3):
        for j in range(3):
            tops += [(v(i, j), v(i + 1, j), v(i + 1, j + 1)), (v(i, j), v(i, j + 1), v(i + 1, j + 1))]
    return from_maximal(P, labels, tops)


def projective_plane() -> StratComplex:
    """Minimal 6-vertex triangulation of the real projective plane."""
    P = chain_poset("0")
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    labels = {f"v{i}": "0" for i in range(6)}
    return from_maximal(P, labels, [tuple(f"v{i}" for i in t) for t in tris])


CHAIN3 = chain_poset("012")

_NAMED = {
    "pinched_torus": pinched_torus,
    "loop": loop,
    "cone_on_circle": cone_on_circle,
    "suspension": suspension,
    "cylinder": cylinder,
    "cone_012": cone_012,
    "circle": circle,
    "sphere": sphere,
    "torus": torus,
    "projective_plane": projective_plane,
}


def corpus_names() -> list[str]:
    return sorted(_NAMED) + ["pinched_torus_flat", "stratified_simplex:<flag>", "boundary:<flag>"]


def corpus(name: str):
    """Named example complexes.

    ``stratified_simplex:0,1`` and ``boundary:0,0,2`` build Δ^J and ∂Δ^J over
    the chain 0 < 1 < 2; ``pinched_torus_flat`` is the pinched torus
    subdivided until simplicial.
    """
    if name in _NAMED:
        return _NAMED[name]()
    if name == "pinched_torus_flat":
        return flatten(pinched_torus())[0]
    kind, _, arg = name.partition(":")
    if kind in ("stratified_simplex", "boundary") and arg:
        flag = arg.split(",")
        if any(p not in CHAIN3 for p in flag):
            raise UnknownCorpusName(f"flag {arg!r} is not over the chain 0<1<2")
        build = stratified_simplex if kind == "stratified_simplex" else boundary_of_simplex
        return build(CHAIN3, flag)
    raise UnknownCorpusName(f"unknown corpus item {name!r}; known: {', '.join(corpus_names())}")


def pinched_torus_halves() -> tuple[StratComplex, StratComplex, list]:
    """The flattened pinched torus cut into the pieces over the left and right triangles.

    Returns the two pieces (sharing vertex ids) and the simplices they share.
    """
    D = delta_sd(pinched_torus())
    K = to_strat_complex(D)
    halves = {"l": [], "r": []}
    for c in D.cells_of_dim(2):
        halves[c[1]].append(D.vertices_of(c))
    left, right = (
        from_maximal(K.poset, {v: K.labels[v] for s in tops for v in s}, tops)
        for tops in (halves["l"], halves["r"])
    )
    shared = sorted(left.simplices & right.simplices)
    return left, right, shared


def pushout_corpus() -> dict[str, tuple]:
    """Gluing data ``(X, B, A, embed)`` with A a subcomplex of B and embed: A -> X."""
    out = {}
    P01 = chain_poset("01")
    X = stratified_simplex(P01, ["0", "1"], prefix="v")
    B = stratified_simplex(P01, ["0", "1"], prefix="w")
    out["edges_along_vertex"] = (X, B, Subcomplex(B, {("w0",)}), {"w0": "v0"})

    X, B = cone_on_circle(), cone_on_circle()
    rim = B.full_subcomplex(["r0", "r1", "r2"])
    out["suspension_from_cones"] = (X, B, rim, {v: v for v in rim.vertices})

    X, B = cylinder(), cone_012()
    rim = B.full_subcomplex(["b0", "b1", "b2"])
    out["cone_onto_cylinder"] = (X, B, rim, {v: v for v in rim.vertices})

    left, right, shared = pinched_torus_halves()
    A = Subcomplex(right, frozenset(shared))
    out["pinched_torus_halves"] = (left, right, A, {v: v for v in A.vertices})

    X = stratified_simplex(CHAIN3, ["0", "1", "2"], prefix="v")
    B = stratified_simplex(CHAIN3, ["0", "1", "2"], prefix="w")
    out["triangles_along_edge"] = (X, B, Subcomplex(B, {("w0",), ("w1",), ("w0", "w1")}), {"w0": "v0", "w1": "v1"})

    X = cone_on_circle()
    B = stratified_simplex(X.poset, ["a", "b"], prefix="e")
    out["disjoint_union"] = (X, B, Subcomplex(B, frozenset()), {})
    return out
