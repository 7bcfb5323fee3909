"""Stratified simplicial complexes over a finite poset.

A simplex is stored as the tuple of its vertex identifiers sorted as text.
Every face is stored explicitly.  Barycentric subdivision names the
barycenter of ``(a, b, c)`` as ``<a|b|c>``; the characters ``<``, ``>`` and
``|`` are reserved for this purpose.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    ChainViolation,
    CollapseError,
    LabelMismatch,
    NotEmbedding,
    NotSubcomplex,
    UnknownElement,
    UnknownSimplex,
    UnknownVertex,
)
from .flags import Flag
from .poset import Poset

Simplex = tuple  # sorted tuple of vertex ids

_FORBIDDEN = set(" \t\r\n#")


def simplex(vertices: Iterable) -> Simplex:
    return tuple(sorted(str(v) for v in vertices))


def barycenter_id(sigma: Simplex) -> str:
    return "<" + "|".join(sigma) + ">"


def _faces(sigma: Simplex):
    n = len(sigma)
    for k in range(1, n + 1):
        yield from combinations(sigma, k)


class StratComplex:
    """Abstract simplicial complex whose vertices carry labels in ``poset``.

    Use :func:`from_maximal` to build one from user data; the constructor
    trusts its input (face-closed, chain condition holds).
    """

    def __init__(self, poset: Poset, labels: Mapping[str, str], simplices: Iterable[Simplex]):
        self.poset = poset
        self.labels = dict(labels)
        self.simplices = frozenset(simplices)

    def __repr__(self):
        return f"StratComplex({self.f_vector}, labels={sorted(set(self.labels.values()))})"

    def __eq__(self, other):
        if not isinstance(other, StratComplex):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.labels == other.labels
            and self.simplices == other.simplices
        )

    def __hash__(self):
        return hash((self.poset, self.simplices))

    def __contains__(self, sigma) -> bool:
        return simplex(sigma) in self.simplices

    def __len__(self):
        return len(self.simplices)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.labels))

    @cached_property
    def by_dim(self) -> list[list[Simplex]]:
        """Simplices grouped by dimension, each group sorted."""
        groups = defaultdict(list)
        for s in self.simplices:
            groups[len(s) - 1].append(s)
        if not groups:
            return []
        return [sorted(groups[d]) for d in range(max(groups) + 1)]

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def maximal_simplices(self) -> list[Simplex]:
        covered = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(combinations(s, len(s) - 1))
        return sorted(s for s in self.simplices if s not in covered)

    def _check(self, sigma) -> Simplex:
        sigma = simplex(sigma)
        if sigma not in self.simplices:
            raise UnknownSimplex(f"{list(sigma)} is not a simplex of the complex")
        return sigma

    def labelset(self, sigma) -> frozenset[str]:
        return frozenset(self.labels[v] for v in sigma)

    def flag_of(self, sigma) -> Flag:
        return flag_of(self, sigma)

    def max_label(self, sigma) -> str:
        return max_label(self, sigma)

    def full_subcomplex(self, vertices: Iterable[str]) -> "Subcomplex":
        keep = set(vertices)
        return Subcomplex(
            self, frozenset(s for s in self.simplices if all(v in keep for v in s)), check=False
        )

    def strata_counts(self) -> dict[str, int]:
        """Number of open simplices in each stratum (stratum of σ = its max label)."""
        counts = {p: 0 for p in self.poset.elements}
        for s in self.simplices:
            counts[self.max_label(s)] += 1
        return counts


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A face-closed set of simplices of ``parent``."""

    parent: StratComplex
    simplices: frozenset
    check: bool = True

    def __post_init__(self):
        simplices = frozenset(simplex(s) for s in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        if self.check:
            missing = simplices - self.parent.simplices
            if missing:
                raise NotSubcomplex(f"{list(min(missing))} is not a simplex of the parent")
            for s in simplices:
                if len(s) > 1:
                    for f in combinations(s, len(s) - 1):
                        if f not in simplices:
                            raise NotSubcomplex(f"face {list(f)} of {list(s)} missing")

    def __eq__(self, other):
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.parent == other.parent and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, sigma):
        return simplex(sigma) in self.simplices

    @cached_property
    def vertices(self) -> frozenset[str]:
        return frozenset(s[0] for s in self.simplices if len(s) == 1)

    def complex(self) -> StratComplex:
        """The subcomplex as a standalone complex (same vertex ids and labels)."""
        labels = {v: self.parent.labels[v] for v in self.vertices}
        return StratComplex(self.parent.poset, labels, self.simplices)

    def __or__(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplices | other.simplices, check=False)

    def __and__(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplices & other.simplices, check=False)


def from_maximal(poset: Poset, labeled_vertices: Mapping, maximal_simplices: Iterable) -> StratComplex:
    """Face closure of ``maximal_simplices``; validates labels and the chain condition."""
    labels = {}
    for v, p in dict(labeled_vertices).items():
        v, p = str(v), str(p)
        if not v or _FORBIDDEN & set(v):
            raise ValueError(f"invalid vertex identifier {v!r}")
        if p not in poset:
            raise UnknownElement(f"vertex {v} has unknown label {p!r}")
        labels[v] = p
    simplices = set((v,) for v in labels)
    for top in maximal_simplices:
        top = simplex(top)
        if not top:
            continue
        if len(set(top)) != len(top):
            raise ValueError(f"repeated vertex in simplex {list(top)}")
        for v in top:
            if v not in labels:
                raise UnknownVertex(f"unknown vertex {v!r}")
        if not poset.is_chain(labels[v] for v in top):
            raise ChainViolation(
                f"simplex {list(top)} has incomparable labels "
                f"{sorted(set(labels[v] for v in top))}"
            )
        if top in simplices:
            continue
        simplices.update(_faces(top))
    return StratComplex(poset, labels, simplices)


def flag_of(K: StratComplex, sigma) -> Flag:
    sigma = K._check(sigma)
    return Flag(K.poset, tuple(K.labels[v] for v in ordered_vertices(K, sigma)))


def ordered_vertices(K: StratComplex, sigma: Simplex) -> list[str]:
    """Vertices of ``sigma`` sorted by label (then id); the order used by :func:`flag_of`."""
    P = K.poset
    return sorted(sigma, key=lambda v: (P.rank(K.labels[v]), v))


def max_label(K: StratComplex, sigma) -> str:
    sigma = K._check(sigma)
    return K.poset.max_of(K.labels[v] for v in sigma)


def restrict_le(K: StratComplex, p) -> StratComplex:
    """Full subcomplex on the vertices labelled ``<= p``; the closed subspace K_{<=p}."""
    p = str(p)
    if p not in K.poset:
        raise UnknownElement(f"unknown poset element {p!r}")
    keep = [v for v, q in K.labels.items() if K.poset.leq(q, p)]
    return K.full_subcomplex(keep).complex()


def barycentric_subdivision(K: StratComplex) -> StratComplex:
    """First barycentric subdivision with the last-vertex stratification."""
    P = K.poset
    names = {s: barycenter_id(s) for s in K.simplices}
    labels = {}
    for s in K.simplices:
        labels[names[s]] = P.max_of(K.labels[v] for v in s)

    # chains ending at s, memoised; each sd-simplex is produced once (by its top)
    memo: dict[Simplex, list[tuple[str, ...]]] = {}

    def ending_at(s: Simplex):
        got = memo.get(s)
        if got is not None:
            return got
        top = names[s]
        out = [(top,)]
        n = len(s)
        for k in range(1, n):
            for f in combinations(s, k):
                out.extend(c + (top,) for c in ending_at(f))
        memo[s] = out
        return out

    simplices = []
    for s in K.simplices:
        for chain in ending_at(s):
            simplices.append(tuple(sorted(chain)))
    return StratComplex(P, labels, simplices)


def sd_vertex_map(K: StratComplex, vertex_map: Mapping[str, str]) -> dict[str, str]:
    """Vertex map of sd(f) for a simplicial map f given on vertices: b(σ) -> b(f(σ))."""
    return {barycenter_id(s): barycenter_id(simplex(vertex_map[v] for v in s)) for s in K.simplices}


def image_simplices(simplices: Iterable[Simplex], vertex_map: Mapping[str, str]) -> set[Simplex]:
    return {simplex(vertex_map[v] for v in s) for s in simplices}


@dataclass(frozen=True, eq=False)
class GlueResult:
    """Pushout ``Y = X ∪_A B`` with the images of X, B and A inside Y."""

    Y: StratComplex
    X: Subcomplex
    B: Subcomplex
    A: Subcomplex
    b_vertex_map: dict


def glue(X: StratComplex, B: StratComplex, A: Subcomplex, embed: Mapping) -> GlueResult:
    """Glue ``B`` onto ``X`` along the subcomplex ``A`` of ``B`` via ``embed``.

    ``embed`` maps every vertex of ``A`` to a vertex of ``X``; it must be
    injective, label preserving and simplicial.  Vertices of ``B`` outside
    ``A`` keep their id unless it is taken in ``X``, in which case primes are
    appended until it is free.
    """
    if X.poset != B.poset:
        raise LabelMismatch("X and B are stratified over different posets")
    if A.parent is not B and A.parent != B:
        raise NotSubcomplex("A must be a subcomplex of B")
    embed = {str(a): str(x) for a, x in dict(embed).items()}
    a_vertices = set(A.vertices)
    if set(embed) != a_vertices:
        extra = sorted(set(embed) - a_vertices)
        missing = sorted(a_vertices - set(embed))
        raise NotEmbedding(f"embedding domain must be the vertices of A (missing {missing}, extra {extra})")
    if len(set(embed.values())) != len(embed):
        raise NotEmbedding("embedding is not injective")
    for a, x in embed.items():
        if x not in X.labels:
            raise NotEmbedding(f"{a} is sent to unknown vertex {x!r} of X")
        if B.labels[a] != X.labels[x]:
            raise LabelMismatch(f"{a} (label {B.labels[a]}) sent to {x} (label {X.labels[x]})")
    for s in A.simplices:
        img = simplex(embed[v] for v in s)
        if img not in X.simplices:
            raise NotEmbedding(f"simplex {list(s)} of A is not sent to a simplex of X")

    vmap = dict(embed)
    taken = set(X.labels)
    for v in sorted(B.labels):
        if v in vmap:
            continue
        fresh = v
        while fresh in taken:
            fresh += "'"
        taken.add(fresh)
        vmap[v] = fresh

    new = {}
    for s in B.simplices:
        if s in A.simplices:
            continue
        img = simplex(vmap[v] for v in s)
        if img in X.simplices:
            raise CollapseError(
                f"simplex {list(s)} of B outside A lands on the simplex {list(img)} of X"
            )
        new[s] = img

    labels = dict(X.labels)
    for v, w in vmap.items():
        labels[w] = B.labels[v]
    Y = StratComplex(X.poset, labels, X.simplices | set(new.values()))
    x_img = Subcomplex(Y, X.simplices, check=False)
    b_img = Subcomplex(Y, image_simplices(B.simplices, vmap), check=False)
    a_img = Subcomplex(Y, image_simplices(A.simplices, vmap), check=False)
    return GlueResult(Y, x_img, b_img, a_img, vmap)


def disjoint_union(K: StratComplex, L: StratComplex) -> StratComplex:
    empty = Subcomplex(L, frozenset())
    return glue(K, L, empty, {}).Y


def stratified_simplex(poset: Poset, flag, prefix: str = "v") -> StratComplex:
    """Δ^J as a complex, vertices ``v0..vn`` labelled by the entries of ``J``."""
    entries = [str(p) for p in flag]
    labels = {f"{prefix}{i}": p for i, p in enumerate(entries)}
    return from_maximal(poset, labels, [list(labels)])


def boundary_of_simplex(poset: Poset, flag, prefix: str = "v") -> StratComplex:
    """∂Δ^J: all proper faces of the stratified simplex."""
    entries = [str(p) for p in flag]
    labels = {f"{prefix}{i}": p for i, p in enumerate(entries)}
    names = list(labels)
    n = len(names)
    tops = [c for c in combinations(names, n - 1)] if n > 1 else []
    return from_maximal(poset, labels if n > 1 else {}, tops)
