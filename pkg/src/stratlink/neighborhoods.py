"""Standard neighborhoods, simplicial links and stratum models inside sd(K).

Every construction here is a full subcomplex of the barycentric subdivision
spanned by barycenters ``b(σ)`` selected by a condition on the label set of
``σ``.  Because barycenters are named canonically, these subcomplexes can be
compared as plain simplex sets.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Callable

from .complex import StratComplex, Subcomplex, barycenter_id, barycentric_subdivision
from .errors import EmptyFlag, UnknownElement
from .flags import RegularFlag, make_regular
from .poset import regular_flags

_SD_CACHE: "weakref.WeakKeyDictionary[StratComplex, StratComplex]" = weakref.WeakKeyDictionary()


def subdivision(K: StratComplex) -> StratComplex:
    """sd(K), memoised per complex."""
    sd = _SD_CACHE.get(K)
    if sd is None:
        sd = barycentric_subdivision(K)
        _SD_CACHE[K] = sd
    return sd


def _flag(K: StratComplex, I) -> RegularFlag:
    if isinstance(I, RegularFlag):
        if I.poset != K.poset:
            raise UnknownElement("flag is over a different poset")
        return I
    entries = tuple(str(p) for p in I)
    if not entries:
        raise EmptyFlag("a regular flag is nonempty")
    for p in entries:
        if p not in K.poset:
            raise UnknownElement(f"unknown poset element {p!r}")
    return make_regular(K.poset, entries)


def _label(K: StratComplex, p) -> str:
    p = str(p)
    if p not in K.poset:
        raise UnknownElement(f"unknown poset element {p!r}")
    return p


def _spanned(K: StratComplex, keep: Callable[[frozenset], bool]) -> Subcomplex:
    sd = subdivision(K)
    verts = [barycenter_id(s) for s in K.simplices if keep(K.labelset(s))]
    return sd.full_subcomplex(verts)


def sim_stan_hood(K: StratComplex, p) -> Subcomplex:
    """S_p: barycenters of simplices whose labels contain p or all lie below p."""
    p = _label(K, p)
    P = K.poset
    return _spanned(K, lambda L: p in L or all(P.lt(q, p) for q in L))


def stan_hood_flag(K: StratComplex, I) -> Subcomplex:
    """S_I: intersection of the S_p over the entries p of I."""
    I = _flag(K, I)
    P = K.poset

    def keep(L):
        return all(p in L or all(P.lt(q, p) for q in L) for p in I.entries)

    return _spanned(K, keep)


def simplicial_link(K: StratComplex, I) -> Subcomplex:
    """Link_I: barycenters of simplices whose label set is exactly the set of I."""
    I = _flag(K, I)
    target = frozenset(I.entries)
    return _spanned(K, lambda L: L == target)


def stratum_ge_model(K: StratComplex, p) -> StratComplex:
    """Full subcomplex of sd(K) on barycenters of simplices with max label >= p.

    It is a deformation retract of the open part of |K| lying over ``>= p``.
    """
    p = _label(K, p)
    P = K.poset
    return _spanned(K, lambda L: any(P.leq(p, q) for q in L)).complex()


@dataclass(frozen=True, eq=False)
class HolinkModel:
    flag: RegularFlag
    complex: StratComplex
    provenance: dict = field(default_factory=dict)


def holink_model(K: StratComplex, I) -> HolinkModel:
    """The ``>= max(I)`` model of the standard neighborhood S_I."""
    I = _flag(K, I)
    hood = stan_hood_flag(K, I)
    model = stratum_ge_model(hood.complex(), I.max())
    provenance = {
        "neighborhood": "stan_hood_flag",
        "neighborhood_f_vector": hood.complex().f_vector,
        "model": f"stratum_ge_model(p={I.max()})",
    }
    return HolinkModel(I, model, provenance)


@dataclass(frozen=True, eq=False)
class ComplementDiagram:
    """Holink models indexed by regular flags, with their structure inclusions.

    ``inclusions`` lists pairs ``(I, I')`` where ``I'`` is I with one entry
    removed and the model of ``I`` is a subcomplex of the model of ``I'``.
    ``failures`` lists the pairs for which that containment does not hold.
    """

    models: dict
    inclusions: list
    failures: list

    def __getitem__(self, I):
        return self.models[tuple(str(p) for p in I)]

    def __iter__(self):
        return iter(self.models)

    def __len__(self):
        return len(self.models)


def regular_complement_diagram(K: StratComplex) -> ComplementDiagram:
    models = {I: holink_model(K, I) for I in regular_flags(K.poset)}
    inclusions, failures = [], []
    for I, m in models.items():
        if len(I) < 2:
            continue
        for k in range(len(I)):
            J = I[:k] + I[k + 1:]
            if m.complex.simplices <= models[J].complex.simplices:
                inclusions.append((I, J))
            else:
                failures.append((I, J))
    return ComplementDiagram(models, inclusions, failures)
