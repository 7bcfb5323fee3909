"""Exact rational point calculus on a realized stratified simplex |Δ^J|.

A point is a tuple of nonnegative fractions, one per entry of the flag J,
summing to 1.  For a label ``p`` the s-coordinates are block sums:

* ``s_p``     mass on entries equal to p,
* ``s_{≤p}``  mass on entries below or equal to p (``s_{<p}`` likewise),
* ``s_{¬≤p}`` mass on entries not below or equal to p (``s_{¬<p}`` likewise).

The t-coordinate is ``t_p = s_{¬≤p} / s_{¬<p}``; it is ``Undefined`` when
``s_{¬<p} = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateProjection,
    EmptyFlag,
    InvalidPLFunction,
    NotASubflagChain,
    OutsideNeighborhood,
)
from .flags import Flag, mode_predicate


def _q(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


class _UndefinedType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    __str__ = __repr__

    def __bool__(self):
        return False


Undefined = _UndefinedType()


@dataclass(frozen=True)
class SimplexPoint:
    flag: Flag
    coords: tuple

    def __post_init__(self):
        coords = tuple(_q(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != len(self.flag):
            raise ValueError(f"{len(coords)} coordinates for a flag of length {len(self.flag)}")
        if any(c < 0 for c in coords):
            raise ValueError("coordinates must be nonnegative")
        if sum(coords) != 1:
            raise ValueError(f"coordinates sum to {sum(coords)}, not 1")

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def point(flag: Flag, coords) -> SimplexPoint:
    return SimplexPoint(flag, tuple(coords))


@dataclass(frozen=True)
class PLFunction:
    """Piecewise linear φ: [0,1] -> [0,1] with φ(s) > 0 for s > 0."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        xs = tuple(_q(x) for x in self.breakpoints)
        ys = tuple(_q(y) for y in self.values)
        object.__setattr__(self, "breakpoints", xs)
        object.__setattr__(self, "values", ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise InvalidPLFunction("need matching breakpoints and values, at least two of each")
        if xs[0] != 0 or xs[-1] != 1:
            raise InvalidPLFunction("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise InvalidPLFunction("breakpoints must be strictly increasing")
        if any(y < 0 or y > 1 for y in ys):
            raise InvalidPLFunction("values must lie in [0,1]")
        if any(y <= 0 for y in ys[1:]):
            raise InvalidPLFunction("φ must be positive at every breakpoint s > 0")

    @classmethod
    def constant(cls, c=1) -> "PLFunction":
        return cls((0, 1), (c, c))

    def __call__(self, s) -> Fraction:
        s = _q(s)
        if s < 0 or s > 1:
            raise ValueError(f"φ is defined on [0,1], got {s}")
        xs, ys = self.breakpoints, self.values
        for k in range(len(xs) - 1):
            if s <= xs[k + 1]:
                a, b = xs[k], xs[k + 1]
                return ys[k] + (ys[k + 1] - ys[k]) * (s - a) / (b - a)
        return ys[-1]


ONE = PLFunction.constant(1)


def point_stratum(x: SimplexPoint) -> str:
    """Largest label carrying positive mass."""
    return max(
        (p for p, c in zip(x.flag.entries, x.coords) if c > 0),
        key=x.flag.poset.rank,
    )


def s_coord(x: SimplexPoint, p, mode: str) -> Fraction:
    keep = mode_predicate(x.flag.poset, p, mode)
    return sum((c for e, c in zip(x.flag.entries, x.coords) if keep(e)), Fraction(0))


def t_coord(x: SimplexPoint, p):
    bar = s_coord(x, p, "not_lt")
    if bar == 0:
        return Undefined
    return s_coord(x, p, "not_le") / bar


def in_phi_hood(x: SimplexPoint, p, phi: PLFunction = ONE) -> bool:
    """Whether ``s_{¬≤p}(x) <= φ(s_{¬<p}(x)) · s_p(x)``."""
    return s_coord(x, p, "not_le") <= phi(s_coord(x, p, "not_lt")) * s_coord(x, p, "eq")


def _blocks(entries: Sequence[str]) -> list[list[int]]:
    out: list[list[int]] = []
    for i, e in enumerate(entries):
        if out and entries[out[-1][0]] == e:
            out[-1].append(i)
        else:
            out.append([i])
    return out


def weighted_barycenter(J: Flag) -> SimplexPoint:
    """Block i < n gets mass 2^-(i+1), the last block 2^-n, split evenly within blocks."""
    if not len(J):
        raise EmptyFlag("weighted barycenter of the empty flag")
    blocks = _blocks(J.entries)
    n = len(blocks) - 1
    coords = [Fraction(0)] * len(J)
    for i, block in enumerate(blocks):
        w = Fraction(1, 2 ** (i + 1)) if i < n else Fraction(1, 2 ** n)
        for k in block:
            coords[k] = w / len(block)
    return SimplexPoint(J, tuple(coords))


def psi_eval(J: Flag, chain: Sequence[Sequence[int]], weights: Sequence) -> SimplexPoint:
    """Subdivision map on the sd-simplex spanned by a chain of faces of Δ^J.

    Each face is given by its (sorted) positions in J; the chain must be
    strictly increasing.  The result is the affine combination of the
    weighted barycenters of the faces, placed in the coordinates of J.
    """
    chain = [tuple(sorted(set(int(i) for i in S))) for S in chain]
    weights = [_q(w) for w in weights]
    if not chain:
        raise NotASubflagChain("empty chain")
    if len(weights) != len(chain):
        raise NotASubflagChain(f"{len(weights)} weights for a chain of {len(chain)} faces")
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise NotASubflagChain("weights must be nonnegative and sum to 1")
    for S in chain:
        if not S or S[0] < 0 or S[-1] >= len(J):
            raise NotASubflagChain(f"face {list(S)} is not a nonempty set of positions of J")
    for a, b in zip(chain, chain[1:]):
        if not (set(a) < set(b)):
            raise NotASubflagChain(f"{list(a)} is not strictly contained in {list(b)}")
    coords = [Fraction(0)] * len(J)
    for S, w in zip(chain, weights):
        sub = Flag(J.poset, tuple(J.entries[i] for i in S))
        b = weighted_barycenter(sub)
        for i, c in zip(S, b.coords):
            coords[i] += w * c
    return SimplexPoint(J, tuple(coords))


def rho(x: SimplexPoint, p) -> SimplexPoint:
    """Radial retraction onto the ``≤ p`` face: ``x_{≤p} / s_{≤p}``."""
    keep = mode_predicate(x.flag.poset, p, "le")
    m = s_coord(x, p, "le")
    if m == 0:
        raise DegenerateProjection(f"s_≤{p} vanishes at {x}")
    return SimplexPoint(x.flag, tuple(c / m if keep(e) else Fraction(0) for e, c in zip(x.flag.entries, x.coords)))


def rho_homotopy(x: SimplexPoint, p, t) -> SimplexPoint:
    """Straight-line deformation from x (t=0) to rho(x, p) (t=1) in block coordinates."""
    t = _q(t)
    if t < 0 or t > 1:
        raise ValueError("t must lie in [0,1]")
    keep = mode_predicate(x.flag.poset, p, "le")
    m = s_coord(x, p, "le")
    if m == 0:
        raise DegenerateProjection(f"s_≤{p} vanishes at {x}")
    new = (1 - t) * m + t
    rest = 1 - m
    coords = []
    for e, c in zip(x.flag.entries, x.coords):
        if keep(e):
            coords.append(c * new / m)
        else:
            coords.append(c * (1 - new) / rest if rest else Fraction(0))
    return SimplexPoint(x.flag, tuple(coords))


def aspire_eval(x: SimplexPoint, I: Flag, t: SimplexPoint) -> SimplexPoint:
    """The standard aspire ``Σ_{p ∈ I} t_p ρ^p(x)``.

    ``x`` must lie in the standard neighborhood of every entry of ``I``;
    ``t`` is a point of Δ^I.
    """
    if tuple(t.flag.entries) != tuple(I.entries):
        raise ValueError("t must be a point of the simplex of I")
    for p in I.entries:
        if not in_phi_hood(x, p):
            raise OutsideNeighborhood(f"{x} is not in the standard neighborhood of {p}")
    coords = [Fraction(0)] * len(x.flag)
    for p, w in zip(I.entries, t.coords):
        if w == 0:
            continue
        r = rho(x, p)
        for k, c in enumerate(r.coords):
            coords[k] += w * c
    return SimplexPoint(x.flag, tuple(coords))


def reparam_t(t, phi_value) -> Fraction:
    """``t ↦ t̃``: maps [0, 1/2] onto [0, φ/(1+φ)] and [1/2, 1] onto [φ/(1+φ), 1]."""
    t, f = _q(t), _q(phi_value)
    r = f / (1 + f)
    if t <= Fraction(1, 2):
        return 2 * t * r
    return 2 * t - 1 + (2 - 2 * t) * r


def phi_reparam(x: SimplexPoint, p, phi: PLFunction) -> SimplexPoint:
    """Move x inside its ``¬<p`` block so its t-coordinate becomes t̃."""
    P = x.flag.poset
    p = str(p)
    is_p = mode_predicate(P, p, "eq")
    above = mode_predicate(P, p, "not_le")
    bar = s_coord(x, p, "not_lt")
    if bar == 0 or not any(is_p(e) for e in x.flag.entries):
        return x
    t = s_coord(x, p, "not_le") / bar
    new_t = reparam_t(t, phi(bar))
    sp = s_coord(x, p, "eq")
    sa = s_coord(x, p, "not_le")
    coords = []
    for e, c in zip(x.flag.entries, x.coords):
        if is_p(e):
            coords.append(c * (1 - new_t) * bar / sp if sp else Fraction(0))
        elif above(e):
            coords.append(c * new_t * bar / sa if sa else Fraction(0))
        else:
            coords.append(c)
    return SimplexPoint(x.flag, tuple(coords))
