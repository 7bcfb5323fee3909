"""Finite posets of stratum labels.

Labels are opaque text tokens.  Anything passed in as a label is normalised
with ``str`` so ``leq(P, 0, 2)`` and ``leq(P, "0", "2")`` mean the same thing.
"""
from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable

from .errors import CycleError, UnknownElement


class Poset:
    """Reflexive-transitive closure of a finite relation, checked antisymmetric.

    Internally each element gets an index in sorted label order and the
    up-set of every element is kept as an int bitmask.
    """

    __slots__ = ("elements", "_index", "_up", "_down", "_rank", "_hash")

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple] = ()):
        labels = [str(e) for e in elements]
        if len(set(labels)) != len(labels):
            raise ValueError("poset elements must be distinct")
        self.elements: tuple[str, ...] = tuple(sorted(labels))
        self._index = {p: i for i, p in enumerate(self.elements)}
        n = len(self.elements)
        succ = [0] * n
        for pair in relations:
            p, q = pair
            i, j = self._idx(p), self._idx(q)
            succ[i] |= 1 << j

        # up[i] = everything reachable from i (including i)
        up = [None] * n
        for start in range(n):
            seen = 1 << start
            stack = [start]
            while stack:
                k = stack.pop()
                nxt = succ[k] & ~seen
                seen |= nxt
                while nxt:
                    low = nxt & -nxt
                    stack.append(low.bit_length() - 1)
                    nxt ^= low
            up[start] = seen
        for i in range(n):
            for j in range(i + 1, n):
                if (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise CycleError(
                        f"relation is not antisymmetric: {self.elements[i]} and "
                        f"{self.elements[j]} lie below each other"
                    )
        self._up = tuple(up)
        down = [0] * n
        for i in range(n):
            m = up[i]
            while m:
                low = m & -m
                down[low.bit_length() - 1] |= 1 << i
                m ^= low
        self._down = tuple(down)
        self._rank = {p: bin(down[i]).count("1") - 1 for i, p in enumerate(self.elements)}
        self._hash = None

    def _idx(self, p) -> int:
        try:
            return self._index[str(p)]
        except KeyError:
            raise UnknownElement(f"unknown poset element {p!r}") from None

    def __contains__(self, p) -> bool:
        return str(p) in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self._up))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)}, {self.hasse()})"

    def leq(self, p, q) -> bool:
        return bool((self._up[self._idx(p)] >> self._idx(q)) & 1)

    def lt(self, p, q) -> bool:
        return str(p) != str(q) and self.leq(p, q)

    def comparable(self, p, q) -> bool:
        return self.leq(p, q) or self.leq(q, p)

    def relation(self) -> set[tuple[str, str]]:
        """The closed relation as a set of pairs ``(p, q)`` with ``p <= q``."""
        out = set()
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                if (self._up[i] >> j) & 1:
                    out.add((p, q))
        return out

    def hasse(self) -> list[tuple[str, str]]:
        """Covering pairs, sorted; the minimal relation generating the order."""
        out = []
        for i, p in enumerate(self.elements):
            strict = self._up[i] & ~(1 << i)
            for j, q in enumerate(self.elements):
                if not (strict >> j) & 1:
                    continue
                between = strict & self._down[j] & ~(1 << j)
                if not between:
                    out.append((p, q))
        return out

    def rank(self, p) -> int:
        """Number of elements strictly below ``p``; strictly monotone along chains."""
        try:
            return self._rank[p]
        except KeyError:
            return self._rank[self.elements[self._idx(p)]]

    def is_chain(self, labels: Iterable) -> bool:
        labels = list(labels)
        return all(self.comparable(a, b) for a, b in combinations(labels, 2))

    def sort_chain(self, labels: Iterable) -> list[str]:
        """Sort pairwise comparable labels increasingly (ties kept in input order)."""
        labels = [str(p) for p in labels]
        # number of elements strictly below is a linear extension
        return sorted(labels, key=self.rank)

    def max_of(self, labels: Iterable) -> str:
        """Maximum of a nonempty chain."""
        return self.sort_chain(labels)[-1]

    def below(self, p) -> tuple[str, ...]:
        m = self._down[self._idx(p)]
        return tuple(q for k, q in enumerate(self.elements) if (m >> k) & 1)

    def above(self, p) -> tuple[str, ...]:
        m = self._up[self._idx(p)]
        return tuple(q for k, q in enumerate(self.elements) if (m >> k) & 1)


def build_poset(elements, relations=()) -> Poset:
    """Build a poset from Hasse pairs or a full relation; the closure is recomputed."""
    return Poset(elements, relations)


def chain_poset(labels) -> Poset:
    """Total order on ``labels`` in the given order."""
    labels = [str(p) for p in labels]
    return Poset(labels, zip(labels, labels[1:]))


def leq(P: Poset, p, q) -> bool:
    return P.leq(p, q)


def regular_flags(P: Poset) -> list[tuple[str, ...]]:
    """All nonempty chains of ``P`` as strictly increasing tuples.

    Ordered by length, then lexicographically on label text.
    """
    n = len(P.elements)
    by_len: list[list[tuple[str, ...]]] = [[] for _ in range(n + 1)]

    # extend chains upward by strictly larger elements; each chain is found once
    def grow(chain: list[int], top_up: int):
        by_len[len(chain)].append(chain)
        for j in range(n):
            if (top_up >> j) & 1 and j != chain[-1]:
                grow(chain + [j], P._up[j])

    for i in range(n):
        grow([i], P._up[i])
    out = []
    for level in by_len:
        flags = [P.sort_chain(P.elements[k] for k in chain) for chain in level]
        out.extend(sorted(tuple(f) for f in flags))
    return out


def count_regular_flags(P: Poset) -> int:
    """Number of nonempty chains, by dynamic programming (no enumeration)."""
    order = sorted(range(len(P.elements)), key=lambda i: -bin(P._up[i]).count("1"))
    # chains starting at i = 1 + sum over strict successors
    starting = {}
    for i in reversed(order):
        total = 1
        m = P._up[i] & ~(1 << i)
        while m:
            low = m & -m
            total += starting[low.bit_length() - 1]
            m ^= low
        starting[i] = total
    return sum(starting.values())
