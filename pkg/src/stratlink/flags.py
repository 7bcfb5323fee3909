"""Flags (weakly increasing label sequences) and their restrictions."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyFlag, FlagNotRegular, UnknownElement
from .poset import Poset

MODES = ("eq", "le", "lt", "ge", "gt", "not_le", "not_lt")


def mode_predicate(P: Poset, p, mode: str):
    """Return ``e -> bool`` testing label ``e`` against ``p`` under ``mode``."""
    p = str(p)
    if p not in P:
        raise UnknownElement(f"unknown poset element {p!r}")
    if mode == "eq":
        return lambda e: e == p
    if mode == "le":
        return lambda e: P.leq(e, p)
    if mode == "lt":
        return lambda e: e != p and P.leq(e, p)
    if mode == "ge":
        return lambda e: P.leq(p, e)
    if mode == "gt":
        return lambda e: e != p and P.leq(p, e)
    if mode == "not_le":
        return lambda e: not P.leq(e, p)
    if mode == "not_lt":
        return lambda e: not (e != p and P.leq(e, p))
    raise ValueError(f"unknown restriction mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class Flag:
    """A weakly increasing sequence of pairwise comparable labels of ``poset``.

    The empty flag is allowed; it shows up as a restriction of a flag to
    labels it does not contain.
    """

    poset: Poset
    entries: tuple[str, ...]

    def __post_init__(self):
        entries = tuple(str(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        for e in entries:
            if e not in self.poset:
                raise UnknownElement(f"unknown poset element {e!r}")
        for a, b in zip(entries, entries[1:]):
            if not self.poset.leq(a, b):
                raise FlagNotRegular(f"flag entries not weakly increasing: {a} then {b}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "[" + ",".join(self.entries) + "]"

    @property
    def is_regular(self) -> bool:
        return all(a != b for a, b in zip(self.entries, self.entries[1:]))

    def labels(self) -> frozenset[str]:
        return frozenset(self.entries)

    def max(self) -> str:
        if not self.entries:
            raise EmptyFlag("empty flag has no maximum")
        return self.entries[-1]

    def restrict(self, p, mode: str) -> "Flag":
        return restrict(self, p, mode)


class RegularFlag(Flag):
    """A flag with strictly increasing entries, i.e. an element of sd(P)."""

    def __post_init__(self):
        super().__post_init__()
        if not self.entries:
            raise EmptyFlag("a regular flag is nonempty")
        if not self.is_regular:
            raise FlagNotRegular(f"flag {self} has repeated entries")


def make_flag(P: Poset, entries) -> Flag:
    return Flag(P, tuple(entries))


def make_regular(P: Poset, entries) -> RegularFlag:
    """Regular flag from labels given in increasing order.

    Raises FlagNotRegular for decreasing, repeated or incomparable entries.
    """
    entries = tuple(str(e) for e in entries)
    for a, b in zip(entries, entries[1:]):
        if a == b or not P.leq(a, b):
            raise FlagNotRegular(f"{list(entries)} is not strictly increasing in the poset")
    return RegularFlag(P, entries)


def restrict(J: Flag, p, mode: str) -> Flag:
    """Maximal subflag of ``J`` whose entries satisfy ``mode`` against ``p``."""
    keep = mode_predicate(J.poset, p, mode)
    return Flag(J.poset, tuple(e for e in J.entries if keep(e)))


def underlying_regular(J: Flag) -> RegularFlag:
    if not J.entries:
        raise EmptyFlag("empty flag has no underlying regular flag")
    out = [J.entries[0]]
    for e in J.entries[1:]:
        if e != out[-1]:
            out.append(e)
    return RegularFlag(J.poset, tuple(out))


def degenerates_from(J: Flag, I: Flag) -> bool:
    return underlying_regular(J).entries == tuple(I.entries)
