from itertools import combinations_with_replacement

import pytest

from stratlink.errors import EmptyFlag, FlagNotRegular, UnknownElement
from stratlink.flags import (
    MODES,
    degenerates_from,
    make_flag,
    make_regular,
    restrict,
    underlying_regular,
)
from stratlink.poset import chain_poset

P = chain_poset("012")


def entries(J):
    return list(J.entries)


def test_restrict_examples():
    J = make_flag(P, "0012")
    assert entries(restrict(J, 1, "eq")) == ["1"]
    assert entries(restrict(J, 1, "le")) == ["0", "0", "1"]
    assert entries(restrict(J, 1, "not_le")) == ["2"]
    assert entries(restrict(make_flag(P, "002"), 1, "eq")) == []


def test_restrict_unknown_label():
    with pytest.raises(UnknownElement):
        restrict(make_flag(P, "01"), 9, "le")


def test_underlying_regular():
    assert entries(underlying_regular(make_flag(P, "00112"))) == ["0", "1", "2"]
    assert entries(underlying_regular(make_flag(P, "1"))) == ["1"]
    assert entries(underlying_regular(make_flag(P, "11"))) == ["1"]
    with pytest.raises(EmptyFlag):
        underlying_regular(make_flag(P, ""))


def test_degenerates_from():
    I02 = make_regular(P, "02")
    assert degenerates_from(make_flag(P, "002"), I02)
    assert not degenerates_from(make_flag(P, "012"), I02)
    assert degenerates_from(make_flag(P, "2"), make_regular(P, "2"))


def test_make_regular_rejects_bad_order():
    with pytest.raises(FlagNotRegular):
        make_regular(P, "10")
    with pytest.raises(FlagNotRegular):
        make_regular(P, "11")
    with pytest.raises(FlagNotRegular):
        make_flag(P, "20")


def all_flags(poset, max_len):
    for n in range(1, max_len + 1):
        for J in combinations_with_replacement(poset.elements, n):
            yield make_flag(poset, J)


def test_le_and_not_le_partition_the_flag():
    Q = chain_poset("0123")
    for J in all_flags(Q, 4):
        for p in Q.elements:
            low, high = restrict(J, p, "le"), restrict(J, p, "not_le")
            assert entries(low) + entries(high) == entries(J)


def test_restrict_idempotent():
    Q = chain_poset("0123")
    for J in all_flags(Q, 4):
        for p in Q.elements:
            for mode in MODES:
                once = restrict(J, p, mode)
                assert restrict(once, p, mode) == once


def test_chain_modes_coincide():
    Q = chain_poset("0123")
    for J in all_flags(Q, 4):
        for p in Q.elements:
            assert restrict(J, p, "not_le") == restrict(J, p, "gt")
            assert restrict(J, p, "not_lt") == restrict(J, p, "ge")


def test_not_le_keeps_incomparable_entries():
    from stratlink.poset import build_poset

    V = build_poset("abc", [("a", "b"), ("a", "c")])
    J = make_flag(V, "ac")
    assert entries(restrict(J, "b", "not_le")) == ["c"]
    assert entries(restrict(J, "b", "gt")) == []
