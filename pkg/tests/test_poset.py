from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from stratlink.errors import CycleError, UnknownElement
from stratlink.poset import build_poset, chain_poset, count_regular_flags, leq, regular_flags

from strategies import posets


def test_transitive_closure():
    P = build_poset([0, 1, 2], [(0, 1), (1, 2)])
    assert leq(P, 0, 2)
    assert not leq(P, 2, 0)


def test_antichain():
    P = build_poset(["a", "b"], [])
    assert not leq(P, "a", "b") and not leq(P, "b", "a")
    assert regular_flags(P) == [("a",), ("b",)]


def test_cycle_rejected():
    with pytest.raises(CycleError):
        build_poset([0, 1], [(0, 1), (1, 0)])


def test_unknown_element():
    with pytest.raises(UnknownElement):
        build_poset([0, 1], [(0, 5)])
    P = chain_poset("01")
    with pytest.raises(UnknownElement):
        leq(P, "0", "7")


def test_full_relation_and_hasse_agree():
    P = build_poset("abc", [("a", "b"), ("b", "c")])
    Q = build_poset("abc", [("a", "b"), ("b", "c"), ("a", "c"), ("a", "a")])
    assert P == Q
    assert Q.hasse() == [("a", "b"), ("b", "c")]


def test_regular_flags_of_three_chain():
    P = chain_poset("012")
    assert regular_flags(P) == [
        ("0",), ("1",), ("2",), ("0", "1"), ("0", "2"), ("1", "2"), ("0", "1", "2")
    ]
    assert regular_flags(chain_poset("p")) == [("p",)]


@settings(max_examples=150, deadline=None)
@given(posets())
def test_leq_matches_graph_reachability(P):
    G = nx.DiGraph()
    G.add_nodes_from(P.elements)
    G.add_edges_from(P.hasse())
    closure = nx.transitive_closure_dag(G)
    for p in P.elements:
        for q in P.elements:
            assert P.leq(p, q) == (p == q or closure.has_edge(p, q))


@settings(max_examples=100, deadline=None)
@given(posets(max_size=6))
def test_regular_flags_are_exactly_the_chains(P):
    brute = set()
    for k in range(1, len(P) + 1):
        for sub in combinations(P.elements, k):
            if P.is_chain(sub):
                brute.add(tuple(P.sort_chain(sub)))
    flags = regular_flags(P)
    assert len(flags) == len(set(flags))
    assert set(flags) == brute
    assert count_regular_flags(P) == len(brute)
    for f in flags:
        assert all(P.lt(a, b) for a, b in zip(f, f[1:]))
    assert flags == sorted(flags, key=lambda f: (len(f), f))
