from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratlink.complex import (
    Subcomplex,
    barycenter_id,
    barycentric_subdivision,
    flag_of,
    from_maximal,
    glue,
    max_label,
    restrict_le,
    sd_vertex_map,
    simplex,
    stratified_simplex,
)
from stratlink.errors import (
    ChainViolation,
    CollapseError,
    LabelMismatch,
    NotEmbedding,
    UnknownElement,
    UnknownSimplex,
    UnknownVertex,
)
from stratlink.poset import build_poset, chain_poset

from strategies import complexes

P01 = chain_poset("01")
P012 = chain_poset("012")


def chains_oracle(K):
    """sd(K) simplices by brute force: all chains in the face poset."""
    faces = sorted(K.simplices, key=len)
    out = set()

    def extend(chain):
        out.add(tuple(sorted(barycenter_id(s) for s in chain)))
        for t in faces:
            if len(t) > len(chain[-1]) and set(chain[-1]) < set(t):
                extend(chain + [t])

    for s in faces:
        extend([s])
    return out


def test_from_maximal_examples():
    K = from_maximal(P01, {"v0": 0, "v1": 1}, [["v0", "v1"]])
    assert len(K.simplices) == 3
    assert len(from_maximal(P01, {"v": 0}, []).simplices) == 1
    with pytest.raises(ChainViolation):
        from_maximal(build_poset("ab"), {"va": "a", "vb": "b"}, [["va", "vb"]])
    with pytest.raises(UnknownVertex):
        from_maximal(P01, {"v0": 0}, [["v0", "w"]])
    with pytest.raises(UnknownElement):
        from_maximal(P01, {"v0": 7}, [])


def test_flag_and_max_label():
    K = from_maximal(P012, {"a": 0, "b": 1, "c": 1, "d": 2}, [["a", "b", "c"], ["a", "d"]])
    assert flag_of(K, ["a", "b"]).entries == ("0", "1")
    assert flag_of(K, ["c", "a", "b"]).entries == ("0", "1", "1")
    assert flag_of(K, ["d"]).entries == ("2",)
    assert max_label(K, ["a", "b"]) == "1"
    assert max_label(K, ["a", "d"]) == "2"
    with pytest.raises(UnknownSimplex):
        flag_of(K, ["b", "d"])


def test_restrict_le_examples():
    K = stratified_simplex(P012, "012")
    assert restrict_le(K, 1) == stratified_simplex(P012, "01")
    assert len(restrict_le(stratified_simplex(P012, "12"), 0).simplices) == 0
    assert restrict_le(K, 2) == K


def test_subdivision_examples():
    sd = barycentric_subdivision(stratified_simplex(P01, "01"))
    assert sd.f_vector == (3, 2)
    assert sorted(sd.labels.values()) == ["0", "1", "1"]
    assert barycentric_subdivision(stratified_simplex(P01, "0")).f_vector == (1,)
    assert barycentric_subdivision(stratified_simplex(P012, "012")).f_vector == (7, 12, 6)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_subdivision_invariants(K):
    sd = barycentric_subdivision(K)
    assert sd.simplices == chains_oracle(K)
    assert sd.euler_characteristic() == K.euler_characteristic()
    P = K.poset
    for s in sd.simplices:
        labels = [sd.labels[v] for v in sorted(s, key=len)]
        assert all(P.leq(a, b) for a, b in zip(labels, labels[1:]))
    for p in P.elements:
        assert restrict_le(sd, p) == barycentric_subdivision(restrict_le(K, p))


@settings(max_examples=60, deadline=None)
@given(complexes(), st.data())
def test_subdivision_functorial_on_inclusions(K, data):
    keep = data.draw(st.lists(st.sampled_from(sorted(K.simplices)), max_size=4))
    sub = from_maximal(K.poset, {v: K.labels[v] for s in keep for v in s}, keep)
    f = {v: v for v in sub.labels}
    vmap = sd_vertex_map(sub, f)
    big = barycentric_subdivision(K)
    for s in barycentric_subdivision(sub).simplices:
        assert simplex(vmap[v] for v in s) in big.simplices


def test_glue_two_edges_along_vertex():
    X = stratified_simplex(P01, "01", prefix="v")
    B = stratified_simplex(P01, "01", prefix="w")
    G = glue(X, B, Subcomplex(B, {("w0",)}), {"w0": "v0"})
    assert G.Y.f_vector == (3, 2)
    assert G.X.simplices & G.B.simplices == G.A.simplices


def test_glue_collapse():
    X = stratified_simplex(P01, "01", prefix="v")
    B = stratified_simplex(P01, "01", prefix="w")
    A = Subcomplex(B, {("w0",), ("w1",)})
    with pytest.raises(CollapseError):
        glue(X, B, A, {"w0": "v0", "w1": "v1"})


def test_glue_errors():
    X = stratified_simplex(P01, "01", prefix="v")
    B = stratified_simplex(P01, "01", prefix="w")
    with pytest.raises(NotEmbedding):
        glue(X, B, Subcomplex(B, {("w0",), ("w1",)}), {"w0": "v0", "w1": "v0"})
    with pytest.raises(LabelMismatch):
        glue(X, B, Subcomplex(B, {("w0",)}), {"w0": "v1"})
    with pytest.raises(NotEmbedding):
        glue(X, B, Subcomplex(B, {("w0",)}), {"w0": "zz"})


def test_glue_empty_is_disjoint_union_with_fresh_ids():
    X = stratified_simplex(P01, "01")
    G = glue(X, X, Subcomplex(X, frozenset()), {})
    assert G.Y.f_vector == (4, 2)
    assert set(G.b_vertex_map.values()) == {"v0'", "v1'"}


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=5), complexes(max_vertices=5), st.data())
def test_glue_counts(X, B, data):
    # glue along a random full subcomplex of B mapped onto fresh copies inside X ∪ A
    verts = data.draw(st.lists(st.sampled_from(sorted(B.labels)), unique=True, max_size=3))
    A = B.full_subcomplex(verts)
    base = glue(X, A.complex(), Subcomplex(A.complex(), frozenset()), {})
    embed = base.b_vertex_map
    G = glue(base.Y, B, A, embed)
    assert len(G.Y.simplices) == len(base.Y.simplices) + len(B.simplices) - len(A.simplices)
    assert G.X.simplices | G.B.simplices == G.Y.simplices
    assert G.X.simplices & G.B.simplices == G.A.simplices
