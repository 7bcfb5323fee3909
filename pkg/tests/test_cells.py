import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratlink.cells import (
    DeltaComplex,
    check_standard_nbhd_system,
    corpus,
    delta_sd,
    flatten,
    from_strat_complex,
    loop,
    pinched_torus,
    to_strat_complex,
    validate,
)
from stratlink.complex import restrict_le
from stratlink.errors import (
    FaceIdentityViolation,
    FlagMismatch,
    InvalidComplex,
    NotSimplicial,
    PrecursorCycle,
    UnknownCorpusName,
)
from stratlink.homology import homology
from stratlink.poset import chain_poset

P = chain_poset("012")


def triangle(identify=False):
    flags = {"a": ("0",), "b": ("1",), "c": ("2",), "ab": ("0", "1"), "bc": ("1", "2"), "ac": ("0", "2"),
             "T": ("0", "1", "2")}
    faces = {"ab": ("b", "a"), "bc": ("c", "b"), "ac": ("c", "a"), "T": ("bc", "ac", "ab")}
    return DeltaComplex(P, faces, flags)


def dunce_like():
    # one vertex, one loop edge, a triangle with all three edges the same loop
    Q = chain_poset("0")
    return DeltaComplex(Q, {"e": ("v", "v"), "T": ("e", "e", "e")},
                        {"v": ("0",), "e": ("0", "0"), "T": ("0", "0", "0")})


def test_validate_examples():
    assert validate(triangle()).ok
    D = DeltaComplex(chain_poset("0"), {"e": ("v", "w"), "f": ("v", "w"), "T": ("f", "e", "e")},
                     {"v": ("0",), "w": ("0",), "e": ("0", "0"), "f": ("0", "0"), "T": ("0", "0", "0")})
    # d0 d1 T = d0 e = v, d0 d0 T = d0 f = v; d0 d2 = d0 e = v vs d1 d0 = d1 f = w
    with pytest.raises(FaceIdentityViolation):
        validate(D)
    assert validate(dunce_like()).ok


def test_validate_flag_and_cycle_errors():
    D = triangle()
    bad = DeltaComplex(P, D.faces, {**D.flags, "ab": ("0", "2")})
    with pytest.raises(FlagMismatch):
        validate(bad)
    cyc = DeltaComplex(chain_poset("0"), {"e": ("f", "f"), "f": ("e", "e")}, {"e": ("0", "0"), "f": ("0", "0")})
    with pytest.raises(PrecursorCycle):
        validate(cyc)
    with pytest.raises(InvalidComplex):
        validate(DeltaComplex(P, {"e": ("v",)}, {"v": ("0",), "e": ("0", "0")}))
    report = validate(bad, strict=False)
    assert not report.ok and isinstance(report.problems[0], FlagMismatch)


def test_sd_edge_and_loop():
    edge = DeltaComplex(chain_poset("01"), {"e": ("w", "v")}, {"v": ("0",), "w": ("1",), "e": ("0", "1")})
    assert delta_sd(edge).cell_counts == (3, 2)
    assert delta_sd(loop()).cell_counts == (2, 2)
    with pytest.raises(NotSimplicial):
        to_strat_complex(loop())
    K = to_strat_complex(delta_sd(delta_sd(loop())))
    assert K.f_vector == (4, 4)
    assert homology(K).betti == (1, 1)


def test_sd_matches_simplicial_subdivision():
    from stratlink.complex import barycentric_subdivision

    for name in ("cone_on_circle", "stratified_simplex:0,1,2", "suspension"):
        K = corpus(name)
        D = from_strat_complex(K)
        assert to_strat_complex(D).simplices == K.simplices
        assert delta_sd(D).cell_counts == barycentric_subdivision(K).f_vector


def test_pinched_torus_structure():
    D = pinched_torus()
    assert validate(D).ok
    assert D.cell_counts == (3, 6, 4)
    assert [c for c in D.cells_of_dim(0) if D.flags[c] == ("0",)] == ["x"]
    S = delta_sd(D)
    # each 2-cell into 6, each 1-cell into 2, plus one new vertex per cell
    assert S.cell_counts == (3 + 6 + 4, 2 * 6 + 6 * 4, 6 * 4)
    K, k = flatten(D)
    assert k == 1
    assert homology(K, "rat").betti == (1, 1, 1)
    assert homology(K).betti == (1, 1, 1)
    assert homology(restrict_le(K, 1)).betti == (1, 1)
    assert restrict_le(K, 0).f_vector == (1,)


def test_corpus_names():
    assert corpus("cone_on_circle").f_vector == (4, 6, 3)
    assert corpus("stratified_simplex:0,1").f_vector == (2, 1)
    with pytest.raises(UnknownCorpusName):
        corpus("nope")
    with pytest.raises(UnknownCorpusName):
        corpus("boundary:0,7")


@pytest.mark.parametrize("D", [pinched_torus(), loop(), dunce_like(), triangle()], ids=["pt", "loop", "dunce", "tri"])
def test_euler_preserved_and_two_subdivisions_suffice(D):
    S = delta_sd(D)
    assert S.euler_characteristic() == D.euler_characteristic()
    assert validate(S).ok
    to_strat_complex(delta_sd(S))


@pytest.mark.parametrize("D", [pinched_torus(), loop(), dunce_like(), triangle()], ids=["pt", "loop", "dunce", "tri"])
def test_canonical_subdivision_is_neighborhood_system(D):
    assert check_standard_nbhd_system(D) == []


@st.composite
def delta_complexes(draw):
    labels = "012"
    Q = chain_poset(labels)
    nv = draw(st.integers(1, 3))
    vlab = sorted(draw(st.lists(st.sampled_from(labels), min_size=nv, max_size=nv)))
    flags = {f"v{i}": (p,) for i, p in enumerate(vlab)}
    faces = {}
    edges = []
    for k in range(draw(st.integers(0, 4))):
        i = draw(st.integers(0, nv - 1))
        j = draw(st.integers(i, nv - 1))
        e = f"e{k}"
        faces[e] = (f"v{j}", f"v{i}")
        flags[e] = (vlab[i], vlab[j])
        edges.append((e, i, j))
    for k in range(draw(st.integers(0, 3))):
        if not edges:
            break
        e2, i, j = draw(st.sampled_from(edges))
        nxt = [e for e in edges if e[1] == j]
        if not nxt:
            continue
        e0, _, l = draw(st.sampled_from(nxt))
        e1s = [e for e in edges if e[1] == i and e[2] == l]
        if not e1s:
            continue
        e1 = draw(st.sampled_from(e1s))[0]
        T = f"T{k}"
        faces[T] = (e0, e1, e2)
        flags[T] = (vlab[i], vlab[j], vlab[l])
    return DeltaComplex(Q, faces, flags)


@settings(max_examples=150, deadline=None)
@given(delta_complexes())
def test_random_delta_complexes(D):
    assert validate(D).ok
    S = delta_sd(D)
    assert validate(S).ok
    assert S.euler_characteristic() == D.euler_characteristic()
    K = to_strat_complex(delta_sd(S))
    assert K.euler_characteristic() == D.euler_characteristic()
    assert check_standard_nbhd_system(D) == []
