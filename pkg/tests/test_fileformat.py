import pytest
from hypothesis import given, settings

from stratlink.cells import corpus, delta_sd, pinched_torus
from stratlink.complex import barycentric_subdivision
from stratlink.errors import FaceIdentityViolation, ParseError
from stratlink.fileformat import (
    format_complex,
    format_delta_complex,
    parse_any,
    parse_complex,
    parse_delta_complex,
    parse_simplex_list,
    parse_vertex_map,
)

from strategies import complexes

EDGE = """# an edge
poset
0
1
rel 0 1
vertex v0 0   # the low vertex
vertex v1 1
simplex v0 v1
"""


def test_parse_edge():
    K = parse_complex(EDGE)
    assert K.f_vector == (2, 1)
    assert K.poset.leq("0", "1")


def test_empty_simplex_section():
    K = parse_complex("poset\n0\n")
    assert K.f_vector == ()


@pytest.mark.parametrize(
    "text, line",
    [
        ("poset\n0\nvertex v0 7\n", 3),
        ("poset\n0\nvertex v0 0\nvertex v0 0\n", 4),
        ("poset\n0\n1\nvertex a 0\nvertex b 1\nsimplex a b\n", 6),
        ("poset\n0\nvertex a 0\nsimplex a z\n", 4),
        ("poset\n0\nrel 0 9\n", 3),
        ("poset\n0\nfoo bar\n", 3),
    ],
)
def test_parse_errors_cite_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_complex(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}:")


def test_missing_poset():
    with pytest.raises(ParseError):
        parse_complex("vertex a 0\n")


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_round_trip(K):
    assert parse_complex(format_complex(K)) == K
    sd = barycentric_subdivision(K)
    assert parse_complex(format_complex(sd)) == sd


def test_round_trip_corpus():
    for name in ("cone_on_circle", "suspension", "pinched_torus_flat", "torus"):
        K = corpus(name)
        assert parse_any(format_complex(K)) == K


def test_delta_round_trip():
    for D in (pinched_torus(), delta_sd(pinched_torus())):
        E = parse_delta_complex(format_delta_complex(D))
        assert E.faces == D.faces and E.flags == D.flags


def test_delta_errors():
    text = "poset\n0\ncell 0 v : : 0\ncell 0 w : : 0\ncell 1 e : v w : 0 0\ncell 1 f : v w : 0 0\ncell 2 T : f e e : 0 0 0\n"
    with pytest.raises(FaceIdentityViolation):
        parse_any(text)
    with pytest.raises(ParseError):
        parse_any("poset\n0\ncell 1 e : v : 0 0\n")
    with pytest.raises(ParseError):
        parse_any("poset\n0\ncell 0 v : : 0 0\n")


def test_simplex_list_and_map():
    assert parse_simplex_list("simplex b a\n# c\nsimplex c\n") == [("a", "b"), ("c",)]
    assert parse_vertex_map("a x\nb y\n") == {"a": "x", "b": "y"}
    with pytest.raises(ParseError):
        parse_vertex_map("a x\na y\n")
    with pytest.raises(ParseError):
        parse_simplex_list("vertex a 0\n")
