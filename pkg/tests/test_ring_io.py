import pytest

from localtoric.errors import ParseError, ValidationError
from localtoric.ring_io import PRESETS, parse_ring, preset, serialize_ring

E3_RELATIONS = """p = 7
y = x y z
u = u v
[relations]
u^3 = x y^2 z^3
u v = x^2 y z^3
v^3 = x^5 y z^6
"""


@pytest.mark.parametrize("name", PRESETS)
def test_round_trip(name):
    d = preset(name)
    text = serialize_ring(d)
    again = parse_ring(text)
    assert serialize_ring(again) == text
    assert again.presentation().relation_polys == d.presentation().relation_polys


def test_relations_block_matches_bipartite():
    assert parse_ring(E3_RELATIONS).presentation().relation_polys == preset("e3").presentation().relation_polys
    assert parse_ring(E3_RELATIONS.encode()).kind() == "relations"


def test_with_prime():
    d = preset("e3").with_prime(11)
    assert d.p == 11 and d.presentation().p == 11


def test_regular_ring():
    pres = parse_ring("p = 5\ny = x y\n").presentation()
    assert list(pres.standard_monomials()) == [()]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("p = 7\nu = u\n[relations]\nu^3 = q\n", 4, 7),
        ("p = 7\n[relations]\nu^3 = x\n", 3, 1),
        ("p = 7\n[foo]\n", 2, 1),
        ("p = 7\nbogus\n", 2, 1),
        ("y = x\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_ring(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_validation_errors():
    with pytest.raises(ValidationError):
        parse_ring("p = 8\n")
    with pytest.raises(ValidationError):
        preset("nope")
    bad_family = "p = 7\nu = u v\n[family]\nm = 3\nalpha = 1 2 3\nalpha = 5 1 6\nbeta 1 2 = 2 1 3\nb 1 2 = 3\n"
    with pytest.raises(ValidationError) as info:
        parse_ring(bad_family)
    assert info.value.details.get("cause") == "constraint_violated"
