from fractions import Fraction

import pytest

from quadnet.io import QuadnetParseError, parse_quadnet, serialize_quadnet
from quadnet.mesh import generate_grid, validate

MINIMAL = """\
quadnet 1
# 3x3 unit grid, bl-tr diagonals
vertex a
vertex b
vertex c
vertex d
vertex m
triangle a b m
triangle b c m
triangle c d m
triangle d a m
arc P1 a
arc P2 b
arc P3 c
arc P4 d
conductance default 2
conductance a b 1/3
g 5/2
"""


def test_parse_minimal():
    t = parse_quadnet(MINIMAL)
    assert t.vertices == ("a", "b", "c", "d", "m")
    assert t.g == Fraction(5, 2)
    assert t.conductance[("a", "b")] == Fraction(1, 3)
    assert t.conductance[("a", "m")] == Fraction(2)
    assert t.arcs == (("a",), ("b",), ("c",), ("d",))
    assert t.corners == ("a", "b", "c", "d")


@pytest.mark.parametrize("rule", ["bl-tr", "alternating"])
def test_roundtrip_grid(rule):
    t = generate_grid(5, 4, rule, seed=7)
    back = parse_quadnet(serialize_quadnet(t))
    assert back.vertices == t.vertices
    assert sorted(back.triangles) == sorted(t.triangles)
    assert back.arcs == t.arcs
    assert back.corners == t.corners
    assert dict(back.conductance) == dict(t.conductance)
    assert back.g == t.g
    assert validate(back).ok


def test_roundtrip_preserves_coords():
    t = generate_grid(3, 3, "bl-tr")
    back = parse_quadnet(serialize_quadnet(t))
    assert back.coords == t.coords


@pytest.mark.parametrize(
    "mutation, fragment",
    [
        (("quadnet 1", "quadnet 2"), "header"),
        (("triangle a b m", "triangle a b z"), "unknown vertex"),
        (("triangle c d m", "triangle c d m\ntriangle d c m"), "duplicate triangle"),
        (("conductance a b 1/3", "conductance a b 0"), "non-positive conductance"),
        (("conductance a b 1/3", "conductance a b -2"), "non-positive conductance"),
        (("g 5/2", "g 0"), "g must be positive"),
        (("arc P4 d", ""), "missing arc"),
        (("arc P2 b", "arc P2 b\narc P2 b"), "declared twice"),
        (("vertex m", "vertex m\nvertex m"), "declared twice"),
        (("g 5/2", "g one"), "cannot parse numeric value"),
    ],
)
def test_parse_errors(mutation, fragment):
    old, new = mutation
    with pytest.raises(QuadnetParseError) as exc:
        parse_quadnet(MINIMAL.replace(old, new))
    assert fragment in str(exc.value)


def test_error_carries_line_number():
    with pytest.raises(QuadnetParseError) as exc:
        parse_quadnet(MINIMAL.replace("vertex c", "vertex"))
    assert exc.value.line == 5
    assert "line 5" in str(exc.value)


def test_arcs_must_cover_boundary():
    text = "\n".join(
        ["quadnet 1"]
        + [f"vertex {v}" for v in "abcdem"]
        + [f"triangle {p} {q} m" for p, q in zip("abcde", "bcdea")]
        + ["arc P1 a", "arc P2 b", "arc P3 c", "arc P4 d"]
    )
    with pytest.raises(QuadnetParseError, match="do not cover"):
        parse_quadnet(text)
