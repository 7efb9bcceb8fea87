"""Line-oriented ``.quadnet`` text format.

::

    quadnet 1
    vertex <id> [<x> <y>]
    triangle <id> <id> <id>
    arc P1 <id> <id> ...
    corner <id> <id> <id> <id>      # optional; defaults to each arc's first vertex
    conductance default <value>
    conductance <id> <id> <value>
    g <value>

Values are exact: ``p/q`` rationals or decimals (parsed as scaled
integers).  ``#`` starts a comment.
"""

from __future__ import annotations

from fractions import Fraction

from .mesh import Edge, Triangulation, edge_key


class QuadnetParseError(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _parse_value(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise QuadnetParseError(f"cannot parse numeric value {tok!r}", line) from None


def parse_quadnet(text: str) -> Triangulation:
    vertices: list[str] = []
    coords: dict[str, tuple[float, float]] = {}
    triangles: list[tuple[str, str, str]] = []
    arcs: dict[str, tuple[str, ...]] = {}
    corners: tuple[str, ...] | None = None
    overrides: dict[Edge, Fraction] = {}
    default_c = Fraction(1)
    g = Fraction(1)
    seen_header = False
    seen_triangles: set[tuple[str, str, str]] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        toks = stmt.split()
        kw = toks[0]
        if not seen_header:
            if kw != "quadnet" or len(toks) != 2 or toks[1] != "1":
                raise QuadnetParseError("expected header 'quadnet 1'", lineno)
            seen_header = True
            continue
        if kw == "vertex":
            if len(toks) not in (2, 4):
                raise QuadnetParseError("vertex takes an id and optional x y", lineno)
            vid = toks[1]
            if vid in vertices:
                raise QuadnetParseError(f"vertex {vid!r} declared twice", lineno)
            vertices.append(vid)
            if len(toks) == 4:
                try:
                    coords[vid] = (float(toks[2]), float(toks[3]))
                except ValueError:
                    raise QuadnetParseError("vertex coordinates must be numbers", lineno) from None
        elif kw == "triangle":
            if len(toks) != 4:
                raise QuadnetParseError("triangle takes exactly three vertex ids", lineno)
            tri = tuple(toks[1:4])
            for v in tri:
                if v not in vertices:
                    raise QuadnetParseError(f"unknown vertex {v!r} in triangle", lineno)
            key = tuple(sorted(tri))
            if key in seen_triangles:
                raise QuadnetParseError(f"duplicate triangle {tri}", lineno)
            seen_triangles.add(key)  # type: ignore[arg-type]
            triangles.append(tri)  # type: ignore[arg-type]
        elif kw == "arc":
            if len(toks) < 3 or toks[1] not in ("P1", "P2", "P3", "P4"):
                raise QuadnetParseError("arc takes P1..P4 and at least one vertex id", lineno)
            name = toks[1]
            if name in arcs:
                raise QuadnetParseError(f"arc {name} declared twice", lineno)
            for v in toks[2:]:
                if v not in vertices:
                    raise QuadnetParseError(f"unknown vertex {v!r} in arc {name}", lineno)
            arcs[name] = tuple(toks[2:])
        elif kw == "corner":
            if len(toks) != 5:
                raise QuadnetParseError("corner takes exactly four vertex ids", lineno)
            for v in toks[1:]:
                if v not in vertices:
                    raise QuadnetParseError(f"unknown vertex {v!r} in corner line", lineno)
            corners = tuple(toks[1:])
        elif kw == "conductance":
            if len(toks) == 3 and toks[1] == "default":
                default_c = _parse_value(toks[2], lineno)
                if default_c <= 0:
                    raise QuadnetParseError("default conductance must be positive", lineno)
            elif len(toks) == 4:
                a, b = toks[1], toks[2]
                for v in (a, b):
                    if v not in vertices:
                        raise QuadnetParseError(f"unknown vertex {v!r} in conductance", lineno)
                val = _parse_value(toks[3], lineno)
                if val <= 0:
                    raise QuadnetParseError(f"non-positive conductance on edge ({a}, {b})", lineno)
                overrides[edge_key(a, b)] = val
            else:
                raise QuadnetParseError("malformed conductance line", lineno)
        elif kw == "g":
            if len(toks) != 2:
                raise QuadnetParseError("g takes exactly one value", lineno)
            g = _parse_value(toks[1], lineno)
            if g <= 0:
                raise QuadnetParseError("g must be positive", lineno)
        else:
            raise QuadnetParseError(f"unknown keyword {kw!r}", lineno)

    if not seen_header:
        raise QuadnetParseError("missing 'quadnet 1' header", 1)
    missing = [n for n in ("P1", "P2", "P3", "P4") if n not in arcs]
    if missing:
        raise QuadnetParseError(f"missing arc declaration(s): {', '.join(missing)}")
    if corners is None:
        corners = tuple(arcs[n][0] for n in ("P1", "P2", "P3", "P4"))

    t = Triangulation.build(
        vertices,
        triangles,
        (arcs["P1"], arcs["P2"], arcs["P3"], arcs["P4"]),
        corners,
        conductance=overrides,
        default_conductance=default_c,
        g=g,
        coords=coords or None,
    )
    boundary = t.boundary_vertices
    arc_union = {v for arc in t.arcs for v in arc}
    if boundary - arc_union:
        raise QuadnetParseError(
            "arcs do not cover the boundary: missing "
            + ", ".join(sorted(boundary - arc_union))
        )
    return t


def _fmt_value(x: Fraction) -> str:
    return str(x)


def serialize_quadnet(t: Triangulation) -> str:
    """Inverse of :func:`parse_quadnet` up to comment/whitespace."""
    lines = ["quadnet 1"]
    for v in t.vertices:
        if t.coords and v in t.coords:
            x, y = t.coords[v]
            lines.append(f"vertex {v} {x!r} {y!r}")
        else:
            lines.append(f"vertex {v}")
    for tri in t.triangles:
        lines.append("triangle " + " ".join(tri))
    for name, arc in zip(("P1", "P2", "P3", "P4"), t.arcs):
        lines.append(f"arc {name} " + " ".join(arc))
    lines.append("corner " + " ".join(t.corners))
    # Most common conductance becomes the default to keep files small.
    counts: dict[Fraction, int] = {}
    for c in t.conductance.values():
        counts[c] = counts.get(c, 0) + 1
    default = max(sorted(counts, key=str), key=lambda c: counts[c]) if counts else Fraction(1)
    lines.append(f"conductance default {_fmt_value(default)}")
    for e in sorted(t.conductance):
        c = t.conductance[e]
        if c != default:
            lines.append(f"conductance {e[0]} {e[1]} {_fmt_value(c)}")
    lines.append(f"g {_fmt_value(t.g)}")
    return "\n".join(lines) + "\n"
