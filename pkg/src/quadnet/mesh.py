"""Triangulated topological quadrilaterals and their induced networks.

A quadrilateral here is a triangulated disk whose boundary cycle is split
into four vertex-disjoint arcs P1..P4 (cyclic order), with four corner
vertices, each stored in exactly one arc.  Deriving a network from a
triangulation singles out the interior vertex set F, the vertex boundary
|delta F| and the edge set incident to F, with a positive conductance on
every edge.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Edge = tuple[str, str]
Number = Union[Fraction, float]


class MeshError(Exception):
    """Invalid triangulation topology or data."""


class NoInteriorError(MeshError):
    """No interior vertex exists, so no boundary value problem can be posed."""


def edge_key(a: str, b: str) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[str, ...]
    triangles: tuple[tuple[str, str, str], ...]
    # arcs[0..3] are P1..P4; concatenated they traverse the boundary cycle.
    arcs: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...], tuple[str, ...]]
    corners: tuple[str, str, str, str]
    conductance: Mapping[Edge, Fraction]
    g: Fraction = Fraction(1)
    coords: Mapping[str, tuple[float, float]] | None = None

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        triangles: Iterable[Sequence[str]],
        arcs: Sequence[Sequence[str]],
        corners: Sequence[str],
        *,
        conductance: Mapping[Edge, Fraction] | None = None,
        default_conductance: Fraction = Fraction(1),
        g: Fraction = Fraction(1),
        coords: Mapping[str, tuple[float, float]] | None = None,
    ) -> "Triangulation":
        """Normalize raw data: canonical triangles, conductance on every edge."""
        verts = tuple(vertices)
        tris = tuple(tuple(sorted(t)) for t in triangles)
        edges = set()
        for t in tris:
            a, b, c = t
            edges.update((edge_key(a, b), edge_key(a, c), edge_key(b, c)))
        cond = {}
        overrides = dict(conductance or {})
        overrides = {edge_key(a, b): v for (a, b), v in overrides.items()}
        for e in edges:
            cond[e] = Fraction(overrides.get(e, default_conductance))
        if len(arcs) != 4:
            raise MeshError("exactly four arcs are required")
        return cls(
            vertices=verts,
            triangles=tris,
            arcs=tuple(tuple(a) for a in arcs),  # type: ignore[arg-type]
            corners=tuple(corners),  # type: ignore[arg-type]
            conductance=cond,
            g=Fraction(g),
            coords=dict(coords) if coords else None,
        )

    @cached_property
    def edges(self) -> frozenset[Edge]:
        out = set()
        for a, b, c in self.triangles:
            out.update((edge_key(a, b), edge_key(a, c), edge_key(b, c)))
        return frozenset(out)

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: tuple(sorted(n)) for v, n in adj.items()}

    @cached_property
    def boundary_edges(self) -> frozenset[Edge]:
        """Edges lying on exactly one triangle."""
        count: Counter[Edge] = Counter()
        for a, b, c in self.triangles:
            count.update((edge_key(a, b), edge_key(a, c), edge_key(b, c)))
        return frozenset(e for e, n in count.items() if n == 1)

    @cached_property
    def boundary_vertices(self) -> frozenset[str]:
        out = set()
        for a, b in self.boundary_edges:
            out.add(a)
            out.add(b)
        return frozenset(out)

    @cached_property
    def boundary_cycle(self) -> tuple[str, ...] | None:
        """The boundary as a single simple cycle, or None if it is not one."""
        adj: dict[str, list[str]] = {}
        for a, b in self.boundary_edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        if not adj or any(len(n) != 2 for n in adj.values()):
            return None
        start = min(adj)
        cycle = [start]
        prev, cur = None, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                return None
            prev, cur = cur, nxt[0]
            if cur == start:
                break
            if cur in cycle:
                return None
            cycle.append(cur)
        if len(cycle) != len(adj):
            return None
        return tuple(cycle)

    @property
    def p1(self) -> tuple[str, ...]:
        return self.arcs[0]

    @property
    def p2(self) -> tuple[str, ...]:
        return self.arcs[1]

    @property
    def p3(self) -> tuple[str, ...]:
        return self.arcs[2]

    @property
    def p4(self) -> tuple[str, ...]:
        return self.arcs[3]

    def with_g(self, g: Fraction) -> "Triangulation":
        return replace(self, g=Fraction(g))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[str, tuple, str], ...]


def _is_rotation(seq: tuple[str, ...], cycle: tuple[str, ...]) -> bool:
    if len(seq) != len(cycle):
        return False
    doubled = cycle + cycle
    rev = tuple(reversed(cycle))
    return any(
        doubled[i : i + len(seq)] == seq for i in range(len(cycle))
    ) or any((rev + rev)[i : i + len(seq)] == seq for i in range(len(cycle)))


def validate(t: Triangulation) -> ValidationReport:
    """Check every structural invariant; collect all violations, not just the first."""
    bad: list[tuple[str, tuple, str]] = []
    vset = set(t.vertices)

    for tri in t.triangles:
        if len(set(tri)) != 3:
            bad.append(("triangle-vertices-distinct", tri, "triangle has repeated vertices"))
        for v in tri:
            if v not in vset:
                bad.append(("unknown-vertex", (v,), f"triangle references unknown vertex {v!r}"))
    dupes = [tri for tri, n in Counter(t.triangles).items() if n > 1]
    for tri in dupes:
        bad.append(("duplicate-triangle", tri, "triangle declared more than once"))

    for arc in t.arcs:
        for v in arc:
            if v not in vset:
                bad.append(("unknown-vertex", (v,), f"arc references unknown vertex {v!r}"))
    for v in t.corners:
        if v not in vset:
            bad.append(("unknown-vertex", (v,), f"corner references unknown vertex {v!r}"))

    for e, c in t.conductance.items():
        if c <= 0:
            bad.append(("positive-conductance", e, f"conductance {c} on edge {e} is not positive"))
    if t.g <= 0:
        bad.append(("positive-g", (), f"Dirichlet constant g={t.g} is not positive"))

    cycle = t.boundary_cycle
    if cycle is None:
        bad.append(("boundary-single-cycle", (), "boundary edges do not form a single simple cycle"))

    arc_sets = [set(a) for a in t.arcs]
    for i in range(4):
        for j in range(i + 1, 4):
            common = arc_sets[i] & arc_sets[j]
            if common:
                bad.append(
                    ("arcs-disjoint", tuple(sorted(common)), f"arcs P{i+1} and P{j+1} share vertices")
                )
    union = set().union(*arc_sets)
    if union != set(t.boundary_vertices):
        missing = tuple(sorted(set(t.boundary_vertices) - union))
        extra = tuple(sorted(union - set(t.boundary_vertices)))
        bad.append(
            ("arcs-cover-boundary", missing + extra, "arc vertices do not coincide with the boundary vertices")
        )
    for i, arc in enumerate(t.arcs):
        if not arc:
            bad.append(("arc-nontrivial", (f"P{i+1}",), f"arc P{i+1} is empty"))
    if cycle is not None and all(t.arcs):
        concat = tuple(v for arc in t.arcs for v in arc)
        if len(concat) == len(set(concat)) and not _is_rotation(concat, cycle):
            bad.append(("arcs-cyclic-order", (), "concatenated arcs do not traverse the boundary cycle"))

    seen_corner = Counter(t.corners)
    for v, n in seen_corner.items():
        if n > 1:
            bad.append(("corner-distinct", (v,), f"corner {v!r} listed more than once"))
    for v in t.corners:
        owners = [i for i, s in enumerate(arc_sets) if v in s]
        if len(owners) != 1:
            bad.append(("corner-in-one-arc", (v,), f"corner {v!r} belongs to {len(owners)} arcs"))

    return ValidationReport(ok=not bad, violations=tuple(bad))


@dataclass(frozen=True)
class Network:
    """The network induced on the interior of a triangulated quadrilateral.

    ``neighbors`` applies the boundary convention: an interior vertex lists
    all its neighbors (they all lie in the closure), a boundary vertex lists
    only its interior neighbors.  Boundary vertices with no interior
    neighbor are retained with degree 0.
    """

    interior: frozenset[str]
    vertex_boundary: frozenset[str]
    incident_edges: frozenset[Edge]
    conductance: Mapping[Edge, Fraction]
    neighbors: Mapping[str, tuple[str, ...]]
    degree: Mapping[str, int]

    @cached_property
    def closure(self) -> frozenset[str]:
        return self.interior | self.vertex_boundary

    def c(self, a: str, b: str) -> Fraction:
        return self.conductance[edge_key(a, b)]


def derive_network(t: Triangulation) -> Network:
    boundary = t.boundary_vertices
    interior = frozenset(v for v in t.vertices if v not in boundary)
    if not interior:
        raise NoInteriorError("triangulation has no interior vertex")
    incident = frozenset(
        e for e in t.edges if e[0] in interior or e[1] in interior
    )
    neighbors: dict[str, tuple[str, ...]] = {}
    for v in sorted(interior):
        neighbors[v] = t.adjacency[v]
    for v in sorted(boundary):
        neighbors[v] = tuple(y for y in t.adjacency[v] if y in interior)
    degree = {v: len(n) for v, n in neighbors.items()}
    cond = {e: t.conductance[e] for e in incident}
    return Network(
        interior=interior,
        vertex_boundary=frozenset(boundary),
        incident_edges=incident,
        conductance=cond,
        neighbors=neighbors,
        degree=degree,
    )


def _adjacency_of(graph) -> Mapping[str, tuple[str, ...]]:
    if isinstance(graph, Triangulation):
        return graph.adjacency
    if isinstance(graph, Network):
        adj: dict[str, set[str]] = {v: set() for v in graph.closure}
        for a, b in graph.incident_edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: tuple(sorted(n)) for v, n in adj.items()}
    return graph


def unit_distance(graph, sources: Iterable[str]) -> dict[str, float]:
    """Multi-source breadth-first distance; unreachable vertices map to inf."""
    adj = _adjacency_of(graph)
    src = [s for s in sources if s in adj]
    if not src:
        raise ValueError("sources must be non-empty")
    dist: dict[str, float] = {v: math.inf for v in adj}
    queue = []
    for s in src:
        dist[s] = 0
        queue.append(s)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in adj[v]:
            if dist[w] == math.inf:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def grid_id(i: int, j: int) -> str:
    return f"{i},{j}"


DIAGONAL_RULES = ("bl-tr", "br-tl", "alternating")


def _cell_is_bl_tr(rule: str, i: int, j: int) -> bool:
    if rule == "bl-tr":
        return True
    if rule == "br-tl":
        return False
    # Alternating checkerboard; odd cells get the bottom-left diagonal so
    # that the middle row and column of an odd-sized grid admit thick paths.
    return (i + j) % 2 == 1


def generate_grid(
    rows: int,
    cols: int,
    diagonal_rule: str = "bl-tr",
    *,
    conductance: Fraction | int | None = None,
    seed: int | None = None,
    c_min: float = 0.1,
    c_max: float = 10.0,
    arc_split: tuple[int, int, int, int] | None = None,
    g: Fraction = Fraction(1),
) -> Triangulation:
    """Triangulated integer grid with the quadrilateral arc decomposition.

    Vertices sit at integer coordinates, ids ``"i,j"`` with ``i`` the column
    and ``j`` the row.  Each unit cell is split by the chosen diagonal.  By
    default the bottom row is P2, the right column interior P3, the top row
    P4 and the left column interior P1; the four geometric corners go to P2
    and P4.  With ``seed`` set, conductances are drawn log-uniformly from
    ``[c_min, c_max]``, deterministically in the seed.
    """
    if rows < 3 or cols < 3:
        raise ValueError("rows and cols must be at least 3")
    if diagonal_rule not in DIAGONAL_RULES:
        raise ValueError(f"unknown diagonal rule {diagonal_rule!r}")

    vertices = [grid_id(i, j) for j in range(rows) for i in range(cols)]
    coords = {grid_id(i, j): (float(i), float(j)) for j in range(rows) for i in range(cols)}
    triangles: list[tuple[str, str, str]] = []
    for j in range(rows - 1):
        for i in range(cols - 1):
            bl = grid_id(i, j)
            br = grid_id(i + 1, j)
            tl = grid_id(i, j + 1)
            tr = grid_id(i + 1, j + 1)
            if _cell_is_bl_tr(diagonal_rule, i, j):
                triangles.append((bl, br, tr))
                triangles.append((bl, tr, tl))
            else:
                triangles.append((bl, br, tl))
                triangles.append((br, tr, tl))

    # Boundary cycle from (0,0): bottom, right, top (right to left), left (down).
    cycle: list[str] = []
    cycle += [grid_id(i, 0) for i in range(cols)]
    cycle += [grid_id(cols - 1, j) for j in range(1, rows - 1)]
    cycle += [grid_id(i, rows - 1) for i in range(cols - 1, -1, -1)]
    cycle += [grid_id(0, j) for j in range(rows - 2, 0, -1)]

    if arc_split is None:
        s2, s3, s4, s1 = 0, cols, cols + rows - 2, 2 * cols + rows - 2
        p2 = tuple(cycle[s2:s3])
        p3 = tuple(cycle[s3:s4])
        p4 = tuple(cycle[s4:s1])
        p1 = tuple(cycle[s1:])
        corners = (
            grid_id(0, 0),
            grid_id(cols - 1, 0),
            grid_id(cols - 1, rows - 1),
            grid_id(0, rows - 1),
        )
    else:
        a, b, c, d = sorted(arc_split)
        if len({a, b, c, d}) != 4 or not (0 <= a and d < len(cycle)):
            raise ValueError("arc_split must be four distinct positions on the boundary cycle")
        rot = cycle[a:] + cycle[:a]
        b, c, d = b - a, c - a, d - a
        p2 = tuple(rot[:b])
        p3 = tuple(rot[b:c])
        p4 = tuple(rot[c:d])
        p1 = tuple(rot[d:])
        corners = (rot[0], rot[b], rot[c], rot[d])

    cond: dict[Edge, Fraction] | None = None
    if seed is not None:
        rng = random.Random(seed)
        edges = set()
        for a3, b3, c3 in triangles:
            edges.update((edge_key(a3, b3), edge_key(a3, c3), edge_key(b3, c3)))
        lo, hi = math.log(c_min), math.log(c_max)
        cond = {e: Fraction(math.exp(rng.uniform(lo, hi))) for e in sorted(edges)}

    default = Fraction(conductance) if conductance is not None else Fraction(1)
    return Triangulation.build(
        vertices,
        triangles,
        (p1, p2, p3, p4),
        corners,
        conductance=cond,
        default_conductance=default,
        g=g,
        coords=coords,
    )
