"""Thick paths: feasibility checking, shortest-path search, enumeration oracle
and the interior region cut off by a vertical path.

A vertical thick path runs from P3 to P1, a horizontal one from P2 to P4.
Interior vertices stay in F; all but the first and last interior vertex keep
unit distance > 1 from P1, P3 and P4; and the second (second-to-last) vertex
touches the reference boundary set only at the path's own endpoint.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .mesh import Network, Number, Triangulation
from .potential import GradientMetric


class NoThickPathError(Exception):
    """The feasible set of thick paths is empty for this orientation."""


class EnumerationGuardError(Exception):
    """Instance too large for exhaustive simple-path enumeration."""


class RegionError(Exception):
    """A supposedly thick vertical path does not cut off a valid region."""


@dataclass(frozen=True)
class ThickPath:
    vertices: tuple[str, ...]
    orientation: str  # "vertical" | "horizontal"
    length: float
    length_sq_terms: tuple[Number, ...]


@dataclass(frozen=True)
class Region:
    interior_vertices: frozenset[str]
    p1_part: tuple[str, ...]
    p3_part: tuple[str, ...]
    cut_path: ThickPath


def _role_sets(t: Triangulation, orientation: str, horizontal_variant: bool):
    """(start arc, end arc, deep-condition set, endpoint-uniqueness set)."""
    p1, p2, p3, p4 = (set(a) for a in t.arcs)
    away = p1 | p3 | p4
    if orientation == "vertical":
        return set(t.p3), set(t.p1), away, away
    if orientation == "horizontal":
        boundary = set(t.boundary_vertices)
        cond4 = boundary if horizontal_variant else away
        return set(t.p2), set(t.p4), cond4, boundary
    raise ValueError(f"unknown orientation {orientation!r}")


def path_length(metric: GradientMetric, path: Sequence[str]) -> float:
    """Integrate the metric along the path, endpoints included."""
    return sum(metric.rho[x] for x in path)


def check_thick(
    path: Sequence[str],
    orientation: str,
    t: Triangulation,
    net: Network,
    horizontal_variant: bool = False,
) -> tuple[bool, list[str]]:
    """Evaluate all five thickness conditions; returns every violated one."""
    if not path:
        raise ValueError("path must be non-empty")
    bad: list[str] = []
    start_arc, end_arc, cond4_set, cond5_set = _role_sets(t, orientation, horizontal_variant)
    adj = t.adjacency
    verts = list(path)
    n = len(verts) - 1

    if len(set(verts)) != len(verts) or any(
        verts[i + 1] not in adj[verts[i]] for i in range(n)
    ):
        bad.append("not-a-simple-path")
        return False, bad
    if n < 2:
        bad.append("too-short")
        return False, bad

    x0, xn = verts[0], verts[-1]
    pset = set(verts)
    if (
        x0 not in start_arc
        or xn not in end_arc
        or pset & start_arc != {x0}
        or pset & end_arc != {xn}
    ):
        bad.append("endpoints-on-arcs")
    if x0 in t.corners or xn in t.corners:
        bad.append("endpoint-not-corner")
    if any(v not in net.interior for v in verts[1:-1]):
        bad.append("interior-in-F")
    for i in range(2, n - 1):
        v = verts[i]
        if v in cond4_set or any(y in cond4_set for y in adj[v]):
            bad.append("deep-interior")
            break
    for probe, target in ((verts[1], x0), (verts[-2], xn)):
        touched = {y for y in adj[probe] if y in cond5_set}
        if touched != {target}:
            bad.append("unique-boundary-contact")
            break
    return not bad, bad


def _endpoint_roles(
    t: Triangulation, net: Network, orientation: str, horizontal_variant: bool
) -> tuple[dict[str, str], dict[str, str], frozenset[str]]:
    """Valid second vertices (mapped to their forced start), valid
    second-to-last vertices (mapped to their forced end), and the deep set."""
    start_arc, end_arc, cond4_set, cond5_set = _role_sets(t, orientation, horizontal_variant)
    corners = set(t.corners)
    adj = t.adjacency
    firsts: dict[str, str] = {}
    lasts: dict[str, str] = {}
    for v in sorted(net.interior):
        touched = sorted(y for y in adj[v] if y in cond5_set)
        if len(touched) != 1:
            continue
        anchor = touched[0]
        if anchor in corners:
            continue
        if anchor in start_arc:
            firsts[v] = anchor
        if anchor in end_arc:
            lasts[v] = anchor
    deep = frozenset(
        v
        for v in net.interior
        if v not in cond4_set and not any(y in cond4_set for y in adj[v])
    )
    return firsts, lasts, deep


def _better(a, b) -> bool:
    """Deterministic path order: length, then vertex count, then ids."""
    if a is None:
        return False
    if b is None:
        return True
    return (a[0], len(a[1]), a[1]) < (b[0], len(b[1]), b[1])


def shortest_thick_path(
    metric: GradientMetric,
    t: Triangulation,
    net: Network,
    orientation: str,
    horizontal_variant: bool = False,
) -> ThickPath:
    """Node-weighted shortest thick path via layered uniform-cost search.

    One search runs per admissible second vertex; intermediates are drawn
    from the deep set, so every settled tree path is automatically simple
    and thick.  Ties break toward fewer vertices, then lexicographic ids.
    """
    firsts, lasts, deep = _endpoint_roles(t, net, orientation, horizontal_variant)
    adj = t.adjacency
    rho = metric.rho
    best = None  # (length, vertex tuple)

    # One search per (second vertex, terminal) pair, with the terminal kept
    # out of the expandable set: settled tree paths then never touch it, so
    # simplicity needs no backtracking.
    for x1 in sorted(firsts):
        x0 = firsts[x1]
        for w in sorted(lasts):
            if w == x1:
                continue
            xn = lasts[w]
            mids = deep - {w}
            heap = [(rho[x0] + rho[x1], 2, (x0, x1), x1)]
            settled: set[str] = set()
            while heap:
                cost, nv, trail, v = heapq.heappop(heap)
                if v in settled:
                    continue
                settled.add(v)
                if w in adj[v]:
                    cand = (cost + rho[w] + rho[xn], trail + (w, xn))
                    if _better(cand, best):
                        best = cand
                for u in adj[v]:
                    if u in mids and u not in settled:
                        heapq.heappush(heap, (cost + rho[u], nv + 1, trail + (u,), u))

    if best is None:
        raise NoThickPathError(f"no {orientation} thick path exists")
    verts = best[1]
    ok, bad = check_thick(verts, orientation, t, net, horizontal_variant)
    if not ok:
        raise AssertionError(f"search produced a non-thick path {verts}: {bad}")
    return ThickPath(
        vertices=verts,
        orientation=orientation,
        length=path_length(metric, verts),
        length_sq_terms=tuple(metric.rho_sq[x] for x in verts),
    )


def enumerate_thick_paths(
    t: Triangulation,
    net: Network,
    orientation: str,
    metric: GradientMetric,
    max_vertices: int | None = None,
    guard: int = 30,
    horizontal_variant: bool = False,
) -> list[ThickPath]:
    """Exhaustive oracle: every simple path passing ``check_thick``.

    Depth-first over simple paths whose interior stays in F; any vertex that
    ends up at an index in the deep range must lie in the deep set, which
    keeps the search space finite in practice.  Final filtering is done by
    ``check_thick`` itself.  Refuses instances above ``guard`` vertices.
    """
    if len(t.vertices) > guard:
        raise EnumerationGuardError(
            f"instance has {len(t.vertices)} vertices; guard is {guard}"
        )
    if max_vertices is None:
        max_vertices = len(t.vertices)
    start_arc, end_arc, cond4_set, _ = _role_sets(t, orientation, horizontal_variant)
    _, _, deep = _endpoint_roles(t, net, orientation, horizontal_variant)
    adj = t.adjacency
    corners = set(t.corners)
    found: list[tuple[str, ...]] = []

    def extend(path: list[str], visited: set[str]) -> None:
        cur = path[-1]
        if len(path) + 1 <= max_vertices:
            for xn in adj[cur]:
                if xn in end_arc and xn not in corners and xn not in visited and len(path) >= 3:
                    cand = tuple(path) + (xn,)
                    ok, _bad = check_thick(cand, orientation, t, net, horizontal_variant)
                    if ok:
                        found.append(cand)
        if len(path) + 1 >= max_vertices:
            return
        # Appending another interior vertex turns the current tail vertex
        # into a middle vertex, which must then be deep.
        if len(path) - 1 >= 2 and cur not in deep:
            return
        for v in adj[cur]:
            if v in net.interior and v not in visited:
                visited.add(v)
                path.append(v)
                extend(path, visited)
                path.pop()
                visited.discard(v)

    for x0 in sorted(start_arc):
        if x0 in corners:
            continue
        for x1 in adj[x0]:
            if x1 in net.interior:
                extend([x0, x1], {x0, x1})

    paths = [
        ThickPath(
            vertices=p,
            orientation=orientation,
            length=path_length(metric, p),
            length_sq_terms=tuple(metric.rho_sq[x] for x in p),
        )
        for p in found
    ]
    paths.sort(key=lambda tp: (tp.length, len(tp.vertices), tp.vertices))
    return paths


def enclosed_region(t: Triangulation, net: Network, vertical_path: ThickPath) -> Region:
    """The interior region cut off by a thick vertical path on the P4 side.

    Flood-fills the interior minus the path's vertices and keeps the
    components whose closure meets P4; asserts that the result is non-empty
    and bounded only by the path, P4 and the induced sub-arcs of P1 and P3.
    """
    if vertical_path.orientation != "vertical":
        raise ValueError("enclosed_region requires a vertical path")
    cut = set(vertical_path.vertices)
    p1, p4 = set(t.p1), set(t.p4)
    p3 = set(t.p3)
    adj = t.adjacency
    free = net.interior - cut
    components: list[set[str]] = []
    remaining = set(free)
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    stack.append(w)
        components.append(comp)
    region: set[str] = set()
    for comp in components:
        if any(y in p4 for v in comp for y in adj[v]):
            region |= comp
    if not region:
        raise RegionError("no interior component touches P4: path does not separate")

    delta = set()
    for v in region:
        for y in adj[v]:
            if y not in region:
                delta.add(y)
    allowed = cut | p1 | p3 | p4
    stray = delta - allowed
    if stray:
        raise RegionError(f"region boundary leaks outside the expected arcs: {sorted(stray)}")
    x0, xn = vertical_path.vertices[0], vertical_path.vertices[-1]
    p1_part = tuple(v for v in t.p1 if v in delta or v == xn)
    p3_part = tuple(v for v in t.p3 if v in delta or v == x0)
    # Formal boundary = cut + P1(cut) + P4 + P3(cut); vertices with no
    # neighbor in the region are retained by convention with zero flux.
    formal = cut | set(p1_part) | p4 | set(p3_part)
    for v in formal - delta:
        if any(y in region for y in adj[v]):
            raise RegionError(f"vertex {v} unexpectedly missing from the region boundary")
    for v in delta - formal:
        raise RegionError(f"vertex {v} on the region boundary but not on the cut or arcs")
    return Region(
        interior_vertices=frozenset(region),
        p1_part=p1_part,
        p3_part=p3_part,
        cut_path=vertical_path,
    )
