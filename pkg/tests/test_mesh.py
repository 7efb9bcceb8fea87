from fractions import Fraction

import pytest

from quadnet.mesh import (
    NoInteriorError,
    Triangulation,
    derive_network,
    edge_key,
    generate_grid,
    grid_id,
    unit_distance,
    validate,
)


def test_edge_key_is_order_free():
    assert edge_key("b", "a") == ("a", "b") == edge_key("a", "b")


def test_grid3_structure(grid3):
    assert len(grid3.vertices) == 9
    assert len(grid3.triangles) == 8
    assert [len(a) for a in grid3.arcs] == [1, 3, 1, 3]
    assert validate(grid3).ok


def test_grid3_network(grid3, grid3_net):
    net = grid3_net
    assert net.interior == frozenset({"1,1"})
    assert len(net.incident_edges) == 6
    assert set(net.vertex_boundary) == set(grid3.vertices) - {"1,1"}
    # k counts edges incident to the interior from each boundary vertex
    assert net.degree["0,1"] == 1
    assert net.degree["0,2"] == 0


def test_boundary_cycle_closed(grid5):
    cyc = grid5.boundary_cycle
    assert len(cyc) == len(set(cyc)) == 16
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert edge_key(a, b) in grid5.boundary_edges


def test_arcs_partition_boundary(grid7):
    cyc = set(grid7.boundary_cycle)
    arc_union = [v for arc in grid7.arcs for v in arc]
    assert sorted(arc_union) == sorted(cyc)
    assert len(arc_union) == len(set(arc_union))


def test_corners_default_to_arc_heads(grid5):
    for corner in grid5.corners:
        assert any(arc[0] == corner or arc[-1] == corner for arc in grid5.arcs)


def test_validate_rejects_degenerate_triangle(grid3):
    bad = Triangulation.build(
        grid3.vertices,
        grid3.triangles + (("0,0", "0,0", "1,1"),),
        grid3.arcs,
        grid3.corners,
        conductance=dict(grid3.conductance),
    )
    rep = validate(bad)
    assert not rep.ok
    assert any(v[0] == "triangle-vertices-distinct" for v in rep.violations)


def test_validate_rejects_nonpositive_conductance(grid3):
    cond = dict(grid3.conductance)
    cond[edge_key("0,0", "1,0")] = Fraction(0)
    bad = Triangulation.build(
        grid3.vertices, grid3.triangles, grid3.arcs, grid3.corners, conductance=cond
    )
    assert not validate(bad).ok


def test_validate_rejects_arc_order_swap(grid3):
    arcs = (grid3.arcs[0], grid3.arcs[2], grid3.arcs[1], grid3.arcs[3])
    bad = Triangulation.build(
        grid3.vertices,
        grid3.triangles,
        arcs,
        grid3.corners,
        conductance=dict(grid3.conductance),
    )
    assert not validate(bad).ok


def test_no_interior_raises():
    # one triangle: every vertex lies on the boundary cycle
    t = Triangulation.build(
        ("a", "b", "c"),
        (("a", "b", "c"),),
        (("a",), ("b",), ("c",), ()),
        ("a", "b", "c"),
    )
    with pytest.raises(NoInteriorError):
        derive_network(t)


def test_unit_distance_bfs(grid5):
    net = derive_network(grid5)
    graph = net.neighbors
    dist = unit_distance(graph, set(grid5.p1) | set(grid5.p3) | set(grid5.p4))
    assert dist[grid5.p1[0]] == 0
    assert dist[grid_id(2, 2)] == 2


@pytest.mark.parametrize("rule", ["bl-tr", "br-tl", "alternating"])
def test_generated_grids_validate(rule):
    for rows, cols in [(3, 4), (5, 5), (4, 7)]:
        t = generate_grid(rows, cols, rule)
        assert validate(t).ok, (rule, rows, cols)
        assert len(t.vertices) == rows * cols
        assert len(t.triangles) == 2 * (rows - 1) * (cols - 1)


def test_seeded_conductance_is_deterministic_and_bounded():
    a = generate_grid(5, 5, "bl-tr", seed=11)
    b = generate_grid(5, 5, "bl-tr", seed=11)
    assert dict(a.conductance) == dict(b.conductance)
    for c in a.conductance.values():
        assert Fraction(1, 10) <= c <= Fraction(10)


def test_grid_rejects_bad_rule():
    with pytest.raises(ValueError):
        generate_grid(4, 4, "nope")
