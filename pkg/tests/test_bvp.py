from fractions import Fraction

import pytest

from quadnet.bvp import (
    assemble,
    laplacian,
    residual_certificate,
    solve,
    solve_exact,
    solve_float,
)
from quadnet.mesh import derive_network, edge_key, generate_grid


def test_grid3_center_value(grid3, grid3_net):
    sol = solve(grid3_net, grid3.arcs, grid3.g, mode="exact")
    assert sol.values["1,1"] == Fraction(1, 2)
    assert sol.residual == 0


def test_grid3_center_harmonic_average(grid3_net):
    # with unit conductance the center satisfies 6u = a + b + 2 for boundary
    # data a on the left Neumann vertex, b on the right, 0 bottom, g=1 top
    sol = solve(grid3_net, ((("0,1",)), ("0,0", "1,0", "2,0"), ("2,1",), ("2,2", "1,2", "0,2")), 1, mode="exact")
    u = sol.values
    assert 6 * u["1,1"] == u["0,1"] + u["2,1"] + 2


def test_neumann_vertices_are_unknowns(grid5):
    net = derive_network(grid5)
    system = assemble(net, grid5.arcs, grid5.g)
    unknowns = set(system.unknowns)
    assert set(net.interior) <= unknowns
    for x in grid5.p1 + grid5.p3:
        if net.degree[x] >= 1:
            assert x in unknowns
    for x in grid5.p2 + grid5.p4:
        assert x not in unknowns


def test_solution_linear_in_g(grid5):
    net = derive_network(grid5)
    one = solve(net, grid5.arcs, 1, mode="exact")
    three = solve(net, grid5.arcs, Fraction(3), mode="exact")
    for x, v in one.values.items():
        assert three.values[x] == 3 * v


def test_solution_invariant_under_conductance_scaling():
    t = generate_grid(5, 5, "alternating", seed=2)
    scaled = t.build(
        t.vertices,
        t.triangles,
        t.arcs,
        t.corners,
        conductance={e: 7 * c for e, c in t.conductance.items()},
        g=t.g,
        coords=t.coords,
    )
    u = solve(derive_network(t), t.arcs, t.g, mode="exact").values
    v = solve(derive_network(scaled), scaled.arcs, scaled.g, mode="exact").values
    assert u == v


def test_float_matches_exact():
    t = generate_grid(7, 6, "br-tl", seed=9)
    net = derive_network(t)
    exact = solve(net, t.arcs, t.g, mode="exact")
    approx = solve(net, t.arcs, t.g, mode="float")
    for x, v in exact.values.items():
        assert abs(approx.values[x] - float(v)) < 1e-10


def test_certificates(grid7):
    net = derive_network(grid7)
    exact = solve(net, grid7.arcs, grid7.g, mode="exact")
    assert residual_certificate(exact, net, grid7.arcs) == 0
    approx = solve(net, grid7.arcs, grid7.g, mode="float")
    assert residual_certificate(approx, net, grid7.arcs) <= 1e-10


def test_perturbed_values_fail_certificate(grid7):
    net = derive_network(grid7)
    sol = solve(net, grid7.arcs, grid7.g, mode="float")
    values = dict(sol.values)
    values["3,3"] += 0.6
    broken = type(sol)(values=values, g=sol.g, mode="float", residual=sol.residual)
    assert residual_certificate(broken, net, grid7.arcs) > 0.1


def test_laplacian_zero_on_interior(grid7):
    net = derive_network(grid7)
    sol = solve(net, grid7.arcs, grid7.g, mode="exact")
    for x in net.interior:
        assert laplacian(sol.values, net, x) == 0


def test_maximum_principle_random_instances():
    for seed in range(4):
        t = generate_grid(6, 6, "alternating", seed=seed)
        net = derive_network(t)
        sol = solve(net, t.arcs, t.g, mode="exact")
        for v in sol.values.values():
            assert 0 <= v <= t.g


def test_exact_system_is_symmetric(grid5):
    net = derive_network(grid5)
    system = assemble(net, grid5.arcs, grid5.g)
    n = len(system.unknowns)
    for i in range(n):
        for j in range(n):
            assert system.matrix[i][j] == system.matrix[j][i]


def test_nonpositive_g_rejected(grid3, grid3_net):
    with pytest.raises(ValueError):
        assemble(grid3_net, grid3.arcs, 0)
