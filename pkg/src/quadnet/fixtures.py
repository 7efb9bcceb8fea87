"""Reference instances with independently known solutions.

``wheel17`` is a 17-vertex quadrilateral whose mixed boundary value problem
has a closed-form rational solution: a central vertex ``X`` of degree 8, a
ring ``C1, T, C2, L, C3, S, C4, Y`` around it, three Dirichlet vertices on
each of the bottom (value 0) and top (value g) arcs, and one Neumann vertex
on each side arc.  The adjacency is pinned down by the known solution
values through the harmonic-averaging property combined with the
triangle-fan closure around each interior vertex; ``verify_reconstruction``
re-checks every closed-form quantity against the pipeline.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bvp import solve
from .mesh import Triangulation, derive_network
from .paths import shortest_thick_path
from .potential import dirichlet_energy, gradient_metric, network_constants

F = Fraction

WHEEL17_SOLUTION: dict[str, Fraction] = {
    "X": F(1, 2),
    "V": F(1, 2),
    "S": F(31, 44),
    "T": F(13, 44),
    "Y": F(13, 44),
    "L": F(31, 44),
    "U": F(1, 2),
    "C1": F(3, 11),
    "C2": F(1, 2),
    "C3": F(8, 11),
    "C4": F(1, 2),
}
WHEEL17_ENERGY = F(16, 11)
WHEEL17_MAX_DEGREE = 8
WHEEL17_HORIZONTAL = ("b1", "C1", "X", "C3", "t1")
WHEEL17_VERTICAL = ("V", "C2", "X", "C4", "U")
# Closed forms of the approximate lengths 2.23111 and 1.67733.
WHEEL17_HORIZONTAL_LENGTH = (2 * math.sqrt(482) + 2 * math.sqrt(246) + math.sqrt(524)) / 44
WHEEL17_VERTICAL_LENGTH = (4 * math.sqrt(162) + math.sqrt(524)) / 44


def wheel17(g: Fraction = F(1)) -> Triangulation:
    ring = ["C1", "T", "C2", "L", "C3", "S", "C4", "Y"]
    triangles = [("X", ring[i], ring[(i + 1) % 8]) for i in range(8)]
    triangles += [
        ("T", "C2", "V"),
        ("T", "V", "b2"),
        ("T", "b2", "b1"),
        ("T", "b1", "C1"),
        ("Y", "C4", "U"),
        ("Y", "U", "b0"),
        ("Y", "b0", "b1"),
        ("Y", "b1", "C1"),
        ("L", "C2", "V"),
        ("L", "V", "t0"),
        ("L", "t0", "t1"),
        ("L", "t1", "C3"),
        ("S", "C4", "U"),
        ("S", "U", "t2"),
        ("S", "t2", "t1"),
        ("S", "t1", "C3"),
    ]
    r = 1.0
    angles = {name: math.radians(270 + 45 * i) for i, name in enumerate(ring)}
    coords: dict[str, tuple[float, float]] = {"X": (0.0, 0.0)}
    for name, a in angles.items():
        coords[name] = (r * math.cos(a), r * math.sin(a))
    coords.update(
        {
            "V": (2.2, 0.0),
            "U": (-2.2, 0.0),
            "b0": (-1.8, -1.8),
            "b1": (0.0, -2.2),
            "b2": (1.8, -1.8),
            "t0": (1.8, 1.8),
            "t1": (0.0, 2.2),
            "t2": (-1.8, 1.8),
        }
    )
    vertices = ["X"] + ring + ["U", "b0", "b1", "b2", "V", "t0", "t1", "t2"]
    return Triangulation.build(
        vertices,
        triangles,
        arcs=(("U",), ("b0", "b1", "b2"), ("V",), ("t0", "t1", "t2")),
        corners=("b0", "b2", "t0", "t2"),
        g=g,
        coords=coords,
    )


def verify_reconstruction(mode: str = "exact") -> dict:
    """Solve the wheel instance and compare against the known quantities.

    Returns a report with one boolean per quantity; ``ok`` is the
    conjunction.  Lengths are checked to 1e-4, matching the precision of
    the reference values.
    """
    t = wheel17()
    net = derive_network(t)
    sol = solve(net, t.arcs, t.g, mode=mode)
    energy = dirichlet_energy(sol.values, net)
    metric = gradient_metric(sol, net)
    constants = network_constants(net)
    hpath = shortest_thick_path(metric, t, net, "horizontal")
    vpath = shortest_thick_path(metric, t, net, "vertical")

    tol = 0 if mode == "exact" else 1e-9
    values_ok = all(
        abs(sol.values[v] - WHEEL17_SOLUTION[v]) <= tol for v in WHEEL17_SOLUTION
    )
    energy_ok = abs(energy - WHEEL17_ENERGY) <= tol
    checks = {
        "solutionValues": bool(values_ok),
        "energy": bool(energy_ok),
        "maxDegree": constants.k == WHEEL17_MAX_DEGREE,
        "horizontalPath": hpath.vertices == WHEEL17_HORIZONTAL,
        "verticalPath": vpath.vertices == WHEEL17_VERTICAL,
        "horizontalLength": abs(hpath.length - 2.23111) <= 1e-4,
        "verticalLength": abs(vpath.length - 1.67733) <= 1e-4,
        "sharpnessGap": abs(
            hpath.length * vpath.length / float(energy) - 1 / math.sqrt(8) - 2.21929
        )
        <= 1e-4,
    }
    return {"ok": all(checks.values()), "checks": checks}
