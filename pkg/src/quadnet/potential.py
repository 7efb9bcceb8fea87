"""Energies, gradients, normal derivatives and the induced gradient metric.

All vector norms live in the 1/c-weighted inner product on directed edges:
``(f, h) = sum f(e) h(e) / c(e)``.  Under that convention the norm of the
conductance vector squares to the plain conductance sum, and the norm of a
gradient or normal-derivative vector squares to ``sum c * (difference)^2``,
which is what makes the energy and path-length estimates line up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .bvp import HarmonicSolution, laplacian
from .mesh import Network, Number, edge_key


class EnergyMismatchError(Exception):
    """The independent energy formulas disagree: an implementation bug."""


def _sqrt(x: Number) -> float:
    return math.sqrt(float(x))


def differential(u: Mapping[str, Number], net: Network, x: str, y: str) -> Number:
    """du[x, y] = c(x, y) (u(y) - u(x)); antisymmetric in the edge direction."""
    if edge_key(x, y) not in net.incident_edges:
        raise KeyError(f"({x}, {y}) is not an incident edge of the network")
    return net.c(x, y) * (u[y] - u[x])


def restricted_gradient(u: Mapping[str, Number], net: Network, x: str) -> tuple[Number, ...]:
    """Components of du on the directed edges out of an interior vertex."""
    if x not in net.interior:
        raise ValueError(f"{x!r} is not an interior vertex")
    return tuple(net.c(x, y) * (u[y] - u[x]) for y in net.neighbors[x])


def normal_vector_derivative(u: Mapping[str, Number], net: Network, x: str) -> tuple[Number, ...]:
    """Per-neighbor flux components ``c(x, y)(u(x) - u(y))`` into the interior."""
    if x not in net.vertex_boundary:
        raise ValueError(f"{x!r} is not a boundary vertex")
    return tuple(net.c(x, y) * (u[x] - u[y]) for y in net.neighbors[x])


def conductance_vector(net: Network, x: str) -> tuple[Fraction, ...]:
    """Conductances to the class-appropriate neighbors, in the same order as
    the gradient/normal-derivative vectors."""
    nbrs = net.neighbors[x]
    if not nbrs:
        raise ValueError(f"{x!r} has an empty neighbor set")
    return tuple(net.c(x, y) for y in nbrs)


def weighted_norm_sq(components, conductances) -> Number:
    """Squared 1/c-weighted norm of a per-edge vector."""
    total = 0
    for comp, c in zip(components, conductances, strict=True):
        total += comp * comp / c
    return total


def normal_derivative(u: Mapping[str, Number], net: Network, x: str) -> Number:
    """Total flux of u at a boundary vertex into the reference set.

    Equals the 1/c-weighted inner product of the conductance vector with the
    normal vector derivative.  Empty neighbor sets give 0.
    """
    total = 0
    for y in net.neighbors[x]:
        total += net.c(x, y) * (u[x] - u[y])
    return total


def dirichlet_energy(u: Mapping[str, Number], net: Network) -> Number:
    """Energy ``sum over incident edges of c (difference)^2``.

    Cross-checked against the potential form ``sum Delta u * u`` and the
    half-sum of squared differentials over directed edges; disagreement is a
    hard failure since all three are algebraically identical.
    """
    by_edges = 0
    for a, b in net.incident_edges:
        d = u[a] - u[b]
        by_edges += net.conductance[(a, b)] * d * d
    by_potential = 0
    for x in net.closure:
        if x in u and net.degree[x] >= 1:
            by_potential += laplacian(u, net, x) * u[x]
    by_directed = 0
    for a, b in net.incident_edges:
        c = net.conductance[(a, b)]
        d = c * (u[b] - u[a])
        by_directed += 2 * (d * d / c)  # both orientations
    by_directed = by_directed / 2

    if isinstance(by_edges, Fraction) and isinstance(by_potential, Fraction):
        mismatch = by_edges != by_potential or by_edges != by_directed
    else:
        slack = 1e-12 * (1.0 + abs(float(by_edges)))
        mismatch = (
            abs(float(by_edges) - float(by_potential)) > slack
            or abs(float(by_edges) - float(by_directed)) > slack
        )
    if mismatch:
        raise EnergyMismatchError(
            f"energy formulas disagree: edges={by_edges} potential={by_potential} directed={by_directed}"
        )
    return by_edges


@dataclass(frozen=True)
class GradientMetric:
    rho_sq: Mapping[str, Number]
    rho: Mapping[str, float]
    mode: str


def gradient_metric(sol: HarmonicSolution, net: Network) -> GradientMetric:
    """Vertex metric: the weighted norm of the local gradient (interior) or
    of the normal-derivative vector (boundary); 0 where no interior neighbor
    exists."""
    u = sol.values
    zero: Number = Fraction(0) if sol.mode == "exact" else 0.0
    rho_sq: dict[str, Number] = {}
    for x in sorted(net.closure):
        if net.degree[x] == 0 or x not in u:
            rho_sq[x] = zero
            continue
        total = zero
        for y in net.neighbors[x]:
            d = u[x] - u[y]
            total += net.c(x, y) * d * d
        rho_sq[x] = total
    rho = {x: _sqrt(v) for x, v in rho_sq.items()}
    return GradientMetric(rho_sq=rho_sq, rho=rho, mode=sol.mode)


@dataclass(frozen=True)
class NetworkConstants:
    m_sq: Fraction
    big_m_sq: Fraction
    k: int

    @property
    def m(self) -> float:
        return _sqrt(self.m_sq)

    @property
    def big_m(self) -> float:
        return _sqrt(self.big_m_sq)


def network_constants(net: Network) -> NetworkConstants:
    """m = min sqrt(c) over incident edges; M = max weighted conductance-vector
    norm over vertices with neighbors; k = max degree."""
    if not net.incident_edges:
        raise ValueError("network has no incident edges")
    m_sq = min(net.conductance[e] for e in net.incident_edges)
    big_m_sq = Fraction(0)
    for x in net.closure:
        if net.degree[x] >= 1:
            # ||c_vec||^2 in the 1/c product collapses to the conductance sum.
            s = sum(net.c(x, y) for y in net.neighbors[x])
            big_m_sq = max(big_m_sq, s)
    k = max(net.degree.values())
    if all(c == 1 for c in net.conductance.values()):
        assert m_sq == 1 and big_m_sq == k
    return NetworkConstants(m_sq=m_sq, big_m_sq=big_m_sq, k=k)


def green_identity(
    u: Mapping[str, Number], v: Mapping[str, Number], net: Network
) -> tuple[Number, Number, Number]:
    """First Green identity: edge form vs. potential-plus-flux form.

    Returns (lhs, rhs, lhs - rhs); the residual is exactly zero for rational
    inputs.
    """
    lhs = 0
    for a, b in net.incident_edges:
        lhs += net.conductance[(a, b)] * (u[a] - u[b]) * (v[a] - v[b])
    rhs = 0
    for x in net.interior:
        rhs += laplacian(u, net, x) * v[x]
    for x in net.vertex_boundary:
        if net.degree[x] >= 1:
            rhs += normal_derivative(u, net, x) * v[x]
    return lhs, rhs, lhs - rhs


def region_network(net: Network, region: frozenset[str]) -> Network:
    """The sub-network whose interior is ``region`` (a subset of F).

    The vertex boundary becomes every vertex outside the region adjacent to
    it; boundary neighbor lists are restricted to the region.
    """
    if not region <= net.interior:
        raise ValueError("region must be a subset of the interior")
    boundary: set[str] = set()
    edges: set = set()
    for x in region:
        for y in net.neighbors[x]:
            edges.add(edge_key(x, y))
            if y not in region:
                boundary.add(y)
    neighbors: dict[str, tuple[str, ...]] = {}
    for x in sorted(region):
        neighbors[x] = net.neighbors[x]
    for x in sorted(boundary):
        neighbors[x] = tuple(y for y in net.neighbors[x] if y in region)
    degree = {x: len(n) for x, n in neighbors.items()}
    cond = {e: net.conductance[e] for e in edges}
    return Network(
        interior=frozenset(region),
        vertex_boundary=frozenset(boundary),
        incident_edges=frozenset(edges),
        conductance=cond,
        neighbors=neighbors,
        degree=degree,
    )
