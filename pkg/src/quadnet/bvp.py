"""Assembly and solution of the mixed Dirichlet-Neumann boundary value problem.

The solution f vanishes on P2, equals the constant g on P4, is harmonic at
every interior vertex, and has zero normal derivative at every P1/P3 vertex
with an interior neighbor.  Unknowns are the interior vertices plus those
P1/P3 vertices; the reduced system is the symmetric weighted Laplacian with
the Dirichlet values moved to the right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .mesh import Network, Number


class BVPError(Exception):
    """Solver failure or a violated solution certificate."""


class SingularSystemError(BVPError):
    """The reduced system is rank deficient (disconnected or malformed instance)."""


@dataclass(frozen=True)
class LinearSystem:
    unknowns: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    fixed: Mapping[str, Fraction]


@dataclass(frozen=True)
class HarmonicSolution:
    values: Mapping[str, Number]
    g: Number
    mode: str  # "exact" | "float"
    residual: Number


def assemble(net: Network, arcs: Sequence[Sequence[str]], g: Fraction) -> LinearSystem:
    """Build the reduced linear system for the four boundary conditions."""
    g = Fraction(g)
    if g <= 0:
        raise ValueError("the Dirichlet constant g must be positive")
    p1, p2, p3, p4 = (tuple(a) for a in arcs)
    fixed: dict[str, Fraction] = {}
    for v in p2:
        fixed[v] = Fraction(0)
    for v in p4:
        fixed[v] = g
    neumann = [v for v in sorted(set(p1) | set(p3)) if net.degree.get(v, 0) >= 1]
    unknowns = tuple(sorted(net.interior)) + tuple(neumann)
    index = {v: i for i, v in enumerate(unknowns)}

    n = len(unknowns)
    mat = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(0)] * n
    for i, x in enumerate(unknowns):
        # Interior rows sum over all neighbors, Neumann rows only over
        # interior ones; both are encoded by net.neighbors.
        for y in net.neighbors[x]:
            c = net.c(x, y)
            mat[i][i] += c
            if y in index:
                mat[i][index[y]] -= c
            else:
                rhs[i] += c * fixed[y]
    return LinearSystem(
        unknowns=unknowns,
        matrix=tuple(tuple(row) for row in mat),
        rhs=tuple(rhs),
        fixed=fixed,
    )


def _check_maximum_principle(values: Mapping[str, Number], g, slack) -> None:
    lo = min(values.values())
    hi = max(values.values())
    if lo < -slack or hi > g + slack:
        raise BVPError(
            f"maximum principle violated: values range [{lo}, {hi}] outside [0, {g}]"
        )


def solve_exact(system: LinearSystem) -> HarmonicSolution:
    """Gaussian elimination with full pivoting over exact rationals."""
    n = len(system.unknowns)
    a = [list(row) + [system.rhs[i]] for i, row in enumerate(system.matrix)]
    col_perm = list(range(n))
    for k in range(n):
        # Full pivot: largest entry in the remaining block.
        piv, pr, pc = None, -1, -1
        for r in range(k, n):
            for c in range(k, n):
                v = abs(a[r][c])
                if v and (piv is None or v > piv):
                    piv, pr, pc = v, r, c
        if piv is None:
            raise SingularSystemError("rank-deficient system: solution is not unique")
        a[k], a[pr] = a[pr], a[k]
        if pc != k:
            for row in a:
                row[k], row[pc] = row[pc], row[k]
            col_perm[k], col_perm[pc] = col_perm[pc], col_perm[k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] * inv
            if f:
                for c in range(k, n + 1):
                    a[r][c] -= f * a[k][c]
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = a[k][n] - sum(a[k][c] * x[c] for c in range(k + 1, n))
        x[k] = s / a[k][k]
    sol = [Fraction(0)] * n
    for k in range(n):
        sol[col_perm[k]] = x[k]

    values: dict[str, Number] = dict(system.fixed)
    for v, val in zip(system.unknowns, sol):
        values[v] = val
    g = max(system.fixed.values()) if system.fixed else Fraction(1)
    residual = max(
        (abs(sum(system.matrix[i][j] * sol[j] for j in range(n)) - system.rhs[i]) for i in range(n)),
        default=Fraction(0),
    )
    if residual != 0:
        raise BVPError("exact solve left a nonzero residual")
    _check_maximum_principle(values, g, Fraction(0))
    return HarmonicSolution(values=values, g=g, mode="exact", residual=Fraction(0))


def solve_float(system: LinearSystem, tol: float = 1e-12) -> HarmonicSolution:
    """Direct dense solve in double precision, certified against ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = len(system.unknowns)
    a = np.array([[float(v) for v in row] for row in system.matrix], dtype=float)
    b = np.array([float(v) for v in system.rhs], dtype=float)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    residual = float(np.max(np.abs(a @ x - b))) if n else 0.0
    bound = tol * (1.0 + float(np.max(np.abs(b))) if n else 1.0)
    if residual > bound:
        raise BVPError(f"residual {residual} exceeds certified bound {bound}")
    values: dict[str, Number] = {v: float(val) for v, val in system.fixed.items()}
    for v, val in zip(system.unknowns, x):
        values[v] = float(val)
    g = float(max(system.fixed.values())) if system.fixed else 1.0
    _check_maximum_principle(values, g, tol * (1.0 + g))
    return HarmonicSolution(values=values, g=g, mode="float", residual=residual)


def laplacian(u: Mapping[str, Number], net: Network, x: str) -> Number:
    """Weighted sum of differences to neighbors; boundary vertices use
    interior neighbors only."""
    total = 0
    for y in net.neighbors[x]:
        total += net.c(x, y) * (u[x] - u[y])
    return total


def residual_certificate(
    sol: HarmonicSolution, net: Network, arcs: Sequence[Sequence[str]]
) -> Number:
    """Re-check all four boundary value conditions from raw data.

    Independent of the solver: recomputes harmonicity at interior vertices,
    the two Dirichlet conditions and the Neumann condition, and returns the
    maximum absolute violation.
    """
    p1, p2, p3, p4 = (tuple(a) for a in arcs)
    u = sol.values
    worst = Fraction(0) if sol.mode == "exact" else 0.0
    for x in net.interior:
        worst = max(worst, abs(laplacian(u, net, x)))
    for x in p2:
        worst = max(worst, abs(u[x]))
    for x in p4:
        worst = max(worst, abs(u[x] - sol.g))
    for x in tuple(p1) + tuple(p3):
        if net.degree.get(x, 0) >= 1:
            worst = max(worst, abs(laplacian(u, net, x)))
    return worst


def solve(net: Network, arcs: Sequence[Sequence[str]], g: Fraction, mode: str = "exact", tol: float = 1e-12) -> HarmonicSolution:
    """Assemble and solve in one step."""
    system = assemble(net, arcs, Fraction(g))
    if mode == "exact":
        return solve_exact(system)
    if mode == "float":
        return solve_float(system, tol=tol)
    raise ValueError(f"unknown mode {mode!r}")
