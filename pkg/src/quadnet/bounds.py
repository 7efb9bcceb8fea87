"""Verification of the length-energy inequalities and report generation.

Every inequality here is a theorem for a certified solution, so a failed
verdict signals an implementation bug, never a counterexample.  Exact mode
compares squared quantities with zero slack wherever both sides are
rational; sums of square roots are compared in floating point with a small
relative slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .bvp import HarmonicSolution, residual_certificate, solve
from .mesh import Network, Number, Triangulation, derive_network
from .paths import (
    NoThickPathError,
    Region,
    ThickPath,
    enclosed_region,
    shortest_thick_path,
)
from .potential import (
    GradientMetric,
    NetworkConstants,
    conductance_vector,
    dirichlet_energy,
    gradient_metric,
    network_constants,
    normal_derivative,
    normal_vector_derivative,
    region_network,
    weighted_norm_sq,
)


class ProofChainError(Exception):
    """An intermediate identity of the verification chain failed."""


def _close(a: Number, b: Number, mode: str, scale: float = 1.0) -> bool:
    if mode == "exact" and isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= 1e-9 * max(1.0, scale)


def _le(a: Number, b: Number, mode: str, scale: float = 1.0) -> bool:
    if mode == "exact" and isinstance(a, Fraction) and isinstance(b, Fraction):
        return a <= b
    return float(a) <= float(b) + 1e-9 * max(1.0, scale)


def verify_theorem(
    sol: HarmonicSolution,
    metric: GradientMetric,
    constants: NetworkConstants,
    energy: Number,
    vertical: ThickPath | None,
    horizontal: ThickPath | None,
) -> dict:
    """Both lower bounds: length of the vertical path against I(f)/(gM) and
    of the horizontal path against g*m."""
    g = float(sol.g)
    big_m = constants.big_m
    m = constants.m
    out: dict = {
        "theoremVertical": float(energy) / (g * big_m),
        "theoremHorizontal": g * m,
        "verdicts": {},
        "margins": {},
    }
    slack = 1e-9 * max(1.0, float(energy))
    if vertical is not None:
        margin = vertical.length - out["theoremVertical"]
        out["verdicts"]["theoremVertical"] = margin >= -slack
        out["margins"]["theoremVertical"] = margin
    if horizontal is not None:
        margin = horizontal.length - out["theoremHorizontal"]
        out["verdicts"]["theoremHorizontal"] = margin >= -slack
        out["margins"]["theoremHorizontal"] = margin
    return out


def verify_lemma_upper(
    sol: HarmonicSolution,
    metric: GradientMetric,
    path: Sequence[str],
    n_vertices: int,
    energy: Number,
) -> dict:
    """Pointwise rho <= sqrt(I), per-path length <= |V| sqrt(I), and the
    |V|^2 I cap on products of two path lengths."""
    mode = metric.mode
    for x, rsq in metric.rho_sq.items():
        if not _le(rsq, energy, mode, float(energy)):
            raise ProofChainError(f"pointwise bound rho^2 <= I failed at {x}")
    length = sum(metric.rho[x] for x in path)
    sqrt_i = math.sqrt(float(energy))
    per_path = n_vertices * sqrt_i
    ok_len = length <= len(path) * sqrt_i + 1e-9 * max(1.0, per_path)
    ok_cap = len(path) * sqrt_i <= per_path + 1e-9 * max(1.0, per_path)
    return {
        "pathLength": length,
        "perPathBound": per_path,
        "productBound": n_vertices * n_vertices * float(energy),
        "verdicts": {"lemmaPath": bool(ok_len and ok_cap)},
    }


def verify_corollary(
    energy: Number,
    constants: NetworkConstants,
    vertical: ThickPath,
    horizontal: ThickPath,
    n_vertices: int,
    mode: str,
) -> dict:
    """l(|V|) I >= product of the two thick lengths >= (m/M) I, with
    l(|V|) = |V|^2; for unit conductances additionally m/M = 1/sqrt(k)."""
    product = vertical.length * horizontal.length
    upper = n_vertices * n_vertices * float(energy)
    lower = constants.m / constants.big_m * float(energy)
    slack = 1e-9 * max(1.0, float(energy), upper)
    verdicts = {
        "lemmaUpper": product <= upper + slack,
        "corollaryLower": product >= lower - slack,
    }
    out = {
        "product": product,
        "lemmaUpper": upper,
        "corollaryLower": lower,
        "verdicts": verdicts,
    }
    unit = constants.m_sq == 1 and constants.big_m_sq == constants.k
    if unit:
        # m/M = 1/sqrt(k) holds exactly: m^2/M^2 == 1/k in rationals.
        if constants.m_sq / constants.big_m_sq != Fraction(1, constants.k):
            raise ProofChainError("m/M != 1/sqrt(k) for unit conductances")
        out["gapOverSqrtK"] = product / float(energy) - 1.0 / math.sqrt(constants.k)
    return out


def verify_proof_chain_vertical(
    sol: HarmonicSolution,
    metric: GradientMetric,
    t: Triangulation,
    net: Network,
    region: Region,
    constants: NetworkConstants,
    energy: Number,
) -> list[dict]:
    """Evaluate every intermediate identity behind the vertical lower bound.

    Raises ProofChainError on the first violated link; otherwise returns the
    full trace with all intermediate values.
    """
    mode = sol.mode
    u = sol.values
    g = sol.g
    links: list[dict] = []

    def link(name: str, lhs: Number, rhs: Number, ok: bool, **extra) -> None:
        entry = {"step": name, "lhs": float(lhs), "rhs": float(rhs), "ok": bool(ok), **extra}
        links.append(entry)
        if not ok:
            raise ProofChainError(f"{name}: {lhs} vs {rhs} ({extra})")

    scale = float(energy)
    p4_flux = 0
    p4_weighted = 0
    for x in t.p4:
        nd = normal_derivative(u, net, x)
        p4_flux += nd
        p4_weighted += nd * u[x]
    link("energy-boundary-flux", energy, p4_weighted, _close(energy, p4_weighted, mode, scale))
    link("energy-flux-magnitude", energy, g * abs(p4_flux), _close(energy, g * abs(p4_flux), mode, scale))

    rnet = region_network(net, region.interior_vertices)
    flux_total = 0
    for x in rnet.vertex_boundary:
        flux_total += normal_derivative(u, rnet, x)
    link("region-flux-zero", flux_total, 0, _close(flux_total, 0, mode, scale))

    def region_nd(x):
        # vertices with no neighbour inside the region carry zero flux
        if x not in rnet.neighbors or not rnet.neighbors[x]:
            return 0
        return normal_derivative(u, rnet, x)

    def full_nd(x):
        if x not in net.neighbors or not net.neighbors[x]:
            return 0
        return normal_derivative(u, net, x)

    cut = set(region.cut_path.vertices)
    outer = (set(region.p1_part) | set(t.p4) | set(region.p3_part)) - cut
    worst = 0
    for x in outer:
        dev = abs(region_nd(x) - full_nd(x))
        worst = max(worst, dev)
    link("outer-flux-match", worst, 0, _close(worst, 0, mode, scale))

    p4_region_flux = 0
    for x in t.p4:
        p4_region_flux += region_nd(x)
    cut_flux = 0
    cut_abs_flux = 0
    for x in region.cut_path.vertices:
        nd = region_nd(x)
        cut_flux += nd
        cut_abs_flux += abs(nd)
    link(
        "triangle-inequality",
        abs(p4_region_flux),
        cut_abs_flux,
        _close(abs(p4_region_flux), abs(cut_flux), mode, scale)
        and _le(abs(cut_flux), cut_abs_flux, mode, scale),
        equalitySide=float(abs(cut_flux)),
    )

    cs_sum = 0.0
    bound_sum = 0.0
    x0, xn = region.cut_path.vertices[0], region.cut_path.vertices[-1]
    for x in region.cut_path.vertices:
        if x not in rnet.neighbors or rnet.degree.get(x, 0) == 0:
            continue
        nd = normal_derivative(u, rnet, x)
        nvec = normal_vector_derivative(u, rnet, x)
        cvec = conductance_vector(rnet, x)
        inner = 0
        for comp, c in zip(nvec, cvec, strict=True):
            inner += comp * c / c  # 1/c-weighted inner product with the conductance vector
        link(f"inner-product[{x}]", nd, inner, _close(nd, inner, mode, scale))
        c_norm_sq = sum(cvec)
        n_norm_sq = weighted_norm_sq(nvec, cvec)
        link(
            f"cauchy-schwarz[{x}]",
            nd * nd,
            c_norm_sq * n_norm_sq,
            _le(nd * nd, c_norm_sq * n_norm_sq, mode, scale),
        )
        full_c_sq = sum(conductance_vector(net, x))
        link(
            f"conductance-monotone[{x}]",
            c_norm_sq,
            full_c_sq,
            _le(c_norm_sq, full_c_sq, mode, scale),
            endpoint=x in (x0, xn),
        )
        link(
            f"gradient-monotone[{x}]",
            n_norm_sq,
            metric.rho_sq[x],
            _le(n_norm_sq, metric.rho_sq[x], mode, scale),
        )
        cs_sum += math.sqrt(float(c_norm_sq)) * math.sqrt(float(n_norm_sq))
        bound_sum += constants.big_m * metric.rho[x]
    length = sum(metric.rho[x] for x in region.cut_path.vertices)
    slack = 1e-9 * max(1.0, scale)
    link("norm-product-sum", cs_sum, bound_sum, cs_sum <= bound_sum + slack)
    final_lhs = float(energy) / (float(g) * constants.big_m)
    link("final-bound", final_lhs, length, final_lhs <= length + slack)
    return links


@dataclass
class BoundsReport:
    instance: str
    mode: str
    energy: Number
    g: Number
    constants: NetworkConstants
    n_vertices: int
    vertical: ThickPath | None
    horizontal: ThickPath | None
    vertical_absent: str | None
    horizontal_absent: str | None
    bounds: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    proof_chain: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(self.verdicts.values())


def build_report(
    t: Triangulation,
    mode: str = "exact",
    with_chain: bool = False,
    horizontal_variant: bool = False,
    instance: str = "",
) -> BoundsReport:
    """Run the whole pipeline on one instance and verify every bound."""
    net = derive_network(t)
    sol = solve(net, t.arcs, t.g, mode=mode)
    cert = residual_certificate(sol, net, t.arcs)
    tol = 0 if mode == "exact" else 1e-10
    if cert > tol:
        raise ProofChainError(f"solution certificate failed: residual {cert}")
    energy = dirichlet_energy(sol.values, net)
    metric = gradient_metric(sol, net)
    constants = network_constants(net)

    vertical = horizontal = None
    v_absent = h_absent = None
    try:
        vertical = shortest_thick_path(metric, t, net, "vertical")
    except NoThickPathError as exc:
        v_absent = str(exc)
    try:
        horizontal = shortest_thick_path(metric, t, net, "horizontal", horizontal_variant)
    except NoThickPathError as exc:
        h_absent = str(exc)

    report = BoundsReport(
        instance=instance,
        mode=mode,
        energy=energy,
        g=sol.g,
        constants=constants,
        n_vertices=len(t.vertices),
        vertical=vertical,
        horizontal=horizontal,
        vertical_absent=v_absent,
        horizontal_absent=h_absent,
    )
    thm = verify_theorem(sol, metric, constants, energy, vertical, horizontal)
    report.bounds["theoremVertical"] = thm["theoremVertical"]
    report.bounds["theoremHorizontal"] = thm["theoremHorizontal"]
    report.verdicts.update(thm["verdicts"])

    any_path = vertical or horizontal
    if any_path is not None:
        lemma = verify_lemma_upper(sol, metric, any_path.vertices, len(t.vertices), energy)
        report.verdicts.update(lemma["verdicts"])

    if vertical is not None and horizontal is not None:
        coro = verify_corollary(energy, constants, vertical, horizontal, len(t.vertices), mode)
        report.bounds["product"] = coro["product"]
        report.bounds["lemmaUpper"] = coro["lemmaUpper"]
        report.bounds["corollaryLower"] = coro["corollaryLower"]
        if "gapOverSqrtK" in coro:
            report.bounds["gapOverSqrtK"] = coro["gapOverSqrtK"]
        report.verdicts.update(coro["verdicts"])
        # Algebraic identity: the corollary's lower bound is the product of
        # the two theorem bounds.
        lhs = report.bounds["corollaryLower"]
        rhs = report.bounds["theoremVertical"] * report.bounds["theoremHorizontal"]
        if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs)):
            raise ProofChainError("corollaryLower != theoremVertical * theoremHorizontal")

    if vertical is not None and with_chain:
        region = enclosed_region(t, net, vertical)
        report.proof_chain = verify_proof_chain_vertical(
            sol, metric, t, net, region, constants, energy
        )
        report.verdicts["proofChain"] = all(link["ok"] for link in report.proof_chain)
    return report


def _num_json(x: Number) -> str | float:
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


def report_json(r: BoundsReport) -> dict:
    """Stable-keyed JSON object for one verified instance."""

    def side(path: ThickPath | None, absent: str | None) -> dict:
        if path is None:
            return {"absent": absent or "NoThickPath"}
        return {"path": list(path.vertices), "length": path.length}

    return {
        "instance": r.instance,
        "mode": r.mode,
        "energy": _num_json(r.energy),
        "g": _num_json(r.g),
        "m": r.constants.m,
        "M": r.constants.big_m,
        "k": r.constants.k,
        "vertical": side(r.vertical, r.vertical_absent),
        "horizontal": side(r.horizontal, r.horizontal_absent),
        "bounds": {
            key: r.bounds[key]
            for key in sorted(r.bounds)
        },
        "verdicts": {key: bool(v) for key, v in sorted(r.verdicts.items())},
        "proofChain": r.proof_chain,
    }
