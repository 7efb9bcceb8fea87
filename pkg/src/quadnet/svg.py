"""Static SVG rendering: edges, the gradient metric as vertex radii, and the
two shortest thick paths when they exist.  Requires vertex coordinates."""

from __future__ import annotations

from .mesh import Network, Triangulation
from .paths import ThickPath
from .potential import GradientMetric


class SvgError(Exception):
    pass


def render_svg(
    t: Triangulation,
    metric: GradientMetric | None = None,
    paths: list[ThickPath] | None = None,
    size: int = 600,
) -> str:
    if not t.coords:
        raise SvgError("triangulation has no vertex coordinates")
    xs = [p[0] for p in t.coords.values()]
    ys = [p[1] for p in t.coords.values()]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.08 * span
    scale = size / (span + 2 * pad)

    def pt(v: str) -> tuple[float, float]:
        x, y = t.coords[v]
        # Flip y so larger coordinates render upward.
        return ((x - x0 + pad) * scale, size - (y - y0 + pad) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for a, b in sorted(t.edges):
        (ax, ay), (bx, by) = pt(a), pt(b)
        parts.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
    colors = {"vertical": "#d62728", "horizontal": "#1f77b4"}
    for path in paths or []:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (pt(v) for v in path.vertices))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{colors.get(path.orientation, "#2ca02c")}" '
            'stroke-width="3"/>'
        )
    max_rho = max(metric.rho.values(), default=0.0) if metric else 0.0
    for v in t.vertices:
        x, y = pt(v)
        r = 3.0
        if metric and max_rho > 0 and v in metric.rho:
            r = 3.0 + 9.0 * metric.rho[v] / max_rho
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="#333333"/>')
        parts.append(
            f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="10" fill="#666666">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
