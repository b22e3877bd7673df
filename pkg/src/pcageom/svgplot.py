"""Standalone SVG renderers for the scree curve and the similarity map."""

from __future__ import annotations

from .varcluster import UNASSIGNED, ClusterAssignment, SimilarityProfile

__all__ = ["render_svg_scree", "render_svg_similarity"]

_MARKERS = ("circle", "square", "triangle", "diamond", "cross")
_COLORS = ("#1f6feb", "#d1242f", "#2da44e", "#9a6700", "#8250df")


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def _marker(shape: str, x: float, y: float, color: str, size: float = 5.0) -> str:
    if shape == "square":
        return (
            f'<rect x="{x - size:.2f}" y="{y - size:.2f}" width="{2 * size:.2f}" '
            f'height="{2 * size:.2f}" fill="{color}" />'
        )
    if shape == "triangle":
        pts = f"{x:.2f},{y - size:.2f} {x - size:.2f},{y + size:.2f} {x + size:.2f},{y + size:.2f}"
        return f'<polygon points="{pts}" fill="{color}" />'
    if shape == "diamond":
        pts = (
            f"{x:.2f},{y - size:.2f} {x + size:.2f},{y:.2f} "
            f"{x:.2f},{y + size:.2f} {x - size:.2f},{y:.2f}"
        )
        return f'<polygon points="{pts}" fill="{color}" />'
    if shape == "cross":
        return (
            f'<path d="M {x - size:.2f} {y - size:.2f} L {x + size:.2f} {y + size:.2f} '
            f'M {x - size:.2f} {y + size:.2f} L {x + size:.2f} {y - size:.2f}" '
            f'stroke="{color}" stroke-width="2.5" fill="none" />'
        )
    return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{size:.2f}" fill="{color}" />'


def render_svg_scree(series: list[tuple[int, float]]) -> str:
    """Eigenvalues against component index, largest first, as an SVG line."""
    if not series:
        raise ValueError("svgplot: empty scree series")
    width, height = 640, 420
    left, right, top, bottom = 64, 24, 44, 56
    plot_w = width - left - right
    plot_h = height - top - bottom
    y_max = max(v for _, v in series)
    if y_max <= 0.0:
        y_max = 1.0
    y_max *= 1.08
    n = len(series)

    def sx(i: int) -> float:
        if n == 1:
            return left + plot_w / 2
        return left + plot_w * (i - 1) / (n - 1)

    def sy(v: float) -> float:
        return top + plot_h * (1.0 - v / y_max)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white" />',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">Scree plot</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = y_max * frac
        y = sy(v)
        parts.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{width - right}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1" />'
        )
        parts.append(
            f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{v:.2f}</text>'
        )
    pts = " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in series)
    if n > 1:
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#1f6feb" stroke-width="2" />'
        )
    for i, v in series:
        parts.append(f'<circle cx="{sx(i):.2f}" cy="{sy(v):.2f}" r="4" fill="#1f6feb" />')
        parts.append(
            f'<text x="{sx(i):.2f}" y="{height - bottom + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{i}</text>'
        )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" '
        f'stroke="#333333" stroke-width="1" />'
    )
    parts.append(
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" '
        f'stroke="#333333" stroke-width="1" />'
    )
    parts.append(
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">component</text>'
    )
    parts.append(
        f'<text x="18" y="{height / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 18 {height / 2:.0f})">eigenvalue</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)


def render_svg_similarity(
    profiles: list[SimilarityProfile], assignment: ClusterAssignment
) -> str:
    """Variables placed at (similarity to pc1, similarity to pc2).

    Defined only for two-component profiles; marker shape encodes the
    cluster.  Both axes span [0, 1].
    """
    if not profiles:
        raise ValueError("svgplot: no profiles to plot")
    bad = [p.variable for p in profiles if p.k != 2]
    if bad:
        raise ValueError(
            "svgplot: the similarity map is defined for exactly 2 components; "
            f"profile for {bad[0]!r} has {next(p.k for p in profiles if p.variable == bad[0])}"
        )
    width, height = 560, 520
    left, right, top, bottom = 64, 150, 44, 56
    plot_w = width - left - right
    plot_h = height - top - bottom

    def sx(v: float) -> float:
        return left + plot_w * v

    def sy(v: float) -> float:
        return top + plot_h * (1.0 - v)

    cluster_ids = list(assignment.clusters.keys())
    style = {
        cid: (_MARKERS[i % len(_MARKERS)], _COLORS[i % len(_COLORS)])
        for i, cid in enumerate(cluster_ids)
    }

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white" />',
        f'<text x="{(left + width - right) / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">Variable similarity map</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        parts.append(
            f'<line x1="{sx(frac):.2f}" y1="{top}" x2="{sx(frac):.2f}" y2="{height - bottom}" '
            f'stroke="#eeeeee" stroke-width="1" />'
        )
        parts.append(
            f'<line x1="{left}" y1="{sy(frac):.2f}" x2="{width - right}" y2="{sy(frac):.2f}" '
            f'stroke="#eeeeee" stroke-width="1" />'
        )
        parts.append(
            f'<text x="{sx(frac):.2f}" y="{height - bottom + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{frac:.2f}</text>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{sy(frac) + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{frac:.2f}</text>'
        )
    parts.append(
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" '
        f'stroke="#333333" stroke-width="1" />'
    )
    for prof in profiles:
        cid = assignment.assignments.get(prof.variable, UNASSIGNED)
        shape, color = style.get(cid, ("cross", "#666666"))
        x = sx(float(prof.values[0]))
        y = sy(float(prof.values[1]))
        parts.append(_marker(shape, x, y, color))
        parts.append(
            f'<text x="{x + 9:.2f}" y="{y - 7:.2f}" font-family="sans-serif" '
            f'font-size="11">{_esc(prof.variable)}</text>'
        )
    legend_x = width - right + 16
    legend_y = top + 6
    for i, cid in enumerate(cluster_ids):
        shape, color = style[cid]
        y = legend_y + i * 20
        parts.append(_marker(shape, legend_x, y, color, size=4.5))
        parts.append(
            f'<text x="{legend_x + 12}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="12">{_esc(cid)}</text>'
        )
    parts.append(
        f'<text x="{(left + width - right) / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">similarity to pc1</text>'
    )
    parts.append(
        f'<text x="18" y="{height / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 18 {height / 2:.0f})">similarity to pc2</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)
