"""Deterministic SVG rendering of instances and results.

Figures are static files: the outer polygon in black, up to four solution
polygons in fixed distinguishable colors, inner points in red, conic loci as
sampled polylines.  The viewport is fitted to the drawn geometry with a 5%
margin, coordinates are emitted with a fixed format, and no timestamps or
random identifiers appear, so identical inputs yield byte-identical files.
"""

from __future__ import annotations

SOLUTION_COLORS = ("#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd")
OUTER_COLOR = "#000000"
INNER_COLOR = "#d62728"
LOCUS_COLOR = "#7f7f7f"


def _fmt(value: float) -> str:
    return f"{value:.6f}"


class SvgCanvas:
    """Collects shapes in world coordinates, then emits a y-flipped SVG."""

    def __init__(self):
        self.elements: list[str] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def _track(self, points) -> None:
        for x, y in points:
            self.xs.append(x)
            self.ys.append(y)

    def polygon(self, points, stroke: str, width: float = 0.01, fill: str = "none") -> None:
        self._track(points)
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)
        self.elements.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(width)}" />'
        )

    def polyline(self, points, stroke: str, width: float = 0.01) -> None:
        self._track(points)
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)
        self.elements.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{_fmt(width)}" />'
        )

    def segment(self, a, b, stroke: str, width: float = 0.01) -> None:
        self._track([a, b])
        self.elements.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(-b[1])}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}" />'
        )

    def dot(self, point, fill: str, radius: float = 0.02) -> None:
        self._track([point])
        self.elements.append(
            f'<circle cx="{_fmt(point[0])}" cy="{_fmt(-point[1])}" r="{_fmt(radius)}" fill="{fill}" />'
        )

    def render(self, margin: float = 0.05) -> str:
        if not self.xs:
            view = "0 0 1 1"
        else:
            xmin, xmax = min(self.xs), max(self.xs)
            ymin, ymax = min(self.ys), max(self.ys)
            width = max(xmax - xmin, 1e-9)
            height = max(ymax - ymin, 1e-9)
            pad = margin * max(width, height)
            view = (
                f"{_fmt(xmin - pad)} {_fmt(-ymax - pad)} "
                f"{_fmt(width + 2 * pad)} {_fmt(height + 2 * pad)}"
            )
        body = "\n".join(self.elements)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">\n'
            f"{body}\n</svg>\n"
        )


def _scaled_widths(points) -> tuple[float, float]:
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    extent = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    return 0.004 * extent, 0.012 * extent


def render_polygon_scene(outer, solutions, inner, locus=None) -> str:
    """SVG of an instance: ``outer``/``inner`` point lists, solution polygons."""
    canvas = SvgCanvas()
    stroke, dot = _scaled_widths(outer)
    canvas.polygon(outer, OUTER_COLOR, width=stroke)
    for idx, poly in enumerate(solutions[:4]):
        canvas.polygon(poly, SOLUTION_COLORS[idx % 4], width=stroke)
    if locus:
        canvas.polyline(locus, LOCUS_COLOR, width=stroke)
    canvas.polygon(inner, INNER_COLOR, width=stroke)
    for p in inner:
        canvas.dot(p, INNER_COLOR, radius=dot)
    return canvas.render()


def render_locus_scene(samples, markers, lines=None) -> str:
    """SVG of a sampled conic locus (polyline) with marked chain centers."""
    canvas = SvgCanvas()
    stroke, dot = _scaled_widths(markers if markers else samples)
    # Far sweep samples would blow up the viewport; clip to the marker scale.
    xs = [x for x, _ in markers] or [0.0]
    ys = [y for _, y in markers] or [0.0]
    cx, cy = sum(xs) / len(xs), sum(ys) / len(ys)
    extent = 10.0 * max(max(abs(x - cx) for x in xs), max(abs(y - cy) for y in ys), 1.0)
    kept = [p for p in samples if abs(p[0] - cx) <= extent and abs(p[1] - cy) <= extent]
    if len(kept) >= 2:
        canvas.polyline(kept, LOCUS_COLOR, width=stroke)
    for p in kept:
        canvas.dot(p, LOCUS_COLOR, radius=0.5 * dot)
    if lines:
        for a, b in lines:
            canvas.segment(a, b, OUTER_COLOR, width=stroke)
    for p in markers:
        canvas.dot(p, INNER_COLOR, radius=dot)
    return canvas.render()


def render_polyhedron_scene(vertices, edges, solutions, axis: str = "z") -> str:
    """Orthographic projection along ``axis``; solution points colored per set."""
    drop = {"x": 0, "y": 1, "z": 2}[axis]
    keep = [i for i in range(3) if i != drop]

    def proj(p) -> tuple[float, float]:
        return (float(p[keep[0]]), float(p[keep[1]]))

    canvas = SvgCanvas()
    pts2 = [proj(v) for v in vertices]
    stroke, dot = _scaled_widths(pts2)
    for a, b in edges:
        canvas.segment(pts2[a], pts2[b], OUTER_COLOR, width=stroke)
    for idx, edge_params in enumerate(solutions[:4]):
        color = SOLUTION_COLORS[idx % 4]
        for (a, b), t in sorted(edge_params.items()):
            pa, pb = vertices[a], vertices[b]
            pt = [pa[i] + t * (pb[i] - pa[i]) for i in range(3)]
            canvas.dot(proj(pt), color, radius=dot)
    return canvas.render()
