"""Deterministic SVG output for linear and circular palette diagrams."""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .data import DataMatrix
from .embedding import TWO_PI, AngularEmbedding, LinearOrdering, circular_order
from .errors import DimensionMismatchError, TooFewPointsError

# polar curves are subdivided so no straight segment spans more than this
MAX_ARC_STEP = math.radians(2.0)


@dataclass(frozen=True)
class DiagramStyle:
    width: float = 1000.0
    height: float = 1000.0
    map_radius: float = 120.0
    inner_radius: float = 150.0
    outer_radius: float = 480.0
    margin: float = 20.0
    palette: Optional[tuple] = None
    background: str = "#ffffff"

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")
        if not 0 < self.map_radius < self.inner_radius < self.outer_radius:
            raise ValueError("need 0 < map_radius < inner_radius < outer_radius")
        if self.outer_radius > min(self.width, self.height) / 2:
            raise ValueError("outer_radius does not fit on the canvas")
        if not 0 <= self.margin < min(self.width, self.height) / 2:
            raise ValueError("margin leaves no drawable area")
        if self.palette is not None:
            object.__setattr__(self, "palette", tuple(self.palette))

    def colors(self, k: int) -> tuple:
        if self.palette is None:
            return tuple(assign_colors(k))
        if len(self.palette) != k:
            raise DimensionMismatchError(f"palette has {len(self.palette)} colors for {k} categories")
        return self.palette


@dataclass(frozen=True)
class SvgDocument:
    xml_text: str

    def __str__(self):
        return self.xml_text

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.xml_text)


def layer_order(m: DataMatrix) -> np.ndarray:
    """Category indices from outermost to innermost ring: ascending column sum."""
    return np.argsort(m.values.sum(axis=0), kind="stable")


def map_categories(m: DataMatrix) -> np.ndarray:
    """Dominant category of every dataset (first index on ties)."""
    return np.argmax(m.values, axis=1)


def assign_colors(k: int) -> list:
    """``k`` evenly spaced hues at 65% saturation, 50% lightness, as hex strings."""
    if k < 1:
        raise ValueError("need at least one category")
    out = []
    for c in range(k):
        r, g, b = colorsys.hls_to_rgb(c / k, 0.5, 0.65)
        out.append("#{:02x}{:02x}{:02x}".format(*(round(v * 255) for v in (r, g, b))))
    return out


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _header(style: DiagramStyle) -> list:
    w, h = _f(style.width), _f(style.height)
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill={quoteattr(style.background)}/>',
    ]


def _title(m: DataMatrix, c: int) -> str:
    if m.category_names is None:
        return f"<title>category {c}</title>"
    return f"<title>{escape(m.category_names[c])}</title>"


def _points(points) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in points)


def render_linear(m: DataMatrix, o: LinearOrdering, style: DiagramStyle = DiagramStyle()) -> SvgDocument:
    """Stacked bands over a silhouette baseline, one column per dataset.

    Dataset ``o.permutation[p]`` sits at horizontal slot ``p``. Categories
    stack in index order; the tallest stack spans the drawable height.
    """
    if m.n < 2:
        raise TooFewPointsError(f"linear diagram needs at least 2 datasets, got {m.n}")
    perm = np.asarray(o.permutation)
    if sorted(perm.tolist()) != list(range(m.n)):
        raise DimensionMismatchError("ordering is not a permutation of the datasets")
    colors = style.colors(m.k)

    y = m.values[perm]
    totals = y.sum(axis=1)
    top = float(totals.max())
    draw_h = style.height - 2 * style.margin
    scale = draw_h / top if top > 0 else 0.0
    xs = style.margin + np.arange(m.n) * (style.width - 2 * style.margin) / (m.n - 1)
    mid = style.height / 2.0
    # silhouette baseline at -total/2; SVG y grows downward
    lower = -0.5 * totals

    lines = _header(style)
    for c in range(m.k):
        upper = lower + y[:, c]
        top_edge = [(x, mid - v * scale) for x, v in zip(xs, upper)]
        bottom_edge = [(x, mid - v * scale) for x, v in zip(xs[::-1], lower[::-1])]
        d = "M " + _points(top_edge[:1]) + " L " + _points(top_edge[1:] + bottom_edge) + " Z"
        lines.append(f'<g id="layer-{c}">')
        lines.append(_title(m, c))
        lines.append(f'<path class="band" d="{d}" fill="{colors[c]}" stroke="none"/>')
        lines.append("</g>")
        lower = upper
    lines.append("</svg>")
    return SvgDocument("\n".join(lines) + "\n")


def _polar_curve(cx, cy, angles, radii):
    """Closed curve through ``(angle, radius)`` samples sorted by angle.

    Radius is interpolated linearly in angle, so each gap is drawn as a
    spiral-like arc rather than a chord; the wrap-around gap is included.
    """
    n = len(angles)
    pts = []
    for p in range(n):
        a0, r0 = angles[p], radii[p]
        if p + 1 < n:
            a1, r1 = angles[p + 1], radii[p + 1]
        else:
            a1, r1 = angles[0] + TWO_PI, radii[0]
        steps = max(1, math.ceil((a1 - a0) / MAX_ARC_STEP))
        for s in range(steps):
            t = s / steps
            a = a0 + t * (a1 - a0)
            r = r0 + t * (r1 - r0)
            # angle 0 at 12 o'clock, increasing clockwise
            pts.append((cx + r * math.sin(a), cy - r * math.cos(a)))
    return pts


def _closed(points) -> str:
    return "M " + _points(points[:1]) + " L " + _points(points[1:]) + " Z"


def render_circular(m: DataMatrix, e: AngularEmbedding, style: DiagramStyle = DiagramStyle()) -> SvgDocument:
    """Concentric per-category rings around a disc of dominant-category sectors.

    Each ring has equal thickness; within the ring for category ``c`` the
    fill at dataset ``i`` is ``y_ic / max_i y_ic`` of the thickness. The
    category with the smallest column sum takes the outermost ring.
    """
    if m.n < 3:
        raise TooFewPointsError(f"circular diagram needs at least 3 datasets, got {m.n}")
    theta = np.asarray(e.theta, dtype=np.float64)
    if theta.shape != (m.n,):
        raise DimensionMismatchError(f"{theta.size} angles for {m.n} datasets")
    colors = style.colors(m.k)
    order = circular_order(theta)
    angles = np.mod(theta, TWO_PI)[order]
    cx, cy = style.width / 2.0, style.height / 2.0
    thickness = (style.outer_radius - style.inner_radius) / m.k

    lines = _header(style)
    for ring, c in enumerate(layer_order(m)):
        c = int(c)
        base = style.outer_radius - (ring + 1) * thickness
        col = m.values[:, c]
        peak = float(col.max())
        frac = col / peak if peak > 0 else np.zeros_like(col)
        outer = _polar_curve(cx, cy, angles, base + thickness * frac[order])
        inner = _polar_curve(cx, cy, angles, np.full(m.n, base))
        lines.append(f'<g id="layer-{c}" class="ring" data-ring="{ring}">')
        lines.append(_title(m, c))
        lines.append(
            f'<path d="{_closed(outer)} {_closed(inner[::-1])}" '
            f'fill="{colors[c]}" fill-rule="evenodd" stroke="none"/>'
        )
        lines.append("</g>")

    # sector boundaries sit halfway between angularly adjacent datasets
    nxt = np.roll(angles, -1)
    nxt[-1] += TWO_PI
    upper = (angles + nxt) / 2.0
    lower = np.roll(upper, 1)
    lower[0] -= TWO_PI
    dominant = map_categories(m)
    lines.append('<g id="map-disc">')
    for p, i in enumerate(order):
        a0, a1 = lower[p], upper[p]
        steps = max(1, math.ceil((a1 - a0) / MAX_ARC_STEP))
        arc = [
            (cx + style.map_radius * math.sin(a0 + s * (a1 - a0) / steps),
             cy - style.map_radius * math.cos(a0 + s * (a1 - a0) / steps))
            for s in range(steps + 1)
        ]
        lines.append(
            f'<path class="sector" data-index="{int(i)}" d="{_closed([(cx, cy)] + arc)}" '
            f'fill="{colors[int(dominant[i])]}" stroke="none"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return SvgDocument("\n".join(lines) + "\n")
