"""Necklace diagrams: n pulses on a circle, onsets filled, rests hollow."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from xml.sax.saxutils import escape

from palrhythm.core import Rhythm
from palrhythm.errors import InvalidArgument


@dataclass(frozen=True)
class RenderSpec:
    radius: float = 150.0
    point_radius: float = 6.0
    label_vertices: bool = True
    chords: bool = False
    highlight: frozenset[int] | None = None
    title: str = ""

    def __post_init__(self):
        if self.radius <= 0 or self.point_radius <= 0:
            raise InvalidArgument("radius and point radius must be positive")


def _f(x: float) -> str:
    # fixed precision keeps output byte-identical across runs
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def pulse_xy(i: int, n: int, radius: float, cx: float, cy: float) -> tuple[float, float]:
    """Pulse 0 at twelve o'clock, numbering clockwise."""
    angle = 2 * math.pi * i / n
    return cx + radius * math.sin(angle), cy - radius * math.cos(angle)


def render_svg(r: Rhythm, spec: RenderSpec = RenderSpec()) -> str:
    pad = spec.point_radius * 2 + (28 if spec.label_vertices else 8)
    size = 2 * (spec.radius + pad)
    cx = cy = size / 2
    onsets = set(r.onsets)
    highlight = spec.highlight or frozenset()
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(size)}" height="{_f(size)}" '
        f'viewBox="0 0 {_f(size)} {_f(size)}">',
    ]
    if spec.title:
        lines.append(f"<title>{escape(spec.title)}</title>")
    lines.append(
        f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(spec.radius)}" fill="none" stroke="#999999" stroke-width="1"/>'
    )
    pts = {i: pulse_xy(i, r.n, spec.radius, cx, cy) for i in range(r.n)}
    if spec.chords:
        for a, b in combinations(r.onsets, 2):
            (x1, y1), (x2, y2) = pts[a], pts[b]
            lines.append(
                f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" stroke="#cccccc" stroke-width="1"/>'
            )
    for i in range(r.n):
        x, y = pts[i]
        colour = "#cc2200" if i in highlight else "#000000"
        fill = colour if i in onsets else "#ffffff"
        cls = "onset" if i in onsets else "rest"
        lines.append(
            f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(spec.point_radius)}" '
            f'fill="{fill}" stroke="{colour}" stroke-width="1.5"/>'
        )
        if spec.label_vertices:
            lx, ly = pulse_xy(i, r.n, spec.radius + spec.point_radius + 14, cx, cy)
            lines.append(
                f'<text x="{_f(lx)}" y="{_f(ly)}" font-family="monospace" font-size="11" '
                f'text-anchor="middle" dominant-baseline="middle">A{i}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
