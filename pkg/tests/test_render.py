import re
import xml.etree.ElementTree as ET

import pytest

from palrhythm.algebra import PumpSpec, pump, pump_union
from palrhythm.core import Rhythm, bjorklund
from palrhythm.errors import InvalidArgument
from palrhythm.render import RenderSpec, pulse_xy, render_svg

NS = {"svg": "http://www.w3.org/2000/svg"}


def points(svg):
    root = ET.fromstring(svg.encode())
    return [c for c in root.findall("svg:circle", NS) if c.get("class") in ("onset", "rest")]


def test_figure_one():
    svg = render_svg(bjorklund(5, 13))
    pts = points(svg)
    assert len(pts) == 13
    filled = [i for i, c in enumerate(pts) if c.get("class") == "onset"]
    assert filled == [0, 3, 5, 8, 10]
    assert all(c.get("fill") == "#ffffff" for c in pts if c.get("class") == "rest")
    labels = re.findall(r">A(\d+)<", svg)
    assert labels == [str(i) for i in range(13)]


def test_deterministic():
    r = bjorklund(7, 18)
    spec = RenderSpec(chords=True, title="E(7,18)")
    assert render_svg(r, spec) == render_svg(r, spec)


def test_clockwise_from_top():
    x0, y0 = pulse_xy(0, 4, 10, 0, 0)
    x1, y1 = pulse_xy(1, 4, 10, 0, 0)
    assert (round(x0, 9), round(y0, 9)) == (0, -10)
    assert (round(x1, 9), round(y1, 9)) == (10, 0)


def test_single_point():
    pts = points(render_svg(Rhythm(1, (0,))))
    assert len(pts) == 1 and pts[0].get("class") == "onset"


def test_figure_two_union():
    e = bjorklund(5, 13)
    q1, q2 = pump(e, e, PumpSpec(3, (3, -3, 5, -5), 3, 10))
    pts = points(render_svg(pump_union(q1, q2), RenderSpec(label_vertices=False)))
    assert len(pts) == 39
    assert sum(c.get("class") == "onset" for c in pts) == 13


def test_options():
    e = bjorklund(5, 13)
    svg = render_svg(e, RenderSpec(chords=True, label_vertices=False, highlight=frozenset({3}), title="a<b"))
    assert svg.count("<line") == 10
    assert "<text" not in svg
    assert "a&lt;b" in svg
    assert 'fill="#cc2200"' in svg
    with pytest.raises(InvalidArgument):
        RenderSpec(radius=0)
