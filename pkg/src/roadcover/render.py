"""Static SVG pictures of instances and deployments."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .deploy import Deployment
from .geometry import Capsule, RoadSegment
from .ids import natural_key
from .instance import Instance


def _f(v: float) -> str:
    return f"{v:.6g}" if abs(v) < 1e6 else f"{v:.1f}"


def capsule_path(c: Capsule) -> str:
    """SVG path data for a capsule outline: two flat edges joined by two-arc lenses."""
    road = c.road
    top, bottom = road.sides
    rho = c.radius
    h = road.horizontal()
    reach = math.sqrt(max(rho**2 - (h.width / 2) ** 2, 0.0))
    # walk the outline in the horizontal frame, then map each vertex back
    xl, xr, yb, yt = h.x_min, h.x_max, h.y_min, h.y_max
    yc = (yb + yt) / 2
    pts = [(xl, yt - rho), (xr, yt - rho), (xr + reach, yc), (xr, yb + rho), (xl, yb + rho), (xl - reach, yc)]
    if road.orientation == "v":
        pts = [(-y, x) for x, y in pts]
    p = [(_f(x), _f(y)) for x, y in pts]
    r = _f(rho)
    # each lens is bounded by arcs of radius rho; sweep flags keep the arcs convex
    return (f"M {p[0][0]} {p[0][1]} L {p[1][0]} {p[1][1]} "
            f"A {r} {r} 0 0 1 {p[2][0]} {p[2][1]} A {r} {r} 0 0 1 {p[3][0]} {p[3][1]} "
            f"L {p[4][0]} {p[4][1]} "
            f"A {r} {r} 0 0 1 {p[5][0]} {p[5][1]} A {r} {r} 0 0 1 {p[0][0]} {p[0][1]} Z")


def render_svg(instance: Instance, deployment: Deployment | None = None, show_capsules: bool = False,
               capsule_radius: float | None = None) -> bytes:
    sensors = list(deployment.placed) if deployment is not None else list(instance.sensors)
    reg = instance.region
    margin = max([s.radius for s in sensors] + [0.0])
    x0, y0 = reg.x_min - margin, reg.y_min - margin
    width, height = reg.x_max - reg.x_min + 2 * margin, reg.y_max - reg.y_min + 2 * margin

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"{_f(x0)} {_f(-(y0 + height))} {_f(width)} {_f(height)}",
        "width": "800",
        "height": _f(800 * height / width),
    })
    # flip y so the picture uses mathematical orientation
    g = ET.SubElement(svg, "g", {"transform": "scale(1,-1)"})
    ET.SubElement(g, "polyline", {
        "class": "frame", "fill": "none", "stroke": "black", "stroke-width": "2",
        "points": " ".join(f"{_f(x)},{_f(y)}" for x, y in [
            (reg.x_min, reg.y_min), (reg.x_max, reg.y_min), (reg.x_max, reg.y_max),
            (reg.x_min, reg.y_max), (reg.x_min, reg.y_min)]),
    })
    roads: list[RoadSegment] = sorted(instance.roads, key=lambda r: natural_key(r.id))
    for r in roads:
        ET.SubElement(g, "rect", {
            "id": f"road-{r.id}", "x": _f(r.x_min), "y": _f(r.y_min),
            "width": _f(r.x_max - r.x_min), "height": _f(r.y_max - r.y_min),
            "fill": "#9a9a9a", "fill-opacity": "0.7",
        })
    rho = capsule_radius
    if rho is None and deployment is not None:
        rho = deployment.radius
    if rho is None:
        rho = instance.default_radius
    if show_capsules and rho is not None:
        for r in roads:
            if rho >= r.width:
                ET.SubElement(g, "path", {
                    "class": "capsule", "d": capsule_path(Capsule(r, rho)),
                    "fill": "none", "stroke": "#3070c0", "stroke-dasharray": "4 3",
                })
    for s in sorted(sensors, key=lambda s: natural_key(s.id)):
        ET.SubElement(g, "circle", {
            "id": f"sensor-{s.id}", "cx": _f(s.center.x), "cy": _f(s.center.y), "r": _f(s.radius),
            "fill": "none", "stroke": "#c03030",
        })
    ET.indent(svg)
    return ET.tostring(svg, encoding="utf-8", xml_declaration=True) + b"\n"
