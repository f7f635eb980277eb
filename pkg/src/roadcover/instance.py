"""Random instance generation and the JSON instance file format."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .geometry import EPS, HORIZONTAL, VERTICAL, Point, RoadSegment, Sensor

GENERATOR = "numpy.PCG64 via SeedSequence(seed).spawn(n), one child stream per road"


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def contains_road(self, r: RoadSegment) -> bool:
        return (r.x_min >= self.x_min - EPS and r.y_min >= self.y_min - EPS
                and r.x_max <= self.x_max + EPS and r.y_max <= self.y_max + EPS)


@dataclass
class Instance:
    region: Region
    roads: list[RoadSegment]
    sensors: list[Sensor] = field(default_factory=list)
    default_radius: float | None = None
    meta: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class GenSpec:
    """Random road instance parameters.

    ``orientation`` is ``"h"``, ``"v"`` or a float giving the probability
    that a road is vertical. Lengths are drawn from ``(lo, hi]``.
    """

    n: int
    region: Region = Region(0.0, 0.0, 1000.0, 1000.0)
    width: float = 50.0
    length_range: tuple[float, float] = (0.0, 200.0)
    orientation: str | float = HORIZONTAL
    seed: int = 0


def generate_random(spec: GenSpec) -> Instance:
    lo, hi = spec.length_range
    if spec.n < 1:
        raise InstanceError("n must be at least 1")
    if not 0 <= lo < hi:
        raise InstanceError(f"length range must satisfy 0 <= lo < hi, got ({lo}, {hi}]")
    if spec.width <= 0:
        raise InstanceError("width must be positive")
    reg = spec.region
    span_x, span_y = reg.x_max - reg.x_min, reg.y_max - reg.y_min
    p_vertical = {HORIZONTAL: 0.0, VERTICAL: 1.0}.get(spec.orientation, spec.orientation)
    if not isinstance(p_vertical, (int, float)) or not 0 <= p_vertical <= 1:
        raise InstanceError(f"bad orientation mix {spec.orientation!r}")
    need_h = p_vertical < 1 and (hi > span_x or spec.width > span_y)
    need_v = p_vertical > 0 and (hi > span_y or spec.width > span_x)
    if need_h or need_v:
        raise InstanceError("region cannot contain a road of maximum length")

    roads = []
    children = np.random.SeedSequence(spec.seed).spawn(spec.n)
    for i, child in enumerate(children):
        rng = np.random.Generator(np.random.PCG64(child))
        u_orient, u_len, u_a, u_b = rng.random(4)
        vertical = u_orient < p_vertical
        length = hi - u_len * (hi - lo)
        along, across = (span_y, span_x) if vertical else (span_x, span_y)
        a = u_a * (along - length)
        b = u_b * (across - spec.width)
        if vertical:
            lo_pt = Point(reg.x_min + b, reg.y_min + a)
        else:
            lo_pt = Point(reg.x_min + a, reg.y_min + b)
        roads.append(RoadSegment(f"r{i}", VERTICAL if vertical else HORIZONTAL, lo_pt, length, spec.width))
    meta = {"generator": GENERATOR, "seed": spec.seed}
    return Instance(reg, roads, meta=meta)


# --------------------------------------------------------------------------- #
#  JSON format                                                                #
# --------------------------------------------------------------------------- #

def _num(obj: dict, key: str, where: str, required: bool = True) -> float | None:
    if key not in obj:
        if required:
            raise InstanceError(f"{where}: missing field '{key}'")
        return None
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise InstanceError(f"{where}: field '{key}' must be a finite number")
    return float(v)


def _ident(obj: dict, where: str) -> str:
    if "id" not in obj or not isinstance(obj["id"], (str, int)) or isinstance(obj["id"], bool):
        raise InstanceError(f"{where}: field 'id' missing or not a string/integer")
    return str(obj["id"])


def parse_instance(text: bytes | str) -> Instance:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InstanceError(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("malformed document: top level must be an object")
    if not isinstance(doc.get("region"), dict):
        raise InstanceError("field 'region' missing or not an object")
    rg = doc["region"]
    region = Region(*(_num(rg, k, "region") for k in ("x_min", "y_min", "x_max", "y_max")))
    if region.x_max <= region.x_min or region.y_max <= region.y_min:
        raise InstanceError("region: field 'x_max'/'y_max' must exceed the minimum")
    default_radius = _num(doc, "default_radius", "document", required=False)
    if default_radius is not None and default_radius <= 0:
        raise InstanceError("field 'default_radius' must be positive")

    roads, seen = [], set()
    if not isinstance(doc.get("roads", []), list):
        raise InstanceError("field 'roads' must be a list")
    for k, item in enumerate(doc.get("roads", [])):
        where = f"roads[{k}]"
        if not isinstance(item, dict):
            raise InstanceError(f"{where}: must be an object")
        rid = _ident(item, where)
        if rid in seen:
            raise InstanceError(f"{where}: duplicate 'id' {rid!r}")
        seen.add(rid)
        orient = item.get("orientation")
        if orient not in (HORIZONTAL, VERTICAL):
            raise InstanceError(f"{where}: field 'orientation' must be 'h' or 'v'")
        x, y = _num(item, "x", where), _num(item, "y", where)
        length, width = _num(item, "length", where), _num(item, "width", where)
        if length <= 0:
            raise InstanceError(f"{where}: field 'length' must be positive, got {length}")
        if width <= 0:
            raise InstanceError(f"{where}: field 'width' must be positive, got {width}")
        try:
            road = RoadSegment(rid, orient, Point(x, y), length, width)
        except ValueError as exc:
            raise InstanceError(f"{where}: {exc}") from exc
        if not region.contains_road(road):
            raise InstanceError(f"{where}: road {rid!r} lies outside 'region'")
        roads.append(road)

    sensors, seen = [], set()
    if not isinstance(doc.get("sensors", []), list):
        raise InstanceError("field 'sensors' must be a list")
    for k, item in enumerate(doc.get("sensors", [])):
        where = f"sensors[{k}]"
        if not isinstance(item, dict):
            raise InstanceError(f"{where}: must be an object")
        sid = _ident(item, where)
        if sid in seen:
            raise InstanceError(f"{where}: duplicate 'id' {sid!r}")
        seen.add(sid)
        radius = _num(item, "radius", where, required=False)
        if radius is None:
            radius = default_radius
        if radius is None:
            raise InstanceError(f"{where}: field 'radius' missing and no 'default_radius'")
        if radius <= 0:
            raise InstanceError(f"{where}: field 'radius' must be positive")
        sensors.append(Sensor(sid, Point(_num(item, "x", where), _num(item, "y", where)), radius))

    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise InstanceError("field 'meta' must be an object")
    return Instance(region, roads, sensors, default_radius, meta)


def serialize_instance(inst: Instance) -> bytes:
    doc: dict[str, Any] = {}
    if inst.meta:
        doc["meta"] = inst.meta
    r = inst.region
    doc["region"] = {"x_min": r.x_min, "y_min": r.y_min, "x_max": r.x_max, "y_max": r.y_max}
    if inst.default_radius is not None:
        doc["default_radius"] = inst.default_radius
    doc["roads"] = [
        {"id": rd.id, "orientation": rd.orientation, "x": rd.lo.x, "y": rd.lo.y,
         "length": rd.length, "width": rd.width}
        for rd in inst.roads
    ]
    doc["sensors"] = []
    for s in inst.sensors:
        item = {"id": s.id, "x": s.center.x, "y": s.center.y}
        if inst.default_radius is None or s.radius != inst.default_radius:
            item["radius"] = s.radius
        doc["sensors"].append(item)
    # float repr is the shortest string that round-trips exactly
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
