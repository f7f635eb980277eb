"""
Greedy sensor deployment for independent road coverage of axis-parallel roads.

Two placement modes are supported:

* ``arbitrary``: sensors anywhere; up to four per representative road, taken
  from a fixed pattern beyond its right end (at most 8 times optimal).
* ``side-boundary``: sensors only on side boundaries; up to two per
  representative, at its right corners (at most 4 times optimal).

Both sweep each orientation separately in the horizontal frame. The
representatives ("independent set") give the reported lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import geometry
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    Capsule,
    Point,
    RoadSegment,
    Sensor,
    capsules_intersect,
    covers_road,
    from_horizontal_frame,
    segment_intersects_capsule,
)
from .ids import natural_key

ARBITRARY = "arbitrary"
SIDE_BOUNDARY = "side-boundary"

REMOVE_COVERED = "covered"
REMOVE_SHARED = "shared"


class UnsupportedInstanceError(ValueError):
    pass


class PatternPreconditionError(ValueError):
    pass


@dataclass
class Deployment:
    mode: str
    radius: float
    placed: list[Sensor] = field(default_factory=list)
    independent_set: dict[str, list[str]] = field(default_factory=lambda: {HORIZONTAL: [], VERTICAL: []})
    groups: dict[str, list[Sensor]] = field(default_factory=dict)
    covered_by: dict[str, str] = field(default_factory=dict)

    @property
    def representatives(self) -> list[str]:
        return self.independent_set[HORIZONTAL] + self.independent_set[VERTICAL]

    @property
    def lower_bound(self) -> int:
        """Sum of per-orientation independent set sizes.

        Only ``max(|I_h|, |I_v|)`` is a certified bound on the optimum when
        both orientations are present; the sum matches the tabulated figures.
        """
        return len(self.representatives)


def four_sensor_pattern(road: RoadSegment, rho: float) -> list[Point]:
    """Pattern positions s1..s4 beyond the road's right (top) end."""
    w = road.width
    if rho < w - geometry.EPS:
        raise PatternPreconditionError("pattern precondition violated")
    h = road.horizontal()
    xr, yc = h.x_max, (h.y_min + h.y_max) / 2
    d = math.sqrt(4 * rho * rho - (rho + w / 2) ** 2)
    # height of s2/s3: (2rho + w)/4 up to the lens point, plus rho - w beyond it
    up = (6 * rho - 3 * w) / 4
    pts = [Point(xr, yc), Point(xr + d / 2, yc + up), Point(xr + d / 2, yc - up), Point(xr + d, yc)]
    if road.orientation == VERTICAL:
        pts = [from_horizontal_frame(p) for p in pts]
    return pts


def corner_pair(road: RoadSegment) -> list[Point]:
    """Top-right then bottom-right corner, in the horizontal frame sense."""
    h = road.horizontal()
    pts = [Point(h.x_max, h.y_max), Point(h.x_max, h.y_min)]
    if road.orientation == VERTICAL:
        pts = [from_horizontal_frame(p) for p in pts]
    return pts


def coverable_by_one_sensor(ri: RoadSegment, rj: RoadSegment, rho: float, restricted: bool) -> bool:
    ci, cj = Capsule(ri, rho), Capsule(rj, rho)
    if not restricted:
        return capsules_intersect(ci, cj)
    return (any(segment_intersects_capsule(seg, ci) for seg in rj.sides)
            or any(segment_intersects_capsule(seg, cj) for seg in ri.sides))


def _check_instance(roads: Sequence[RoadSegment], rho: float) -> None:
    if not roads:
        return
    w = roads[0].width
    for r in roads:
        if r.orientation not in (HORIZONTAL, VERTICAL):
            raise UnsupportedInstanceError("unsupported instance: non-axis-parallel road")
        if abs(r.width - w) > geometry.EPS:
            raise UnsupportedInstanceError("unsupported instance: mixed road widths")
    if rho < w - geometry.EPS:
        raise UnsupportedInstanceError(f"unsupported instance: radius {rho} below road width {w}")


def _smallest_cover(candidates: list[Point], rho: float, group: list[RoadSegment]) -> list[int]:
    """Indices of the smallest candidate subset covering every road in ``group``.

    Earlier candidates win ties; the full set is the fallback.
    """
    cover = [[covers_road(p, rho, r) for r in group] for p in candidates]
    for k in range(1, len(candidates)):
        for subset in combinations(range(len(candidates)), k):
            if all(any(cover[i][j] for i in subset) for j in range(len(group))):
                return list(subset)
    return list(range(len(candidates)))


def _sweep(roads: list[RoadSegment], rho: float, mode: str, removal: str,
           dep: Deployment, orientation: str) -> None:
    remaining = sorted(roads, key=lambda r: (r.end, natural_key(r.id)))
    while remaining:
        ri = remaining.pop(0)
        dep.independent_set[orientation].append(ri.id)
        ci = Capsule(ri, rho)
        if mode == ARBITRARY:
            candidates = four_sensor_pattern(ri, rho)

            def shares_sensor(rj):
                return capsules_intersect(ci, Capsule(rj, rho))
        else:
            candidates = corner_pair(ri)

            def shares_sensor(rj):
                return any(segment_intersects_capsule(seg, ci) for seg in rj.sides)

        def removable(rj):
            if removal == REMOVE_COVERED and any(covers_road(p, rho, rj) for p in candidates):
                return True
            return shares_sensor(rj)

        group = [ri] + [rj for rj in remaining if removable(rj)]
        gone = {r.id for r in group}
        remaining = [r for r in remaining if r.id not in gone]
        chosen = _smallest_cover(candidates, rho, group)
        sensors = [Sensor(f"{ri.id}.{k + 1}", candidates[k], rho) for k in chosen]
        dep.groups[ri.id] = sensors
        dep.placed.extend(sensors)
        for r in group:
            dep.covered_by[r.id] = ri.id


def deploy(roads: Sequence[RoadSegment], rho: float, mode: str,
           removal: str = REMOVE_COVERED) -> Deployment:
    """Greedy deployment guaranteeing independent coverage of every road.

    After a representative is chosen, the roads that could share one sensor
    with it are always removed. With ``removal="covered"`` (the default) any
    road already covered by the representative's full candidate pattern is
    removed as well; ``removal="shared"`` applies only the sharing test.
    """
    if mode not in (ARBITRARY, SIDE_BOUNDARY):
        raise ValueError(f"unknown deployment mode {mode!r}")
    if removal not in (REMOVE_COVERED, REMOVE_SHARED):
        raise ValueError(f"unknown removal rule {removal!r}")
    _check_instance(roads, rho)
    dep = Deployment(mode, rho)
    for orientation in (HORIZONTAL, VERTICAL):
        _sweep([r for r in roads if r.orientation == orientation], rho, mode, removal, dep, orientation)
    return dep


def deploy_arbitrary(roads: Sequence[RoadSegment], rho: float, removal: str = REMOVE_COVERED) -> Deployment:
    return deploy(roads, rho, ARBITRARY, removal)


def deploy_side_boundary(roads: Sequence[RoadSegment], rho: float,
                         removal: str = REMOVE_COVERED) -> Deployment:
    return deploy(roads, rho, SIDE_BOUNDARY, removal)
