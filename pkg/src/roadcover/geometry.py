"""
Planar primitives for road coverage: points, segments, road rectangles,
sensing disks, capsules and caps.

All region predicates use closed semantics: touching counts as intersecting,
up to the global tolerance ``EPS`` (override with ``ROADCOVER_EPS``).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

EPS: float = float(os.environ.get("ROADCOVER_EPS", "1e-9"))

HORIZONTAL = "h"
VERTICAL = "v"


class DegenerateGeometryError(ValueError):
    pass


class Point(NamedTuple):
    x: float
    y: float

    def dist(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class LineSegment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a.dist(self.b) <= EPS:
            raise DegenerateGeometryError(f"degenerate segment {self.a}-{self.b}")

    @property
    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)

    def at(self, t: float) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))


# Rotating by -90 degrees maps a vertical road's top end onto a horizontal
# road's right end, so every horizontal-only routine applies unchanged.
def to_horizontal_frame(p: Point) -> Point:
    return Point(p.y, -p.x)


def from_horizontal_frame(p: Point) -> Point:
    return Point(-p.y, p.x)


@dataclass(frozen=True)
class RoadSegment:
    """Axis-parallel road rectangle.

    ``lo`` is the min corner, ``length`` runs along the orientation axis and
    ``width`` across it. For a vertical road the side boundaries are the
    left and right edges and its "right end" is the top end.
    """

    id: str
    orientation: str
    lo: Point
    length: float
    width: float

    def __post_init__(self):
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"orientation must be 'h' or 'v', got {self.orientation!r}")
        if not (math.isfinite(self.lo.x) and math.isfinite(self.lo.y)):
            raise ValueError("road corner must be finite")
        if not self.length > EPS:
            raise ValueError(f"road {self.id}: length must be positive")
        if not self.width > EPS:
            raise ValueError(f"road {self.id}: width must be positive")

    @property
    def x_min(self) -> float:
        return self.lo.x

    @property
    def y_min(self) -> float:
        return self.lo.y

    @property
    def x_max(self) -> float:
        return self.lo.x + (self.length if self.orientation == HORIZONTAL else self.width)

    @property
    def y_max(self) -> float:
        return self.lo.y + (self.width if self.orientation == HORIZONTAL else self.length)

    @property
    def center(self) -> Point:
        return Point((self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2)

    @property
    def end(self) -> float:
        """Coordinate of the right end boundary (top end for vertical roads)."""
        return self.x_max if self.orientation == HORIZONTAL else self.y_max

    def horizontal(self) -> RoadSegment:
        """This road expressed in the horizontal frame (identity for horizontal roads)."""
        if self.orientation == HORIZONTAL:
            return self
        return RoadSegment(self.id, HORIZONTAL, Point(self.lo.y, -self.lo.x - self.width),
                           self.length, self.width)

    @property
    def top(self) -> LineSegment:
        h = self.horizontal()
        a, b = Point(h.x_min, h.y_max), Point(h.x_max, h.y_max)
        if self.orientation == VERTICAL:
            a, b = from_horizontal_frame(a), from_horizontal_frame(b)
        return LineSegment(a, b)

    @property
    def bottom(self) -> LineSegment:
        h = self.horizontal()
        a, b = Point(h.x_min, h.y_min), Point(h.x_max, h.y_min)
        if self.orientation == VERTICAL:
            a, b = from_horizontal_frame(a), from_horizontal_frame(b)
        return LineSegment(a, b)

    @property
    def sides(self) -> tuple[LineSegment, LineSegment]:
        return self.top, self.bottom

    def contains(self, p: Point) -> bool:
        return (self.x_min - EPS <= p.x <= self.x_max + EPS
                and self.y_min - EPS <= p.y <= self.y_max + EPS)


@dataclass(frozen=True)
class Sensor:
    id: str
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > EPS:
            raise ValueError(f"sensor {self.id}: radius must be positive")

    def contains(self, p: Point) -> bool:
        return self.center.dist(p) <= self.radius + EPS


@dataclass(frozen=True)
class Capsule:
    """Points within ``radius`` of both side boundaries of ``road``."""

    road: RoadSegment
    radius: float

    def contains(self, p: Point) -> bool:
        return capsule_contains(self, p)

    def bbox(self) -> tuple[float, float, float, float]:
        h = self.road.horizontal()
        half = h.width / 2
        reach = math.sqrt(max(self.radius**2 - half**2, 0.0))
        lo_y, hi_y = h.y_max - self.radius, h.y_min + self.radius
        box = (h.x_min - reach, lo_y, h.x_max + reach, hi_y)
        if self.road.orientation == HORIZONTAL:
            return box
        # back from the horizontal frame: (x', y') -> (-y', x')
        return (-box[3], box[0], -box[1], box[2])


@dataclass(frozen=True)
class Cap:
    """The lobe of a capsule beyond one end boundary ("right" is the top end for vertical roads)."""

    road: RoadSegment
    radius: float
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")

    def contains(self, p: Point) -> bool:
        h = self.road.horizontal()
        q = p if self.road.orientation == HORIZONTAL else to_horizontal_frame(p)
        if self.side == "right" and q.x < h.x_max - EPS:
            return False
        if self.side == "left" and q.x > h.x_min + EPS:
            return False
        return capsule_contains(Capsule(self.road, self.radius), p)


# --------------------------------------------------------------------------- #
#  Distances and basic predicates                                             #
# --------------------------------------------------------------------------- #

def point_segment_distance(p: Point, s: LineSegment) -> float:
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(p.x - (s.a.x + t * dx), p.y - (s.a.y + t * dy))


def disk_intersects_segment(s: Sensor, seg: LineSegment) -> bool:
    return point_segment_distance(s.center, seg) <= s.radius + EPS


def disk_intersects_rect(s: Sensor, r: RoadSegment) -> bool:
    dx = max(r.x_min - s.center.x, 0.0, s.center.x - r.x_max)
    dy = max(r.y_min - s.center.y, 0.0, s.center.y - r.y_max)
    return math.hypot(dx, dy) <= s.radius + EPS


def segment_within_disk(seg: LineSegment, s: Sensor) -> bool:
    return s.contains(seg.a) and s.contains(seg.b)


def chord_interval(seg: LineSegment, s: Sensor) -> tuple[float, float] | None:
    """Parameter range ``[t0, t1]`` of ``seg`` lying in the disk, or None."""
    dx, dy = seg.b.x - seg.a.x, seg.b.y - seg.a.y
    fx, fy = seg.a.x - s.center.x, seg.a.y - s.center.y
    a = dx * dx + dy * dy
    b = 2 * (fx * dx + fy * dy)
    c = fx * fx + fy * fy - (s.radius + EPS) ** 2
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    root = math.sqrt(disc)
    t0, t1 = max((-b - root) / (2 * a), 0.0), min((-b + root) / (2 * a), 1.0)
    if t0 > t1:
        return None
    return t0, t1


def circle_circle_intersections(a: Sensor, b: Sensor) -> list[Point]:
    d = a.center.dist(b.center)
    if d <= EPS:
        if abs(a.radius - b.radius) <= EPS:
            raise DegenerateGeometryError("degenerate: infinite intersection")
        return []
    return _circle_circle(a.center, a.radius, b.center, b.radius)


def _circle_circle(c1: Point, r1: float, c2: Point, r2: float) -> list[Point]:
    d = c1.dist(c2)
    if d <= EPS or d > r1 + r2 + EPS or d < abs(r1 - r2) - EPS:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    ux, uy = (c2.x - c1.x) / d, (c2.y - c1.y) / d
    mx, my = c1.x + a * ux, c1.y + a * uy
    if h2 <= 0:
        return [Point(mx, my)]
    h = math.sqrt(h2)
    return [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]


def _line_circle(p: Point, q: Point, c: Point, r: float) -> list[Point]:
    dx, dy = q.x - p.x, q.y - p.y
    fx, fy = p.x - c.x, p.y - c.y
    a = dx * dx + dy * dy
    b = 2 * (fx * dx + fy * dy)
    cc = fx * fx + fy * fy - r * r
    disc = b * b - 4 * a * cc
    # tangency slack: a distance error of EPS maps to this discriminant error
    if disc < -8 * a * r * EPS:
        return []
    if disc <= 0:
        t = -b / (2 * a)
        return [Point(p.x + t * dx, p.y + t * dy)]
    root = math.sqrt(disc)
    return [Point(p.x + t * dx, p.y + t * dy) for t in ((-b - root) / (2 * a), (-b + root) / (2 * a))]


def _line_line(p1: Point, q1: Point, p2: Point, q2: Point) -> list[Point]:
    d1x, d1y = q1.x - p1.x, q1.y - p1.y
    d2x, d2y = q2.x - p2.x, q2.y - p2.y
    den = d1x * d2y - d1y * d2x
    if abs(den) <= 1e-15 * math.hypot(d1x, d1y) * math.hypot(d2x, d2y):
        return []
    t = ((p2.x - p1.x) * d2y - (p2.y - p1.y) * d2x) / den
    return [Point(p1.x + t * d1x, p1.y + t * d1y)]


# --------------------------------------------------------------------------- #
#  Convex region feasibility                                                  #
# --------------------------------------------------------------------------- #
#
# A common point of closed convex regions, if one exists, is found among:
# pairwise intersections of their boundary curves, the joints where a single
# boundary switches curve, and one interior anchor per region (for the case
# where one region lies inside all the others).

class _Disk:
    def __init__(self, center: Point, r: float):
        self.c, self.r = center, r

    def contains(self, p: Point) -> bool:
        return self.c.dist(p) <= self.r + EPS

    def curves(self):
        return [("c", self.c, self.r)]

    def anchors(self):
        return [self.c]


class _Stadium:
    """Minkowski sum of a segment and a disk; ``r == 0`` is the bare segment."""

    def __init__(self, seg: LineSegment, r: float):
        self.seg, self.r = seg, r

    def contains(self, p: Point) -> bool:
        return point_segment_distance(p, self.seg) <= self.r + EPS

    def curves(self):
        a, b = self.seg.a, self.seg.b
        if self.r == 0:
            return [("l", a, b)]
        ln = a.dist(b)
        nx, ny = -(b.y - a.y) / ln * self.r, (b.x - a.x) / ln * self.r
        return [("l", Point(a.x + nx, a.y + ny), Point(b.x + nx, b.y + ny)),
                ("l", Point(a.x - nx, a.y - ny), Point(b.x - nx, b.y - ny)),
                ("c", a, self.r), ("c", b, self.r)]

    def anchors(self):
        a, b = self.seg.a, self.seg.b
        pts = [self.seg.midpoint, a, b]
        if self.r > 0:
            for kind, p, q in self.curves()[:2]:
                pts += [p, q]
        return pts


class _Box:
    def __init__(self, x0: float, y0: float, x1: float, y1: float):
        self.x0, self.y0, self.x1, self.y1 = x0, y0, x1, y1

    def contains(self, p: Point) -> bool:
        return self.x0 - EPS <= p.x <= self.x1 + EPS and self.y0 - EPS <= p.y <= self.y1 + EPS

    def curves(self):
        c = self.corners()
        return [("l", c[i], c[(i + 1) % 4]) for i in range(4)]

    def corners(self):
        return [Point(self.x0, self.y0), Point(self.x1, self.y0),
                Point(self.x1, self.y1), Point(self.x0, self.y1)]

    def anchors(self):
        return self.corners() + [Point((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)]


def _curve_intersections(u, v) -> list[Point]:
    if u[0] == "l" and v[0] == "l":
        return _line_line(u[1], u[2], v[1], v[2])
    if u[0] == "c" and v[0] == "c":
        return _circle_circle(u[1], u[2], v[1], v[2])
    if u[0] == "c":
        u, v = v, u
    return _line_circle(u[1], u[2], v[1], v[2])


def common_point(regions: Sequence) -> Point | None:
    """A point lying in every region (within EPS), or None if they are disjoint."""

    def inside(p):
        return all(reg.contains(p) for reg in regions)

    for reg in regions:
        for p in reg.anchors():
            if inside(p):
                return p
    curves = [reg.curves() for reg in regions]
    for i, j in combinations(range(len(regions)), 2):
        for u in curves[i]:
            for v in curves[j]:
                for p in _curve_intersections(u, v):
                    if inside(p):
                        return p
    return None


def _box(r: RoadSegment) -> _Box:
    return _Box(r.x_min, r.y_min, r.x_max, r.y_max)


def _capsule_regions(c: Capsule) -> list[_Stadium]:
    return [_Stadium(seg, c.radius) for seg in c.road.sides]


def lens_point_in_rect(a: Sensor, b: Sensor, r: RoadSegment) -> Point | None:
    return common_point([_Disk(a.center, a.radius), _Disk(b.center, b.radius), _box(r)])


def lens_intersects_rect(a: Sensor, b: Sensor, r: RoadSegment) -> bool:
    if a.center.dist(b.center) > a.radius + b.radius + EPS:
        return False
    if not (disk_intersects_rect(a, r) and disk_intersects_rect(b, r)):
        return False
    return lens_point_in_rect(a, b, r) is not None


def capsule_contains(c: Capsule, p: Point) -> bool:
    return all(point_segment_distance(p, seg) <= c.radius + EPS for seg in c.road.sides)


def _boxes_overlap(b1, b2) -> bool:
    return not (b1[2] < b2[0] - EPS or b2[2] < b1[0] - EPS
                or b1[3] < b2[1] - EPS or b2[3] < b1[1] - EPS)


def capsule_common_point(c1: Capsule, c2: Capsule) -> Point | None:
    if not _boxes_overlap(c1.bbox(), c2.bbox()):
        return None
    return common_point(_capsule_regions(c1) + _capsule_regions(c2))


def capsules_intersect(c1: Capsule, c2: Capsule) -> bool:
    if not _boxes_overlap(c1.bbox(), c2.bbox()):
        return False
    if c1.road.orientation == c2.road.orientation:
        # straight middle parts overlapping is the common case
        h1, h2 = c1.road.horizontal(), c2.road.horizontal()
        if (max(h1.x_min, h2.x_min) <= min(h1.x_max, h2.x_max) + EPS
                and max(h1.y_max - c1.radius, h2.y_max - c2.radius)
                <= min(h1.y_min + c1.radius, h2.y_min + c2.radius) + EPS):
            return True
    return capsule_common_point(c1, c2) is not None


def segment_capsule_point(seg: LineSegment, c: Capsule) -> Point | None:
    return common_point([_Stadium(seg, 0.0)] + _capsule_regions(c))


def segment_intersects_capsule(seg: LineSegment, c: Capsule) -> bool:
    bx = c.bbox()
    sb = (min(seg.a.x, seg.b.x), min(seg.a.y, seg.b.y), max(seg.a.x, seg.b.x), max(seg.a.y, seg.b.y))
    if not _boxes_overlap(bx, sb):
        return False
    return segment_capsule_point(seg, c) is not None


def covers_road(center: Point, radius: float, road: RoadSegment) -> bool:
    """True if a disk at ``center`` meets both side boundaries of ``road``."""
    return all(point_segment_distance(center, seg) <= radius + EPS for seg in road.sides)
