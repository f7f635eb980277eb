"""Independent and collaborative road coverage verification with witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .geometry import (
    DegenerateGeometryError,
    LineSegment,
    Point,
    RoadSegment,
    Sensor,
    chord_interval,
    circle_circle_intersections,
    disk_intersects_rect,
    disk_intersects_segment,
    lens_intersects_rect,
    lens_point_in_rect,
)
from .ids import natural_key

TOP = "<top>"
BOTTOM = "<bottom>"

INDEPENDENT = "independent"
COLLABORATIVE = "collaborative"
UNCOVERED = "uncovered"


class WitnessError(ValueError):
    pass


@dataclass
class CoverageGraph:
    road: RoadSegment
    vertices: list[str]
    edges: set[frozenset]
    adjacency: dict[str, list[str]] = field(repr=False)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def shortest_path(self) -> list[str] | None:
        """Fewest-hop TOP..BOTTOM path; ties go to the smallest id sequence."""
        parent = {TOP: None}
        queue = deque([TOP])
        while queue:
            u = queue.popleft()
            if u == BOTTOM:
                path = []
                while u is not None:
                    path.append(u)
                    u = parent[u]
                return path[::-1]
            for v in self.adjacency[u]:
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        return None


@dataclass
class RoadStatus:
    road_id: str
    status: str
    sensors: list[str] = field(default_factory=list)
    path: list[Point] | None = None

    @property
    def covered(self) -> bool:
        return self.status != UNCOVERED


@dataclass
class CoverageReport:
    entries: list[RoadStatus]

    @property
    def independent_coverage(self) -> bool:
        return all(e.status == INDEPENDENT for e in self.entries)

    @property
    def collaborative_coverage(self) -> bool:
        return all(e.covered for e in self.entries)

    def __getitem__(self, road_id: str) -> RoadStatus:
        for e in self.entries:
            if e.road_id == road_id:
                return e
        raise KeyError(road_id)


def independent_witness(road: RoadSegment, sensors: Sequence[Sensor]) -> Sensor | None:
    top, bottom = road.sides
    for s in sensors:
        if disk_intersects_segment(s, top) and disk_intersects_segment(s, bottom):
            return s
    return None


def verify_independent(roads: Sequence[RoadSegment], sensors: Sequence[Sensor]) -> CoverageReport:
    entries = []
    for road in roads:
        s = independent_witness(road, sensors)
        if s is None:
            entries.append(RoadStatus(road.id, UNCOVERED))
        else:
            entries.append(RoadStatus(road.id, INDEPENDENT, [s.id]))
    return CoverageReport(entries)


def build_coverage_graph(road: RoadSegment, sensors: Sequence[Sensor]) -> CoverageGraph:
    inside = sorted((s for s in sensors if disk_intersects_rect(s, road)),
                    key=lambda s: natural_key(s.id))
    top, bottom = road.sides
    edges: set[frozenset] = set()
    for s in inside:
        if disk_intersects_segment(s, top):
            edges.add(frozenset((TOP, s.id)))
        if disk_intersects_segment(s, bottom):
            edges.add(frozenset((BOTTOM, s.id)))
    for i, a in enumerate(inside):
        for b in inside[i + 1:]:
            if lens_intersects_rect(a, b, road):
                edges.add(frozenset((a.id, b.id)))
    vertices = [TOP] + [s.id for s in inside] + [BOTTOM]
    adjacency: dict[str, list[str]] = {v: [] for v in vertices}
    order = {v: k for k, v in enumerate(vertices)}
    for e in edges:
        u, v = tuple(e)
        adjacency[u].append(v)
        adjacency[v].append(u)
    for v in vertices:
        adjacency[v].sort(key=order.__getitem__)
    return CoverageGraph(road, vertices, edges, adjacency)


def verify_collaborative(roads: Sequence[RoadSegment], sensors: Sequence[Sensor]) -> CoverageReport:
    entries = []
    for road in roads:
        s = independent_witness(road, sensors)
        if s is not None:
            path = extract_witness_path(road, [s], [TOP, s.id, BOTTOM])
            entries.append(RoadStatus(road.id, INDEPENDENT, [s.id], path))
            continue
        graph = build_coverage_graph(road, sensors)
        vpath = graph.shortest_path()
        if vpath is None:
            entries.append(RoadStatus(road.id, UNCOVERED))
        else:
            path = extract_witness_path(road, sensors, vpath, graph)
            entries.append(RoadStatus(road.id, COLLABORATIVE, vpath[1:-1], path))
    return CoverageReport(entries)


def _side_joint(seg: LineSegment, s: Sensor) -> Point:
    t0, t1 = chord_interval(seg, s)
    return seg.at((t0 + t1) / 2)


def _pair_joint(a: Sensor, b: Sensor, road: RoadSegment, prev: Point) -> Point:
    try:
        cands = [p for p in circle_circle_intersections(a, b) if road.contains(p)]
    except DegenerateGeometryError:
        cands = []
    if cands:
        return min(cands, key=prev.dist)
    return lens_point_in_rect(a, b, road)


def extract_witness_path(road: RoadSegment, sensors: Sequence[Sensor], vertex_path: Sequence[str],
                         graph: CoverageGraph | None = None) -> list[Point]:
    """Piecewise-linear top-to-bottom path through the road inside the witness disks.

    Each polyline edge lies in the road rectangle and in one witness disk.
    """
    if graph is None:
        graph = build_coverage_graph(road, sensors)
    vp = list(vertex_path)
    if len(vp) < 3 or vp[0] != TOP or vp[-1] != BOTTOM:
        raise WitnessError("not a witness path")
    for u, v in zip(vp, vp[1:]):
        if not graph.has_edge(u, v):
            raise WitnessError("not a witness path")
    by_id = {s.id: s for s in sensors}
    chain = [by_id[v] for v in vp[1:-1]]
    top, bottom = road.sides
    start = _side_joint(top, chain[0])
    end = _side_joint(bottom, chain[-1])
    if len(chain) == 1:
        return [start, Point((start.x + end.x) / 2, (start.y + end.y) / 2), end]
    path = [start]
    for a, b in zip(chain, chain[1:]):
        path.append(_pair_joint(a, b, road, path[-1]))
    path.append(end)
    return path
