"""
Brute-force reference answers: raster evasion search and exhaustive set cover.

These deliberately avoid the analytic predicates used by ``verify`` and
``deploy`` so they can serve as independent checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy import ndimage

from .geometry import RoadSegment, Sensor

_EIGHT = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class GridSpec:
    cell: float

    def __post_init__(self):
        if not self.cell > 0:
            raise ValueError("grid cell must be positive")

    @property
    def diagonal(self) -> float:
        return self.cell * math.sqrt(2)

    @classmethod
    def for_instance(cls, roads: Sequence[RoadSegment], sensors: Sequence[Sensor], divisions: int = 20):
        widths = [r.width for r in roads] + [s.radius for s in sensors]
        return cls(min(widths) / divisions)


def _free_cells(road: RoadSegment, sensors: Sequence[Sensor], g: GridSpec) -> np.ndarray:
    """Boolean raster (axis 0 along the road) of cells whose centres no disk covers."""
    h = road.horizontal()
    nx = max(1, math.ceil(h.length / g.cell))
    ny = max(1, math.ceil(h.width / g.cell))
    # cell centres spread evenly so the first and last columns sit on the end boundaries' sides
    xs = h.x_min + (np.arange(nx) + 0.5) * (h.length / nx)
    ys = h.y_min + (np.arange(ny) + 0.5) * (h.width / ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    if road.orientation == "v":
        # undo the horizontal-frame rotation: (x', y') -> (-y', x')
        X, Y = -Y, X
    free = np.ones(X.shape, dtype=bool)
    for s in sensors:
        free &= (X - s.center.x) ** 2 + (Y - s.center.y) ** 2 > s.radius**2
    return free


def grid_evasion_covered(road: RoadSegment, sensors: Sequence[Sensor], g: GridSpec) -> bool:
    """True when no 8-connected chain of free cells runs from one end of the road to the other."""
    free = _free_cells(road, sensors, g)
    labels, _ = ndimage.label(free, structure=_EIGHT)
    start = set(np.unique(labels[0][labels[0] > 0]))
    finish = set(np.unique(labels[-1][labels[-1] > 0]))
    return not (start & finish)


def oracle_independent(road: RoadSegment, sensors: Sequence[Sensor], g: GridSpec) -> bool:
    return any(grid_evasion_covered(road, [s], g) for s in sensors)


# --------------------------------------------------------------------------- #
#  Exhaustive minimum deployment                                              #
# --------------------------------------------------------------------------- #

def _side_distances(xs: np.ndarray, ys: np.ndarray, road: RoadSegment) -> np.ndarray:
    """Larger of the distances from each point to the two side boundaries."""
    out = np.zeros(xs.shape)
    for seg in road.sides:
        ax, ay, bx, by = seg.a.x, seg.a.y, seg.b.x, seg.b.y
        dx, dy = bx - ax, by - ay
        t = np.clip(((xs - ax) * dx + (ys - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        out = np.maximum(out, np.hypot(xs - (ax + t * dx), ys - (ay + t * dy)))
    return out


def _candidates(roads: Sequence[RoadSegment], rho: float, mode: str, pitch: float) -> np.ndarray:
    pts = []
    for r in roads:
        if mode == "arbitrary":
            x0, y0 = r.x_min - rho, r.y_min - rho
            xs = np.arange(x0, r.x_max + rho + pitch, pitch)
            ys = np.arange(y0, r.y_max + rho + pitch, pitch)
            X, Y = np.meshgrid(xs, ys, indexing="ij")
            X, Y = X.ravel(), Y.ravel()
            keep = _side_distances(X, Y, r) <= rho
            pts.append(np.column_stack([X[keep], Y[keep]]))
        else:
            for seg in r.sides:
                n = max(1, math.ceil(seg.a.dist(seg.b) / pitch))
                t = np.linspace(0.0, 1.0, n + 1)
                pts.append(np.column_stack([seg.a.x + t * (seg.b.x - seg.a.x), seg.a.y + t * (seg.b.y - seg.a.y)]))
    return np.vstack(pts)


def brute_force_min_sensors(roads: Sequence[RoadSegment], rho: float, mode: str = "arbitrary",
                            pitch: float = 2.0) -> tuple[int, list[tuple[float, float]]]:
    """Smallest number of sensors (radius ``rho``) on a candidate lattice that independently cover every road.

    Candidates are lattice points inside each road's capsule (``arbitrary``) or
    points spaced ``pitch`` apart along the side boundaries (``side-boundary``).
    Returns the count and one optimal placement.
    """
    if len(roads) > 6:
        raise ValueError("brute force is limited to 6 roads")
    if not roads:
        return 0, []
    pts = _candidates(roads, rho, mode, pitch)
    masks = np.zeros(len(pts), dtype=np.int64)
    for j, r in enumerate(roads):
        masks |= (_side_distances(pts[:, 0], pts[:, 1], r) <= rho).astype(np.int64) << j
    best: dict[int, int] = {}
    for k, m in enumerate(masks.tolist()):
        if m and m not in best:
            best[m] = k
    full = (1 << len(roads)) - 1
    reach = 0
    for m in best:
        reach |= m
    if reach != full:
        missing = [roads[j].id for j in range(len(roads)) if not reach >> j & 1]
        raise ValueError(f"road uncoverable at this rho: {', '.join(missing)}")
    # drop signatures dominated by another
    sigs = [m for m in best if not any(o != m and o & m == m for o in best)]
    for size in range(1, len(roads) + 1):
        for combo in combinations(sigs, size):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return size, [tuple(pts[best[m]]) for m in combo]
    raise AssertionError("unreachable: the full signature set covers every road")
