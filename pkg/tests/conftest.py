import math

import numpy as np
import pytest

from roadcover.geometry import Point, RoadSegment, Sensor

ACCEPTANCE_LINES: list[str] = []


def hroad(x0, y0, x1, y1, rid="r"):
    return RoadSegment(rid, "h", Point(x0, y0), x1 - x0, y1 - y0)


def vroad(x0, y0, x1, y1, rid="r"):
    return RoadSegment(rid, "v", Point(x0, y0), y1 - y0, x1 - x0)


def sensor(x, y, r, sid="s"):
    return Sensor(sid, Point(x, y), r)


def lipschitz_min(f, x0, y0, x1, y1, step):
    """Grid minimum of a 1-Lipschitz field over a box, plus the slack bounding the true minimum."""
    nx = max(2, math.ceil((x1 - x0) / step) + 1)
    ny = max(2, math.ceil((y1 - y0) / step) + 1)
    X, Y = np.meshgrid(np.linspace(x0, x1, nx), np.linspace(y0, y1, ny), indexing="ij")
    hx, hy = (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1)
    return float(f(X, Y).min()), math.hypot(hx, hy) / 2


def seg_dist(X, Y, seg):
    ax, ay, bx, by = seg.a.x, seg.a.y, seg.b.x, seg.b.y
    dx, dy = bx - ax, by - ay
    t = np.clip(((X - ax) * dx + (Y - ay) * dy) / (dx * dx + dy * dy), 0, 1)
    return np.hypot(X - (ax + t * dx), Y - (ay + t * dy))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
