"""End-to-end acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line (also collected into the terminal
summary) and then asserts the criterion at its stated tolerance.
"""

import csv
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from roadcover.cli import dispatch
from roadcover.deploy import ARBITRARY, SIDE_BOUNDARY, deploy, four_sensor_pattern
from roadcover.geometry import (
    HORIZONTAL,
    VERTICAL,
    Point,
    Sensor,
    disk_intersects_segment,
    from_horizontal_frame,
    segment_within_disk,
    LineSegment,
)
from roadcover.instance import GenSpec, Region, generate_random
from roadcover.oracle import GridSpec, brute_force_min_sensors, grid_evasion_covered, oracle_independent
from roadcover.verify import INDEPENDENT, build_coverage_graph, verify_collaborative, verify_independent

from conftest import ACCEPTANCE_LINES, hroad

REFERENCE_MEANS = {
    # (n, rho): (side lb, side deployed, arbitrary lb, arbitrary deployed)
    (20, 75): (14.12, 14.58, 10.18, 16.32),
    (30, 75): (18.36, 19.30, 12.46, 22.58),
    (40, 75): (21.66, 23.94, 14.06, 28.48),
    (20, 100): (12.48, 13.08, 7.72, 14.92),
    (30, 100): (15.80, 17.16, 9.18, 19.78),
    (40, 100): (18.08, 20.94, 9.88, 23.42),
}


def _record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# --------------------------------------------------------------------------- #
#  Criteria 1 and 7: verifier against the raster oracle, witness soundness    #
# --------------------------------------------------------------------------- #

def _equivalence_instance(seed):
    rng = np.random.default_rng([seed, 1])
    n = int(rng.integers(1, 9))
    family = seed % 3
    width = float(rng.uniform(45, 60) if family == 2 else rng.uniform(20, 60))
    inst = generate_random(GenSpec(n, Region(0, 0, 400, 400), width, (20, 200), 0.5, seed))
    m = int(rng.integers(0, 26))
    if family == 0:
        # sensors scattered over the whole region
        xy = rng.uniform(-40, 440, (m, 2))
        radii = rng.uniform(30, 120, m)
    elif family == 1:
        # small sensors clustered around the roads
        homes = rng.integers(0, n, m)
        xy = np.array([[rng.uniform(r.x_min - 30, r.x_max + 30), rng.uniform(r.y_min - 30, r.y_max + 30)]
                       for r in (inst.roads[k] for k in homes)]).reshape(m, 2)
        radii = rng.uniform(30, 60, m)
    else:
        # small sensors hugging one side boundary each, too short to span the road alone
        xy, radii = np.empty((m, 2)), rng.uniform(30, 45, m)
        for k in range(m):
            road = inst.roads[int(rng.integers(0, n))]
            h = road.horizontal()
            x = rng.uniform(h.x_min, h.x_max)
            y = h.y_max + rng.uniform(-5, 20) if rng.random() < 0.5 else h.y_min - rng.uniform(-5, 20)
            xy[k] = from_horizontal_frame(Point(x, y)) if road.orientation == VERTICAL else (x, y)
    inst.sensors = [Sensor(f"s{k}", Point(*xy[k]), float(radii[k])) for k in range(m)]
    return inst


def _edges(road, sensors, delta):
    return build_coverage_graph(road, [replace(s, radius=s.radius + delta) for s in sensors]).edges


def _robust(road, sensors, g):
    base = _edges(road, sensors, 0.0)
    return all(_edges(road, sensors, d) == base for d in (-g.diagonal, g.diagonal))


def _witness_problems(road, sensors, status):
    by_id = {s.id: s for s in sensors}
    chain = [by_id[i] for i in status.sensors]
    top, bottom = road.sides
    if status.status == INDEPENDENT:
        s = chain[0]
        if not (disk_intersects_segment(s, top) and disk_intersects_segment(s, bottom)):
            return ["independent witness misses a side boundary"]
    path = status.path
    problems = []
    if top.a.dist(path[0]) + path[0].dist(top.b) - top.a.dist(top.b) > 1e-6:
        problems.append("path does not start on the top boundary")
    if bottom.a.dist(path[-1]) + path[-1].dist(bottom.b) - bottom.a.dist(bottom.b) > 1e-6:
        problems.append("path does not end on the bottom boundary")
    holders = chain * 2 if len(chain) == 1 else chain
    if len(path) != len(holders) + 1:
        return problems + ["path length does not match its sensor chain"]
    for (p, q), s in zip(zip(path, path[1:]), holders):
        if not (road.contains(p) and road.contains(q)):
            problems.append("path leaves the road")
        if p.dist(q) > 0 and not segment_within_disk(LineSegment(p, q), s):
            problems.append(f"edge outside disk {s.id}")
        elif p.dist(q) == 0 and not s.contains(p):
            problems.append(f"joint outside disk {s.id}")
    return problems


@pytest.fixture(scope="module")
def equivalence_runs():
    start = time.perf_counter()
    runs = []
    for seed in range(200):
        inst = _equivalence_instance(seed)
        g = GridSpec(min([r.width for r in inst.roads] + [s.radius for s in inst.sensors]) / 20)
        ind = verify_independent(inst.roads, inst.sensors)
        col = verify_collaborative(inst.roads, inst.sensors)
        runs.append((inst, g, ind, col))
    return runs, time.perf_counter() - start


def test_criterion_1_verifier_matches_oracle(equivalence_runs):
    runs, setup = equivalence_runs
    start = time.perf_counter()
    robust = skipped = 0
    mismatches = []
    tally = {"independent": 0, "collaborative": 0, "uncovered": 0}
    for inst, g, ind, col in runs:
        for road in inst.roads:
            if not _robust(road, inst.sensors, g):
                skipped += 1
                continue
            robust += 1
            tally[col[road.id].status] += 1
            near = [s for s in inst.sensors if build_coverage_graph(road, [s]).vertices[1:-1]]
            if ind[road.id].covered != oracle_independent(road, near, g):
                mismatches.append((inst.meta["seed"], road.id, "independent"))
            if col[road.id].covered != grid_evasion_covered(road, near, g):
                mismatches.append((inst.meta["seed"], road.id, "collaborative"))
    elapsed = setup + time.perf_counter() - start
    ok = not mismatches and elapsed <= 120 and robust > 0
    _record(1, "verifier agrees with raster oracle on margin-robust roads", ok,
            f"{robust} robust roads ({tally['independent']} independent, {tally['collaborative']} collaborative, "
            f"{tally['uncovered']} uncovered), {skipped} knife-edge roads filtered, "
            f"{len(mismatches)} mismatches, {elapsed:.1f}s")
    assert not mismatches, mismatches[:10]
    assert elapsed <= 120
    assert min(tally.values()) > 0


def test_criterion_7_witness_soundness(equivalence_runs):
    runs, _ = equivalence_runs
    checked, problems = 0, []
    for inst, _, ind, col in runs:
        for road in inst.roads:
            for status in (ind[road.id], col[road.id]):
                if not status.covered:
                    continue
                checked += 1
                if status is ind[road.id]:
                    s = next(x for x in inst.sensors if x.id == status.sensors[0])
                    top, bottom = road.sides
                    if not (disk_intersects_segment(s, top) and disk_intersects_segment(s, bottom)):
                        problems.append((inst.meta["seed"], road.id, "independent witness fails"))
                else:
                    problems += [(inst.meta["seed"], road.id, p)
                                 for p in _witness_problems(road, inst.sensors, status)]
    ok = not problems and checked > 0
    _record(7, "every witness is sound", ok, f"{checked} witnesses checked, {len(problems)} problems")
    assert not problems, problems[:10]


# --------------------------------------------------------------------------- #
#  Criteria 2 and 3: deployment validity and approximation bookkeeping        #
# --------------------------------------------------------------------------- #

def _deployment_instance(seed):
    rng = np.random.default_rng([seed, 2])
    n = int(rng.integers(1, 41))
    rho = (75.0, 100.0)[seed % 2]
    mix = (HORIZONTAL, 0.5, VERTICAL)[seed % 3]
    return generate_random(GenSpec(n, orientation=mix, seed=seed)), rho


@pytest.fixture(scope="module")
def deployment_runs():
    runs = []
    for seed in range(500):
        inst, rho = _deployment_instance(seed)
        runs.append((inst, rho, {mode: deploy(inst.roads, rho, mode) for mode in (SIDE_BOUNDARY, ARBITRARY)}))
    return runs


def test_criterion_2_deployments_cover_every_road(deployment_runs):
    failures = []
    for inst, rho, deps in deployment_runs:
        for mode, dep in deps.items():
            report = verify_independent(inst.roads, dep.placed)
            failures += [(inst.meta["seed"], mode, e.road_id) for e in report.entries if not e.covered]
    ok = not failures
    _record(2, "deployments independently cover every road", ok,
            f"{len(deployment_runs)} instances x 2 modes, {len(failures)} uncovered roads")
    assert not failures, failures[:10]


def test_criterion_3_approximation_accounting(deployment_runs):
    violations = []
    for inst, rho, deps in deployment_runs:
        for mode, factor in ((SIDE_BOUNDARY, 2), (ARBITRARY, 4)):
            dep = deps[mode]
            for orient, reps in dep.independent_set.items():
                placed = sum(len(dep.groups[r]) for r in reps)
                if placed > factor * len(reps):
                    violations.append((inst.meta["seed"], mode, orient, placed, len(reps)))
    brute = 0
    for seed in range(40):
        rng = np.random.default_rng([seed, 3])
        n = int(rng.integers(1, 7))
        orient = (HORIZONTAL, VERTICAL)[seed % 2]
        rho = (75.0, 100.0)[(seed // 2) % 2]
        inst = generate_random(GenSpec(n, Region(0, 0, 400, 400), 50, (0, 200), orient, seed))
        dep = deploy(inst.roads, rho, ARBITRARY)
        opt, _ = brute_force_min_sensors(inst.roads, rho, ARBITRARY, pitch=2.0)
        brute += 1
        if opt < dep.lower_bound:
            violations.append((seed, "brute force", opt, dep.lower_bound))
    ok = not violations
    _record(3, "per-orientation 2|I| / 4|I| bounds and brute-force optimum >= |I|", ok,
            f"{len(deployment_runs)} deployment trials, {brute} brute-force instances, {len(violations)} violations")
    assert not violations, violations[:10]


# --------------------------------------------------------------------------- #
#  Criterion 4: four-sensor pattern covers every w-height segment in RCap(2r)  #
# --------------------------------------------------------------------------- #

def _rcap_lows(rho, w, count, rng):
    """Lower endpoints of vertical w-segments with both ends in RCap(2 rho) of the road [0,100]x[0,w]."""
    r2 = 2 * rho
    out = np.empty((0, 2))
    while len(out) < count:
        pts = np.column_stack([rng.uniform(100, 100 + r2, 4 * count), rng.uniform(w - r2, r2, 4 * count)])
        inside = np.ones(len(pts), dtype=bool)
        for dy in (0.0, w):
            for cy in (0.0, w):
                inside &= np.hypot(pts[:, 0] - 100, pts[:, 1] + dy - cy) <= r2
        out = np.vstack([out, pts[inside]])
    return out[:count]


def test_criterion_4_pattern_covers_right_cap():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    violations, worst = 0, -math.inf
    for _ in range(50):
        w = float(rng.uniform(10, 100))
        rho = float(rng.uniform(w, 4 * w))
        centers = np.array(four_sensor_pattern(hroad(0, 0, 100, w), rho))
        lows = _rcap_lows(rho, w, 100_000, rng)
        far = np.maximum(
            np.hypot(lows[:, None, 0] - centers[None, :, 0], lows[:, None, 1] - centers[None, :, 1]),
            np.hypot(lows[:, None, 0] - centers[None, :, 0], lows[:, None, 1] + w - centers[None, :, 1]),
        ).min(axis=1) - rho
        violations += int((far > 1e-6).sum())
        worst = max(worst, float(far.max()) / rho)
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed <= 60
    _record(4, "four-sensor pattern covers w-height segments in RCap(2 rho)", ok,
            f"50 (rho, w) pairs x 100000 segments, {violations} violations, "
            f"smallest slack {-worst:.3g} rho, {elapsed:.1f}s")
    assert violations == 0
    assert elapsed <= 60


# --------------------------------------------------------------------------- #
#  Criterion 5: table reproduction through the simulate command              #
# --------------------------------------------------------------------------- #

def test_criterion_5_table_reproduction(tmp_path):
    out = tmp_path / "tables.csv"
    start = time.perf_counter()
    code = dispatch(["simulate", "--n", "20", "30", "40", "--radius", "75", "100", "--trials", "50",
                     "--seed", "0", "--out", str(out)])
    elapsed = time.perf_counter() - start
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    cols = ["side_lb_mean", "side_deployed_mean", "arb_lb_mean", "arb_deployed_mean"]
    means = {(int(r["n"]), int(float(r["rho"]))): [float(r[c]) for c in cols] for r in rows}
    worst, misses = 0.0, []
    for key, ref in REFERENCE_MEANS.items():
        for col, got, want in zip(cols, means[key], ref):
            rel = abs(got - want) / want
            worst = max(worst, rel)
            if rel > 0.20:
                misses.append(f"n={key[0]} rho={key[1]} {col}: {got:.2f} vs {want:.2f}")
    trend_breaks = []
    for k in range(4):
        for rho in (75, 100):
            seq = [means[(n, rho)][k] for n in (20, 30, 40)]
            if seq != sorted(seq):
                trend_breaks.append(f"{cols[k]} not increasing in n at rho={rho}")
        for n in (20, 30, 40):
            if means[(n, 100)][k] > means[(n, 75)][k]:
                trend_breaks.append(f"{cols[k]} not decreasing in rho at n={n}")
    ok = not misses and not trend_breaks and elapsed <= 300
    _record(5, "simulated means within 20% of the reference means, trends hold", ok,
            f"worst relative error {worst:.1%}, {len(misses)} misses, {len(trend_breaks)} trend breaks, "
            f"{elapsed:.1f}s")
    for key in sorted(means):
        print(f"    n={key[0]} rho={key[1]}: " + " ".join(f"{m:.2f}" for m in means[key])
              + "   reference: " + " ".join(f"{m:.2f}" for m in REFERENCE_MEANS[key]))
    assert not misses, misses
    assert not trend_breaks, trend_breaks
    assert elapsed <= 300


# --------------------------------------------------------------------------- #
#  Criterion 6: exact counts                                                  #
# --------------------------------------------------------------------------- #

def test_criterion_6_exact_counts():
    results = []
    single = [hroad(0, 0, 200, 50, "r1")]
    for mode in (SIDE_BOUNDARY, ARBITRARY):
        dep = deploy(single, 75, mode)
        results.append((f"single {mode}", dep.lower_bound, len(dep.placed), 1))
    for k in (1, 2, 5, 9):
        roads = [hroad(1000 * i, 1000 * (i % 3), 1000 * i + 150, 1000 * (i % 3) + 50, f"r{i}") for i in range(k)]
        dep = deploy(roads, 75, SIDE_BOUNDARY)
        results.append((f"{k} remote side-boundary", dep.lower_bound, len(dep.placed), k))
    bad = [r for r in results if r[1] != r[3] or r[2] != r[3]]
    _record(6, "exact lb/deployed counts", not bad,
            ", ".join(f"{name}: lb={lb} deployed={d}" for name, lb, d, _ in results))
    assert not bad, bad
