"""Seeded batch experiments comparing the two deployment modes."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from statistics import fmean
from typing import Sequence

from .deploy import ARBITRARY, SIDE_BOUNDARY, deploy
from .geometry import HORIZONTAL
from .instance import GenSpec, Region, generate_random
from .verify import verify_independent

REGION = Region(0.0, 0.0, 1000.0, 1000.0)
WIDTH = 50.0
LENGTHS = (0.0, 200.0)

CSV_COLUMNS = ["n", "rho", "trials", "side_lb_mean", "side_deployed_mean", "arb_lb_mean", "arb_deployed_mean"]


class TrialError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrialResult:
    seed: int
    n: int
    rho: float
    side_lb: int
    side_deployed: int
    arb_lb: int
    arb_deployed: int


@dataclass(frozen=True)
class TableRow:
    n: int
    rho: float
    trials: int
    side_lb_mean: float
    side_deployed_mean: float
    arb_lb_mean: float
    arb_deployed_mean: float


@dataclass
class AggregateReport:
    csv: str
    diagnostics: list[str]


def run_trial(n: int, rho: float, seed: int) -> TrialResult:
    inst = generate_random(GenSpec(n, REGION, WIDTH, LENGTHS, HORIZONTAL, seed))
    counts = []
    for mode, factor in ((SIDE_BOUNDARY, 2), (ARBITRARY, 4)):
        dep = deploy(inst.roads, rho, mode)
        report = verify_independent(inst.roads, dep.placed)
        if not report.independent_coverage:
            raise TrialError(f"seed {seed}: {mode} deployment leaves roads uncovered")
        for orient, reps in dep.independent_set.items():
            placed = sum(len(dep.groups[r]) for r in reps)
            if placed > factor * len(reps):
                raise TrialError(f"seed {seed}: {mode} placed {placed} > {factor}*|I_{orient}|")
        counts += [dep.lower_bound, len(dep.placed)]
    return TrialResult(seed, n, rho, *counts)


def run_trials(n: int, rho: float, trials: int, base_seed: int = 0) -> TableRow:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if rho < WIDTH:
        raise ValueError(f"rho must be at least the road width {WIDTH}")
    results = []
    for t in range(trials):
        try:
            results.append(run_trial(n, rho, base_seed + t))
        except Exception as exc:
            raise TrialError(f"trial {t} (seed {base_seed + t}) failed: {exc}") from exc
    return TableRow(n, rho, trials,
                    fmean(r.side_lb for r in results), fmean(r.side_deployed for r in results),
                    fmean(r.arb_lb for r in results), fmean(r.arb_deployed for r in results))


def trend_diagnostics(rows: Sequence[TableRow]) -> list[str]:
    """Flag rows that break the expected orderings (more roads, more sensors; larger rho, fewer)."""
    metrics = [f.name for f in fields(TableRow)][3:]
    notes = []
    by_rho: dict[float, list[TableRow]] = {}
    by_n: dict[int, list[TableRow]] = {}
    for r in rows:
        by_rho.setdefault(r.rho, []).append(r)
        by_n.setdefault(r.n, []).append(r)
    for rho, group in sorted(by_rho.items()):
        group = sorted(group, key=lambda r: r.n)
        for a, b in zip(group, group[1:]):
            for m in metrics:
                if getattr(b, m) < getattr(a, m):
                    notes.append(f"rho={rho:g}: {m} drops from n={a.n} to n={b.n}")
    for n, group in sorted(by_n.items()):
        group = sorted(group, key=lambda r: r.rho)
        for a, b in zip(group, group[1:]):
            for m in metrics:
                if getattr(b, m) > getattr(a, m):
                    notes.append(f"n={n}: {m} rises from rho={a.rho:g} to rho={b.rho:g}")
    return notes


def aggregate_results(rows: Sequence[TableRow]) -> AggregateReport:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sorted(rows, key=lambda r: (r.n, r.rho)):
        n, rho, trials, *means = astuple(row)
        writer.writerow([n, f"{rho:g}", trials] + [f"{m:.4f}" for m in means])
    return AggregateReport(buf.getvalue(), trend_diagnostics(rows))
