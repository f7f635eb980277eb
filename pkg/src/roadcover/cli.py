"""Command-line interface: ``roadcover {verify,deploy,gen,simulate,render}``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .deploy import ARBITRARY, SIDE_BOUNDARY, deploy
from .instance import GenSpec, Instance, InstanceError, Region, generate_random, parse_instance, serialize_instance
from .render import render_svg
from .sim import aggregate_results, run_trials
from .verify import verify_collaborative, verify_independent

EX_OK = 0
EX_UNCOVERED = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="roadcover", description="Road coverage verification and sensor deployment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="report per-road coverage of an instance's sensors")
    p.add_argument("--instance", required=True, help="instance JSON ('-' for stdin)")
    p.add_argument("--mode", choices=["independent", "collaborative"], default="collaborative")

    p = sub.add_parser("deploy", help="place sensors guaranteeing independent coverage")
    p.add_argument("--instance", required=True)
    p.add_argument("--mode", choices=[ARBITRARY, SIDE_BOUNDARY], default=ARBITRARY)
    p.add_argument("--radius", type=float, help="sensing radius (defaults to the instance's default_radius)")
    p.add_argument("--removal", choices=["covered", "shared"], default="covered")
    p.add_argument("--out", help="output instance JSON (stdout when omitted)")

    p = sub.add_parser("gen", help="generate a random road instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=float, default=50.0)
    p.add_argument("--max-length", type=float, default=200.0)
    p.add_argument("--size", type=float, default=1000.0, help="side of the square region")
    p.add_argument("--vertical", type=float, default=0.0, help="probability that a road is vertical")
    p.add_argument("--radius", type=float, help="default_radius recorded in the file")
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="average both deployment modes over seeded trials (CSV)")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--radius", type=float, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("render", help="draw an instance (optionally after deploying) as SVG")
    p.add_argument("--instance", required=True)
    p.add_argument("--mode", choices=[ARBITRARY, SIDE_BOUNDARY], help="deploy before drawing")
    p.add_argument("--radius", type=float)
    p.add_argument("--show-capsules", action="store_true")
    p.add_argument("--out")
    return parser


def _read_instance(path: str) -> Instance:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance(data)


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise FileNotFoundError(f"cannot write {path}: {exc.strerror}") from exc


def _radius(args, inst: Instance) -> float:
    rho = args.radius if args.radius is not None else inst.default_radius
    if rho is None:
        raise UsageError("--radius is required when the instance has no default_radius")
    return rho


def cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    if args.mode == "independent":
        report = verify_independent(inst.roads, inst.sensors)
    else:
        report = verify_collaborative(inst.roads, inst.sensors)
    for e in report.entries:
        line = f"road {e.road_id}: {e.status}"
        if e.sensors:
            line += " witness " + " ".join(e.sensors)
        print(line)
    return EX_OK if report.collaborative_coverage else EX_UNCOVERED


def cmd_deploy(args) -> int:
    inst = _read_instance(args.instance)
    rho = _radius(args, inst)
    dep = deploy(inst.roads, rho, args.mode, args.removal)
    out = Instance(inst.region, inst.roads, dep.placed, rho,
                   {"mode": dep.mode, "lower_bound": dep.lower_bound, "deployed": len(dep.placed)})
    _write(args.out, serialize_instance(out))
    msg = f"lb={dep.lower_bound} deployed={len(dep.placed)}"
    print(msg, file=sys.stdout if args.out else sys.stderr)
    return EX_OK


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, Region(0.0, 0.0, args.size, args.size), args.width, (0.0, args.max_length),
                   args.vertical, args.seed)
    inst = generate_random(spec)
    inst.default_radius = args.radius
    _write(args.out, serialize_instance(inst))
    return EX_OK


def cmd_simulate(args) -> int:
    rows = [run_trials(n, rho, args.trials, args.seed) for n in args.n for rho in args.radius]
    report = aggregate_results(rows)
    _write(args.out, report.csv.encode())
    for note in report.diagnostics:
        print(f"warning: {note}", file=sys.stderr)
    return EX_OK


def cmd_render(args) -> int:
    inst = _read_instance(args.instance)
    dep = None
    if args.mode:
        dep = deploy(inst.roads, _radius(args, inst), args.mode)
    _write(args.out, render_svg(inst, dep, args.show_capsules, args.radius))
    return EX_OK


COMMANDS = {"verify": cmd_verify, "deploy": cmd_deploy, "gen": cmd_gen,
            "simulate": cmd_simulate, "render": cmd_render}


def dispatch(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"roadcover: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except InstanceError as exc:
        print(f"roadcover: malformed instance: {exc}", file=sys.stderr)
        return EX_DATAERR
    except (UsageError, ValueError) as exc:
        print(f"roadcover: {exc}", file=sys.stderr)
        return EX_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
