"""Command line entry points for the three workflows.

spring-compare   sizing runs for a list of spring travels, trace CSV each
sweep            feasibility grid over travel x stiffness, summary CSV
takeoff          one closed-loop take-off, trace CSV plus JSON summary
validate         deterministic property suite, one line per check

Everything is deterministic: no randomness is involved anywhere beyond
fixed-seed property inputs, so repeated runs produce byte-identical files
(the --seedless flag documents and asserts exactly that).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import AppConfig, ConfigError, load_config
from .csvio import write_design_trace, write_sweep_csv, write_takeoff_trace
from .integrator import IntegrationError
from .properties import run_property_suite
from .spring_design import (
    SweepGrid,
    SweepPoint,
    assess_trace,
    simulate_design,
    sweep,
)
from .takeoff import TakeoffError, run_takeoff


def _common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", default=None,
                        help="JSON config file (defaults for missing fields)")
    parser.add_argument("--out", metavar="DIR", default=".",
                        help="output directory (created if missing)")
    parser.add_argument("--dt", type=float, default=None,
                        help="override the integration step [s]")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress output")
    parser.add_argument("--seedless", action="store_true",
                        help="assert that no RNG seed is involved (always true)")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetherlaunch",
        description="Tethered-aircraft take-off simulation workflows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spring-compare",
                       help="run the sizing test for a list of spring travels")
    _common_arguments(p)
    p.add_argument("--travels", type=_float_list, default=[0.05, 0.2, 0.35],
                   help="comma-separated spring travels [m]")

    p = sub.add_parser("sweep", help="feasibility grid over travel x stiffness")
    _common_arguments(p)
    p.add_argument("--travels", type=_float_list, default=[0.05, 0.2, 0.35],
                   help="comma-separated spring travels [m]")
    p.add_argument("--stiffness", type=_float_list, default=None,
                   help="comma-separated spring stiffness values [N/m]")
    p.add_argument("--workers", type=int, default=1,
                   help="worker processes for the grid (results identical)")

    p = sub.add_parser("takeoff", help="run one closed-loop take-off maneuver")
    _common_arguments(p)
    p.add_argument("--duration", type=float, default=None,
                   help="override the simulated time span [s]")

    p = sub.add_parser("validate", help="run the property suite")
    _common_arguments(p)
    return parser


def _load(args) -> AppConfig:
    config = load_config(args.config)
    if args.dt is not None:
        if not args.dt > 0.0:
            raise ConfigError(f"--dt: must be > 0 (got {args.dt})")
        config = replace(config, dt=args.dt,
                         takeoff=replace(config.takeoff, dt=args.dt))
    return config


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _travel_label(travel: float) -> str:
    return f"{travel:g}".replace(".", "p")


def cmd_spring_compare(args) -> int:
    config = _load(args)
    out = _outdir(args)
    points = []
    for travel in args.travels:
        spring = replace(config.system.spring, max_travel=travel)
        params = replace(config.system, spring=spring)
        trace = simulate_design(params, config.ic, dt=config.dt,
                                max_time=config.max_time,
                                force_tol=config.force_tolerance)
        result = assess_trace(trace, params, config.force_tolerance)
        path = out / f"spring_compare_travel_{_travel_label(travel)}.csv"
        write_design_trace(trace, path)
        points.append((travel, params.spring.stiffness, result))
        if not args.quiet:
            t_star = "timeout" if result.t_star is None else f"{result.t_star:.4f} s"
            print(f"travel {travel:g} m: min speed {result.min_speed:.4f} m/s "
                  f"at {result.t_at_min:.4f} s, release at {t_star}, "
                  f"{result.compression_cycles} cycles, "
                  f"{'feasible' if result.feasible else 'NOT feasible'} "
                  f"-> {path}")

    summary = [SweepPoint(travel, stiffness, result)
               for travel, stiffness, result in points]
    summary_path = out / "spring_compare_summary.csv"
    write_sweep_csv(summary, summary_path)
    if not args.quiet:
        print(f"summary -> {summary_path}")
    return 0


def cmd_sweep(args) -> int:
    config = _load(args)
    out = _outdir(args)
    stiffness = args.stiffness or [config.system.spring.stiffness]
    grid = SweepGrid(travel_values=tuple(args.travels),
                     stiffness_values=tuple(stiffness),
                     params=config.system, ic=config.ic)
    results = sweep(grid, dt=config.dt, max_time=config.max_time,
                    force_tol=config.force_tolerance, workers=args.workers)
    points = list(results.values())
    path = out / "sweep.csv"
    write_sweep_csv(points, path)
    if not args.quiet:
        feasible = sum(1 for p in points if p.result and p.result.feasible)
        failed = sum(1 for p in points if p.error is not None)
        print(f"{len(points)} grid points: {feasible} feasible, "
              f"{failed} failed -> {path}")
    return 0


def cmd_takeoff(args) -> int:
    config = _load(args)
    out = _outdir(args)
    cfg = config.takeoff
    if args.duration is not None:
        cfg = replace(cfg, duration=args.duration)
    result = run_takeoff(cfg, config.system, config.control)

    trace_path = out / "takeoff_trace.csv"
    write_takeoff_trace(result.trace, trace_path)
    summary = {
        "liftoff_time": result.liftoff_time,
        "liftoff_distance": result.liftoff_distance,
        "peak_slide_power": result.peak_slide_power,
        "peak_winch_power": result.peak_winch_power,
        "max_spring_compression": result.max_spring_compression,
        "stall_risk": result.stall_risk,
        "duration": cfg.duration,
        "dt": cfg.dt,
        "sample_period": config.control.outer.sample_period,
    }
    summary_path = out / "takeoff_summary.json"
    summary_path.write_text(json.dumps(summary, sort_keys=True, indent=2)
                            + "\n", encoding="utf-8")
    if not args.quiet:
        print(f"liftoff_time = {result.liftoff_time:.4f} s over "
              f"{result.liftoff_distance:.4f} m")
        print(f"peak powers: slide {result.peak_slide_power:.1f} W, "
              f"winch {result.peak_winch_power:.1f} W")
        print(f"max spring compression {result.max_spring_compression:.4f} m"
              f"{' (stall risk)' if result.stall_risk else ''}")
        print(f"trace -> {trace_path}")
        print(f"summary -> {summary_path}")
    return 0


def cmd_validate(args) -> int:
    config = _load(args)
    checks = run_property_suite(config)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.detail}")
    return 0 if all(c.passed for c in checks) else 1


_COMMANDS = {
    "spring-compare": cmd_spring_compare,
    "sweep": cmd_sweep,
    "takeoff": cmd_takeoff,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except (TakeoffError, IntegrationError, ValueError) as exc:
        print(f"error: simulation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
