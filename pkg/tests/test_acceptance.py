"""Acceptance suite for the reference prototype targets.

Every test prints one line per checked property in the form
"criterion <n>[.<part>] PASS/FAIL: <measured detail>", then asserts the
whole criterion. Tolerances are fixed here, not tuned elsewhere.

Two of the checks below encode reference behaviors that the modeled
system, integrated to convergence, does not reach; they are kept exactly
as stated rather than loosened, and they fail with their measured values
printed. The analysis is summarized in the README: the buffer carriage at
its catalog mass turns the initial tension transient into a momentum
exchange that is independent of the spring travel (which ties the travel
comparison), and the reel-out ramp limits leave a reference gap during
the feedforward handover that caps the winch's sustained power below the
reference peak.
"""

import filecmp
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from tetherlaunch.cli import main
from tetherlaunch.properties import (
    check_combine_refs,
    check_fbck_reference_bounded,
    check_rk4_order,
    check_step_convergence,
    check_torque_saturation,
    check_zone_b_holds,
    check_zone_entry_resaturation,
)
from tetherlaunch.spring_design import sweep, SweepGrid
from tetherlaunch.takeoff import run_takeoff


def report(lines, name, passed, detail):
    lines.append(passed)
    print(f"criterion {name} {'PASS' if passed else 'FAIL'}: {detail}")


def test_criterion_1_slide_sizing(config):
    """Peak-torque launch reaches 9 m/s in 0.38 s +/- 5% over 1.7 m +/- 5%."""
    checks = []
    cfg = replace(config.takeoff, duration=0.8)
    start = time.perf_counter()
    result = run_takeoff(cfg, config.system, config.control)
    elapsed = time.perf_counter() - start
    report(checks, "1.time", abs(result.liftoff_time - 0.38) <= 0.05 * 0.38,
           f"lift-off at {result.liftoff_time:.4f} s (target 0.38 +/- 5%)")
    report(checks, "1.distance",
           abs(result.liftoff_distance - 1.7) <= 0.05 * 1.7,
           f"lift-off after {result.liftoff_distance:.4f} m (target 1.7 +/- 5%)")
    report(checks, "1.runtime", elapsed < 1.0, f"runtime {elapsed:.2f} s < 1 s")
    assert all(checks)


def test_criterion_2_spring_travel_comparison(sizing_runs):
    """Three-travel sizing comparison: minima ordered by travel, the short
    spring dips below the cruise floor, minimum times shift later, and
    compression cycles do not decrease."""
    runs, elapsed = sizing_runs
    r5, r20, r35 = (runs[t][1] for t in (0.05, 0.2, 0.35))
    checks = []
    report(checks, "2.a",
           r5.min_speed < r20.min_speed < r35.min_speed,
           "min speeds strictly increasing: "
           f"{r5.min_speed:.4f} / {r20.min_speed:.4f} / {r35.min_speed:.4f} m/s")
    report(checks, "2.b",
           r5.min_speed < 7.0 <= r35.min_speed,
           f"short travel dips below 7 m/s ({r5.min_speed:.4f}), "
           f"long travel holds ({r35.min_speed:.4f})")
    report(checks, "2.c",
           r5.t_at_min < r20.t_at_min < r35.t_at_min,
           "times of minimum strictly increasing: "
           f"{r5.t_at_min:.4f} / {r20.t_at_min:.4f} / {r35.t_at_min:.4f} s")
    report(checks, "2.d",
           r5.compression_cycles <= r20.compression_cycles
           <= r35.compression_cycles,
           "compression cycles non-decreasing: "
           f"{r5.compression_cycles} / {r20.compression_cycles} / "
           f"{r35.compression_cycles}")
    report(checks, "2.runtime", elapsed < 10.0,
           f"runtime {elapsed:.2f} s < 10 s")
    assert all(checks)


def test_criterion_3_peak_powers(takeoff_default):
    """Default take-off: slide peak within 20% of 2.11 kW, winch peak
    within 20% of 1.26 kW, slide/winch ratio above 1.5."""
    result, elapsed = takeoff_default
    checks = []
    slide, winch = result.peak_slide_power, result.peak_winch_power
    report(checks, "3.slide", abs(slide - 2110.0) <= 0.2 * 2110.0,
           f"peak slide power {slide:.0f} W (target 2110 +/- 20%)")
    report(checks, "3.winch", abs(winch - 1260.0) <= 0.2 * 1260.0,
           f"peak winch power {winch:.0f} W (target 1260 +/- 20%)")
    report(checks, "3.ratio", slide / winch > 1.5,
           f"slide/winch peak ratio {slide / winch:.2f} > 1.5")
    report(checks, "3.runtime", elapsed < 5.0, f"runtime {elapsed:.2f} s < 5 s")
    assert all(checks)


def test_criterion_4_controller_properties(config):
    """Controller property suite over randomized inputs."""
    start = time.perf_counter()
    results = [
        check_fbck_reference_bounded(config.control.outer),
        check_zone_b_holds(config.control.outer),
        check_zone_entry_resaturation(config.control.outer),
        check_combine_refs(),
        check_torque_saturation(config.control.slide, config.control.winch),
    ]
    elapsed = time.perf_counter() - start
    checks = []
    for r in results:
        report(checks, f"4.{r.name}", r.passed, r.detail)
    report(checks, "4.runtime", elapsed < 5.0, f"runtime {elapsed:.2f} s < 5 s")
    assert all(checks)


def test_criterion_5_numerical_suite(config, sizing_runs, takeoff_default):
    """Integrator order, step-size agreement, and trace bounds on every
    acceptance run."""
    checks = []
    order = check_rk4_order()
    report(checks, "5.order", order.passed, order.detail)
    convergence = check_step_convergence(config)
    report(checks, "5.convergence", convergence.passed, convergence.detail)

    runs, _ = sizing_runs
    force_ok = travel_ok = True
    for travel, (trace, _) in runs.items():
        force_ok &= trace.force.min() >= 0.0
        travel_ok &= (trace.spring_pos.min() >= 0.0
                      and trace.spring_pos.max() <= travel)
    takeoff, _ = takeoff_default
    force_ok &= takeoff.trace.tether_force.min() >= 0.0
    travel_ok &= (takeoff.trace.spring_pos.min() >= 0.0
                  and takeoff.trace.spring_pos.max()
                  <= config.system.spring.max_travel)
    report(checks, "5.force", force_ok,
           "tether force nonnegative at every logged step of every run")
    report(checks, "5.travel", travel_ok,
           "spring compression inside [0, max_travel] at every logged step")
    assert all(checks)


def test_criterion_6_determinism(tmp_path, config):
    """Byte-identical take-off reruns; sweep independent of worker count."""
    checks = []
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["takeoff", "--out", str(a), "--quiet"]) == 0
    assert main(["takeoff", "--out", str(b), "--quiet"]) == 0
    identical = (filecmp.cmp(a / "takeoff_trace.csv", b / "takeoff_trace.csv",
                             shallow=False)
                 and filecmp.cmp(a / "takeoff_summary.json",
                                 b / "takeoff_summary.json", shallow=False))
    report(checks, "6.reruns", identical,
           "two take-off runs wrote byte-identical trace and summary files")

    grid = SweepGrid((0.05, 0.2, 0.35), (70.0,), config.system, config.ic)
    serial = sweep(grid, workers=1)
    parallel = sweep(grid, workers=2)
    report(checks, "6.workers", serial == parallel,
           "sweep results identical for serial and two-process execution")
    assert all(checks)
