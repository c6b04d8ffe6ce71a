"""Self-check property suite behind the `validate` CLI command.

Exercises the controller laws over large pseudorandom input sets (fixed
seed, so every run sees the same sequence) and the integrator over its
convergence checks. Each check returns a pass/fail result with a short
detail string; the suite passes only if every check does.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .config import AppConfig, default_app_config
from .controller import (
    WinchControllerState,
    Zone,
    classify_zone,
    combine_refs,
    slide_torque,
    winch_fbck,
    winch_torque,
)
from .integrator import rk4_step
from .model import DesignState
from .spring_design import evaluate_spring, simulate_design

_SEED = 20260810


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    detail: str


def _harmonic_period_error(steps: int) -> float:
    """Position error after one period of the unit harmonic oscillator."""
    period = 2.0 * math.pi
    dt = period / steps

    def derivs(s):
        return (s.vel, -s.pos, 0.0, 0.0, 0.0, 0.0)

    state = DesignState(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    for _ in range(steps):
        state = rk4_step(derivs, state, dt)
    return abs(state.pos - 1.0)


def check_fbck_reference_bounded(outer, n: int = 1_000_000) -> PropertyCheck:
    """Feedback reference stays within [ref_min, ref_max] for random walks."""
    rng = random.Random(_SEED)
    travel = outer.reelout_anchor + 0.15
    state = WinchControllerState(0.0, classify_zone(0.0, outer))
    lo = hi = 0.0
    ok = True
    compression = 0.0
    for _ in range(n):
        if rng.random() < 0.01:
            compression = rng.uniform(0.0, travel)  # zone jump
        else:
            compression = min(travel, max(0.0, compression
                                          + rng.uniform(-0.01, 0.01)))
        ref, state = winch_fbck(state, compression, outer)
        lo = min(lo, ref)
        hi = max(hi, ref)
        if not outer.ref_min <= ref <= outer.ref_max:
            ok = False
            break
    return PropertyCheck(
        "fbck-reference-bounded", ok,
        f"{n} steps, reference range [{lo:.3f}, {hi:.3f}] rad/s "
        f"within [{outer.ref_min}, {outer.ref_max}]",
    )


def check_zone_b_holds(outer, n: int = 1000) -> PropertyCheck:
    """The reference is exactly constant while the spring sits in zone B."""
    rng = random.Random(_SEED + 1)
    ok = True
    for _ in range(50):
        held = rng.uniform(outer.ref_min, outer.ref_max)
        state = WinchControllerState(held, Zone.B)
        for _ in range(n):
            compression = rng.uniform(outer.zone_low, outer.zone_high - 1e-12)
            ref, state = winch_fbck(state, compression, outer)
            if ref != held:
                ok = False
                break
    return PropertyCheck(
        "zone-b-holds-reference", ok,
        f"50 sequences of {n} zone-B steps left the reference untouched",
    )


def check_zone_entry_resaturation(outer, n: int = 10000) -> PropertyCheck:
    """Inherited references re-saturate in sign on entering zone A or C."""
    rng = random.Random(_SEED + 2)
    travel = outer.reelout_anchor + 0.15
    ok = True
    for _ in range(n):
        positive = rng.uniform(1e-9, outer.ref_max)
        state = WinchControllerState(positive, Zone.C)
        ref, _ = winch_fbck(state, rng.uniform(0.0, outer.zone_low - 1e-12),
                            outer)
        if ref > 0.0:
            ok = False
            break
        negative = rng.uniform(outer.ref_min, -1e-9)
        state = WinchControllerState(negative, Zone.A)
        ref, _ = winch_fbck(state, rng.uniform(outer.zone_high, travel),
                            outer)
        if ref < 0.0:
            ok = False
            break
    return PropertyCheck(
        "zone-entry-resaturation", ok,
        f"{n} random zone entries re-saturated the inherited reference",
    )


def check_combine_refs(n: int = 100_000) -> PropertyCheck:
    """Arbitration equals max(ffwd, fbck) for forward slide motion."""
    rng = random.Random(_SEED + 3)
    ok = True
    for _ in range(n):
        ffwd = rng.uniform(-150.0, 150.0)
        fbck = rng.uniform(-150.0, 150.0)
        slide_speed = rng.choice((0.0, rng.uniform(-100.0, 100.0)))
        got = combine_refs(ffwd, fbck, slide_speed)
        want = max(ffwd, fbck) if slide_speed > 0.0 else fbck
        if got != want:
            ok = False
            break
    return PropertyCheck(
        "combine-refs-arbitration", ok,
        f"{n} random arbitration cases matched exactly",
    )


def check_torque_saturation(slide_gains, winch_gains,
                            n: int = 100_000) -> PropertyCheck:
    """Commanded torques never exceed the drive limits."""
    rng = random.Random(_SEED + 4)
    ok = True
    for _ in range(n):
        u_s = slide_torque(rng.uniform(-500, 500), rng.uniform(-500, 500),
                           rng.uniform(-300, 300), slide_gains)
        u_w = winch_torque(rng.uniform(-300, 300), rng.uniform(-300, 300),
                           winch_gains)
        if abs(u_s) > slide_gains.torque_limit or abs(u_w) > winch_gains.torque_limit:
            ok = False
            break
    return PropertyCheck(
        "torque-saturation", ok,
        f"{n} random torque commands stayed within "
        f"+/-{slide_gains.torque_limit} and +/-{winch_gains.torque_limit} N*m",
    )


def check_rk4_order() -> PropertyCheck:
    """Observed convergence order of the integrator on the oscillator."""
    coarse = _harmonic_period_error(314)
    fine = _harmonic_period_error(628)
    order = math.log2(coarse / fine)
    return PropertyCheck(
        "rk4-observed-order", order >= 3.9,
        f"order {order:.2f} from period errors {coarse:.3e} / {fine:.3e}",
    )


def check_step_convergence(config: AppConfig) -> PropertyCheck:
    """Minimum speed of the sizing test agrees between dt=1e-3 and 1e-4."""
    coarse = evaluate_spring(config.system, config.ic, dt=1e-3,
                             max_time=config.max_time,
                             force_tol=config.force_tolerance)
    fine = evaluate_spring(config.system, config.ic, dt=1e-4,
                           max_time=config.max_time,
                           force_tol=config.force_tolerance)
    rel = abs(coarse.min_speed - fine.min_speed) / abs(fine.min_speed)
    return PropertyCheck(
        "step-convergence", rel < 0.005,
        f"min speed {coarse.min_speed:.5f} vs {fine.min_speed:.5f} m/s, "
        f"relative difference {rel:.2e} < 5e-3",
    )


def check_trace_bounds(config: AppConfig) -> PropertyCheck:
    """Tether force stays nonnegative and the spring inside its travel."""
    ok = True
    details = []
    for travel in (0.05, 0.2, 0.35):
        spring = replace(config.system.spring, max_travel=travel)
        params = replace(config.system, spring=spring)
        trace = simulate_design(params, config.ic, dt=config.dt,
                                max_time=config.max_time,
                                force_tol=config.force_tolerance)
        if trace.force.min() < 0.0:
            ok = False
        if trace.spring_pos.min() < 0.0 or trace.spring_pos.max() > travel:
            ok = False
        details.append(f"{travel}: F in [{trace.force.min():.2g}, "
                       f"{trace.force.max():.3g}] N, "
                       f"x in [{trace.spring_pos.min():.2g}, "
                       f"{trace.spring_pos.max():.3g}] m")
    return PropertyCheck("trace-bounds", ok, "; ".join(details))


def run_property_suite(config: AppConfig | None = None) -> list[PropertyCheck]:
    """Run every property check; deterministic, no I/O."""
    if config is None:
        config = default_app_config()
    outer = config.control.outer
    return [
        check_fbck_reference_bounded(outer),
        check_zone_b_holds(outer),
        check_zone_entry_resaturation(outer),
        check_combine_refs(),
        check_torque_saturation(config.control.slide, config.control.winch),
        check_rk4_order(),
        check_step_convergence(config),
        check_trace_bounds(config),
    ]
