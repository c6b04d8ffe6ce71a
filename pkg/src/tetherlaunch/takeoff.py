"""Closed-loop simulation of a complete take-off maneuver.

At k=0 the slide position loop receives a step to the launch travel and
accelerates the aircraft down the rails; the winch coordinates through the
feedforward/feedback reference generator to pay the line out without
pulling or entangling. When the aircraft reaches take-off speed it leaves
the slide and continues as a point mass on a straight climb ray, with the
tether force taken fully along the path (the worst case for the aircraft).
Controllers update at the sample period with zero-order-hold torques; the
plant integrates with a smaller fixed substep. Motor powers are logged as
torque times speed, braking counted negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .controller import (
    ControlParams,
    WinchControllerState,
    combine_refs,
    initial_controller_state,
    slide_torque,
    winch_ffwd,
    winch_fbck,
    winch_torque,
)
from .integrator import rk4_step
from .model import (
    SystemParams,
    clamp_spring_travel,
    spring_friction,
    tether_stiffness,
)

GRAVITY = 9.81  # [m/s^2]


class TakeoffError(RuntimeError):
    """The maneuver cannot be completed as configured.

    When raised from inside a run, the log up to the failure is attached
    as the `trace` attribute for diagnosis.
    """

    def __init__(self, message: str, trace: "TakeoffTrace | None" = None):
        super().__init__(message)
        self.trace = trace


class Phase(Enum):
    ON_SLIDE = "on_slide"
    AIRBORNE = "airborne"


@dataclass(frozen=True)
class TakeoffConfig:
    """Maneuver and simulation settings for one take-off run."""

    slide_travel: float      # commanded slide stroke [m]
    takeoff_speed: float     # speed at which the aircraft leaves the slide [m/s]
    climb_angle_deg: float   # climb ray angle above horizontal [deg]
    initial_slack: float     # slack line length left before the start [m]
    rail_length: float       # usable rail length [m]
    dt: float = 1e-4         # plant integration substep [s]
    duration: float = 3.0    # simulated time span [s]

    def __post_init__(self) -> None:
        for name in ("slide_travel", "takeoff_speed", "initial_slack",
                     "rail_length", "dt", "duration"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0 (got {getattr(self, name)})")
        if self.slide_travel > self.rail_length:
            raise ValueError(
                "slide_travel must not exceed rail_length "
                f"(got {self.slide_travel} > {self.rail_length})"
            )
        if not 0.0 <= self.climb_angle_deg < 90.0:
            raise ValueError(
                f"climb_angle_deg must be in [0, 90) (got {self.climb_angle_deg})"
            )


def default_takeoff_config() -> TakeoffConfig:
    """Prototype maneuver: 3.7 m stroke, 9 m/s take-off, 30 degree climb.

    The initial slack default of 1.0 m covers the line payout deficit the
    torque-limited winch accumulates during the launch burst, so the
    tether does not load the slide before lift-off.
    """
    return TakeoffConfig(
        slide_travel=3.7,     # [m]
        takeoff_speed=9.0,    # [m/s]
        climb_angle_deg=30.0,
        initial_slack=1.0,    # [m]
        rail_length=4.8,      # [m]
    )


class _SlidePhaseState(NamedTuple):
    """Plant state while the aircraft rides the slide."""

    slide_angle: float
    slide_speed: float
    winch_angle: float
    winch_speed: float
    spring_pos: float
    spring_vel: float


class _ClimbPhaseState(NamedTuple):
    """Plant state after lift-off: the aircraft is a separate point mass."""

    slide_angle: float
    slide_speed: float
    winch_angle: float
    winch_speed: float
    spring_pos: float
    spring_vel: float
    path_pos: float
    path_vel: float


@dataclass
class TakeoffTrace:
    """Per-control-step log of a take-off run."""

    t: np.ndarray
    slide_angle: np.ndarray
    slide_speed: np.ndarray
    winch_angle: np.ndarray
    winch_speed: np.ndarray
    spring_pos: np.ndarray
    distance: np.ndarray       # aircraft path distance [m]
    speed: np.ndarray          # aircraft path speed [m/s]
    tether_length: np.ndarray
    tether_force: np.ndarray
    slide_torque: np.ndarray
    winch_torque: np.ndarray
    slide_power: np.ndarray
    winch_power: np.ndarray
    zone: np.ndarray           # 'a' / 'b' / 'c'
    phase: np.ndarray          # 'on_slide' / 'airborne'
    ffwd_ref: np.ndarray       # feedforward winch speed reference [rad/s]
    fbck_ref: np.ndarray       # feedback winch speed reference [rad/s]
    winch_ref: np.ndarray      # arbitrated reference sent to the drive [rad/s]

    @property
    def slack(self) -> np.ndarray:
        return self.tether_length - self.distance


@dataclass
class TakeoffResult:
    """Outcome of one take-off run."""

    liftoff_time: float        # [s]
    liftoff_distance: float    # [m]
    peak_slide_power: float    # [W]
    peak_winch_power: float    # [W]
    max_spring_compression: float  # [m]
    stall_risk: bool           # spring hit full travel with force still rising
    trace: TakeoffTrace

    @property
    def slack_estimate(self) -> np.ndarray:
        return self.trace.slack


def _build_trace(log: dict) -> TakeoffTrace:
    return TakeoffTrace(**{name: np.array(values) for name, values in log.items()})


def motor_power(torque: float, speed: float) -> float:
    """Mechanical motor power [W]; negative means braking (dissipated)."""
    return torque * speed


def slack_estimate(aircraft_distance: float, tether_length: float) -> float:
    """Slack line length [m]: deployed tether beyond the aircraft distance.

    Negative values indicate a taut line (elongation proxy).
    """
    if aircraft_distance < 0.0 or tether_length < 0.0:
        raise ValueError("distances must be >= 0")
    return tether_length - aircraft_distance


def run_takeoff(cfg: TakeoffConfig, system: SystemParams,
                control: ControlParams) -> TakeoffResult:
    """Simulate one take-off maneuver and return its trace and key figures.

    Raises TakeoffError if the slide overruns the rails or the aircraft
    never reaches take-off speed within the configured duration.
    """
    aircraft = system.aircraft
    spring = system.spring
    winch = system.winch
    slide = system.slide
    outer = control.outer

    if cfg.takeoff_speed <= aircraft.min_cruise_speed:
        raise TakeoffError(
            "takeoff_speed must exceed the minimum cruise speed "
            f"(got {cfg.takeoff_speed} <= {aircraft.min_cruise_speed})"
        )
    if slide.equivalent_mass <= aircraft.mass:
        raise TakeoffError(
            "slide equivalent_mass must exceed the aircraft mass "
            f"(got {slide.equivalent_mass} <= {aircraft.mass})"
        )

    sample_period = outer.sample_period
    substeps = round(sample_period / cfg.dt)
    if substeps < 1 or abs(substeps * cfg.dt - sample_period) > 1e-12:
        raise TakeoffError(
            f"dt ({cfg.dt}) must divide the controller sample period "
            f"({sample_period}) evenly"
        )

    drum_radius = slide.drum_radius
    drag_coeff = (0.5 * system.ambient.air_density * aircraft.drag_coeff
                  * aircraft.effective_area)
    gravity_along_path = (aircraft.mass * GRAVITY
                          * math.sin(math.radians(cfg.climb_angle_deg)))
    slack0 = cfg.initial_slack
    slide_inertia_full = slide.equivalent_mass * drum_radius ** 2
    slide_inertia_empty = ((slide.equivalent_mass - aircraft.mass)
                           * drum_radius ** 2)
    angle_ref = cfg.slide_travel / drum_radius  # position step issued at k=0

    def line_state(winch_angle: float, spring_pos: float,
                   distance: float) -> tuple[float, float]:
        """Deployed length and tether force for the current geometry."""
        length = slack0 + winch.radius * winch_angle + 2.0 * spring_pos
        stiffness = tether_stiffness(system.tether, length)
        return length, max(0.0, stiffness * (distance - length))

    def slide_phase_derivs(u_slide: float, u_winch: float):
        def derivs(s: _SlidePhaseState):
            speed = drum_radius * s.slide_speed
            distance = drum_radius * s.slide_angle
            _, force = line_state(s.winch_angle, s.spring_pos, distance)
            # Thrust, drag and tether pull all act on the combined
            # slide+aircraft train through the equivalent mass.
            train_force = (u_slide / drum_radius + aircraft.max_thrust
                           - drag_coeff * speed * speed - force
                           - slide.rot_friction * s.slide_speed / drum_radius)
            slide_accel = train_force * drum_radius / slide_inertia_full
            winch_accel = (u_winch + winch.radius * force
                           - winch.rot_friction * s.winch_speed) / winch.inertia
            friction = spring_friction(spring, s.spring_pos, s.spring_vel)
            spring_accel = (2.0 * force - friction * s.spring_vel
                            - spring.stiffness * s.spring_pos) / spring.carriage_mass
            return (s.slide_speed, slide_accel, s.winch_speed, winch_accel,
                    s.spring_vel, spring_accel)
        return derivs

    def climb_phase_derivs(u_slide: float, u_winch: float):
        def derivs(s: _ClimbPhaseState):
            slide_accel = (u_slide - slide.rot_friction * s.slide_speed
                           ) / slide_inertia_empty
            _, force = line_state(s.winch_angle, s.spring_pos, s.path_pos)
            path_accel = (aircraft.max_thrust
                          - drag_coeff * s.path_vel * s.path_vel
                          - force - gravity_along_path) / aircraft.mass
            winch_accel = (u_winch + winch.radius * force
                           - winch.rot_friction * s.winch_speed) / winch.inertia
            friction = spring_friction(spring, s.spring_pos, s.spring_vel)
            spring_accel = (2.0 * force - friction * s.spring_vel
                            - spring.stiffness * s.spring_pos) / spring.carriage_mass
            return (s.slide_speed, slide_accel, s.winch_speed, winch_accel,
                    s.spring_vel, spring_accel, s.path_vel, path_accel)
        return derivs

    state: _SlidePhaseState | _ClimbPhaseState = _SlidePhaseState(
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    phase = Phase.ON_SLIDE
    ctrl_state: WinchControllerState = initial_controller_state(0.0, outer)
    liftoff_time: float | None = None
    liftoff_distance = 0.0

    n_ctrl = round(cfg.duration / sample_period)
    log: dict[str, list] = {name: [] for name in (
        "t", "slide_angle", "slide_speed", "winch_angle", "winch_speed",
        "spring_pos", "distance", "speed", "tether_length", "tether_force",
        "slide_torque", "winch_torque", "slide_power", "winch_power",
        "zone", "phase", "ffwd_ref", "fbck_ref", "winch_ref")}

    for k in range(n_ctrl):
        if phase is Phase.ON_SLIDE:
            distance = drum_radius * state.slide_angle
            speed = drum_radius * state.slide_speed
        else:
            distance = state.path_pos
            speed = state.path_vel

        # Control update from the sampled measurements.
        u_slide = slide_torque(angle_ref, state.slide_angle,
                               state.slide_speed, control.slide)
        fbck, ctrl_state = winch_fbck(ctrl_state, state.spring_pos, outer)
        ffwd = winch_ffwd(state.slide_speed, outer.ffwd_gain)
        speed_ref = combine_refs(ffwd, fbck, state.slide_speed)
        u_winch = winch_torque(speed_ref, state.winch_speed, control.winch)

        length, force = line_state(state.winch_angle, state.spring_pos,
                                   distance)
        log["t"].append(k * sample_period)
        log["slide_angle"].append(state.slide_angle)
        log["slide_speed"].append(state.slide_speed)
        log["winch_angle"].append(state.winch_angle)
        log["winch_speed"].append(state.winch_speed)
        log["spring_pos"].append(state.spring_pos)
        log["distance"].append(distance)
        log["speed"].append(speed)
        log["tether_length"].append(length)
        log["tether_force"].append(force)
        log["slide_torque"].append(u_slide)
        log["winch_torque"].append(u_winch)
        log["slide_power"].append(motor_power(u_slide, state.slide_speed))
        log["winch_power"].append(motor_power(u_winch, state.winch_speed))
        log["zone"].append(ctrl_state.zone.value)
        log["phase"].append(phase.value)
        log["ffwd_ref"].append(ffwd)
        log["fbck_ref"].append(fbck)
        log["winch_ref"].append(speed_ref)

        # Plant substeps under zero-order-hold torques.
        slide_derivs = slide_phase_derivs(u_slide, u_winch)
        climb_derivs = climb_phase_derivs(u_slide, u_winch)
        for j in range(substeps):
            if phase is Phase.ON_SLIDE:
                state = rk4_step(slide_derivs, state, cfg.dt)
            else:
                state = rk4_step(climb_derivs, state, cfg.dt)
            spring_pos, spring_vel = clamp_spring_travel(
                state.spring_pos, state.spring_vel, spring.max_travel)
            if spring_pos != state.spring_pos or spring_vel != state.spring_vel:
                state = state._replace(spring_pos=spring_pos,
                                       spring_vel=spring_vel)
            if (phase is Phase.ON_SLIDE
                    and drum_radius * state.slide_speed >= cfg.takeoff_speed):
                phase = Phase.AIRBORNE
                liftoff_time = (k * substeps + j + 1) * cfg.dt
                liftoff_distance = drum_radius * state.slide_angle
                state = _ClimbPhaseState(
                    *state,
                    path_pos=drum_radius * state.slide_angle,
                    path_vel=drum_radius * state.slide_speed,
                )

        if drum_radius * state.slide_angle > cfg.rail_length:
            raise TakeoffError(
                "slide overran the rails "
                f"({drum_radius * state.slide_angle:.3f} m > "
                f"{cfg.rail_length} m) at t={k * sample_period:.3f} s",
                trace=_build_trace(log),
            )

    if liftoff_time is None:
        raise TakeoffError(
            f"take-off speed {cfg.takeoff_speed} m/s not reached within "
            f"{cfg.duration} s",
            trace=_build_trace(log),
        )

    trace = _build_trace(log)

    force = trace.tether_force
    at_full_travel = trace.spring_pos >= spring.max_travel - 1e-12
    force_rising = np.zeros_like(at_full_travel)
    force_rising[:-1] = force[1:] > force[:-1]
    stall_risk = bool(np.any(at_full_travel & force_rising))

    return TakeoffResult(
        liftoff_time=liftoff_time,
        liftoff_distance=liftoff_distance,
        peak_slide_power=float(trace.slide_power.max()),
        peak_winch_power=float(trace.winch_power.max()),
        max_spring_compression=float(trace.spring_pos.max()),
        stall_risk=stall_risk,
        trace=trace,
    )
