"""Longitudinal model of a tethered aircraft launched from a ground station.

The model couples four elements along one axis: the aircraft (a point mass
driven by propeller thrust against quadratic aerodynamic drag), the tether
(an elastic line that can pull but never push, whose stiffness falls off
with deployed length), a sprung pulley carriage that buffers tension
spikes, and the winch drum that pays the line out. It is the model used to
size the buffer spring: start the aircraft with the winch lagging by a
known speed deficit, let the resulting tension transient play out, and
check whether the aircraft stays above its minimum cruise speed.

All parameter containers are immutable and validated on construction; all
functions here are pure, so they can be evaluated from any number of
concurrent workers without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be > 0 (got {value})")


@dataclass(frozen=True)
class AircraftParams:
    """Aircraft constants for the longitudinal point-mass model."""

    effective_area: float      # aerodynamic reference area [m^2]
    drag_coeff: float          # drag coefficient at fixed angle of attack [-]
    mass: float                # [kg]
    max_thrust: float          # peak propeller thrust [N]
    min_cruise_speed: float    # slowest speed that keeps the aircraft airborne [m/s]

    def __post_init__(self) -> None:
        _require_positive("effective_area", self.effective_area)
        _require_positive("drag_coeff", self.drag_coeff)
        _require_positive("mass", self.mass)
        _require_positive("max_thrust", self.max_thrust)
        _require_positive("min_cruise_speed", self.min_cruise_speed)


@dataclass(frozen=True)
class TetherParams:
    """Elastic properties of the aircraft tether."""

    breaking_load: float        # minimum breaking load [N]
    breaking_elongation: float  # relative elongation at the breaking load [-]

    def __post_init__(self) -> None:
        _require_positive("breaking_load", self.breaking_load)
        if not 0.0 < self.breaking_elongation < 1.0:
            raise ValueError(
                "breaking_elongation must be in (0, 1) "
                f"(got {self.breaking_elongation})"
            )


@dataclass(frozen=True)
class SpringParams:
    """Buffer spring and pulley carriage of the tension-limiting stage.

    Near either end of the travel the carriage runs into rubber bumpers,
    modelled as a large increase of the viscous friction coefficient
    (endstop_gain) inside a thin margin band, applied only while moving
    into the stop.
    """

    stiffness: float        # [N/m]
    carriage_mass: float    # moving plate plus pulley [kg]
    free_friction: float    # viscous friction away from the stops [kg/s]
    endstop_gain: float     # friction multiplier inside the stop bands [-]
    endstop_margin: float   # width of each stop band [m]
    max_travel: float       # usable compression travel [m]

    def __post_init__(self) -> None:
        _require_positive("stiffness", self.stiffness)
        _require_positive("carriage_mass", self.carriage_mass)
        _require_positive("max_travel", self.max_travel)
        if self.free_friction < 0.0:
            raise ValueError(f"free_friction must be >= 0 (got {self.free_friction})")
        if self.endstop_gain < 10.0:
            raise ValueError(
                f"endstop_gain must be >= 10 (got {self.endstop_gain})"
            )
        if not 0.0 < self.endstop_margin < self.max_travel / 2.0:
            raise ValueError(
                "endstop_margin must be in (0, max_travel/2) "
                f"(got {self.endstop_margin} with max_travel {self.max_travel})"
            )


@dataclass(frozen=True)
class WinchParams:
    """Winch drum constants."""

    radius: float        # [m]
    max_torque: float    # maximum motor torque [N*m]
    inertia: float       # drum plus rotor [kg*m^2]
    rot_friction: float  # rotational viscous friction [kg*m^2/s]

    def __post_init__(self) -> None:
        _require_positive("radius", self.radius)
        _require_positive("max_torque", self.max_torque)
        _require_positive("inertia", self.inertia)
        _require_positive("rot_friction", self.rot_friction)


@dataclass(frozen=True)
class AmbientParams:
    """Ambient conditions."""

    air_density: float  # [kg/m^3]

    def __post_init__(self) -> None:
        _require_positive("air_density", self.air_density)


@dataclass(frozen=True)
class SlidePlantParams:
    """Linear motion system that accelerates the aircraft to take-off speed.

    The drum inertia is folded into a single equivalent translational mass
    together with the slide and the aircraft resting on it.
    """

    drum_radius: float      # [m]
    equivalent_mass: float  # slide + aircraft + reflected drum inertia [kg]
    rot_friction: float     # drum rotational viscous friction [kg*m^2/s]

    def __post_init__(self) -> None:
        _require_positive("drum_radius", self.drum_radius)
        _require_positive("equivalent_mass", self.equivalent_mass)
        _require_positive("rot_friction", self.rot_friction)


@dataclass(frozen=True)
class SystemParams:
    """All physical constants of the ground station and aircraft."""

    aircraft: AircraftParams
    tether: TetherParams
    spring: SpringParams
    winch: WinchParams
    ambient: AmbientParams
    slide: SlidePlantParams


@dataclass(frozen=True)
class InitConditions:
    """Initial condition of the spring-sizing transient.

    The aircraft flies at `speed` with the tether just taut at zero force
    and the spring at rest, while the winch pays out line `speed_deficit`
    slower than the aircraft moves. The deficit is what excites the
    tension transient.
    """

    position: float       # initial aircraft position [m]
    speed: float          # initial aircraft speed [m/s]
    speed_deficit: float  # aircraft speed minus winch line speed at t=0 [m/s]

    def __post_init__(self) -> None:
        _require_positive("position", self.position)
        _require_positive("speed", self.speed)


class DesignState(NamedTuple):
    """Continuous state of the spring-sizing model."""

    pos: float          # aircraft position [m]
    vel: float          # aircraft speed [m/s]
    spring_pos: float   # spring compression [m]
    spring_vel: float   # spring compression rate [m/s]
    winch_angle: float  # winch drum angle [rad]
    winch_speed: float  # winch drum speed [rad/s]


def tether_stiffness(tether: TetherParams, length: float) -> float:
    """Elastic stiffness of the deployed tether [N/m].

    The line behaves like a spring whose stiffness is inversely
    proportional to the deployed length: breaking_load divided by the
    absolute elongation at break of that length.
    """
    if length <= 0.0:
        raise ValueError(f"tether length must be > 0 (got {length})")
    return tether.breaking_load / (tether.breaking_elongation * length)


def tether_force(tether: TetherParams, pos: float, length: float) -> float:
    """Pulling force of the tether [N]; zero when slack (a line cannot push)."""
    return max(0.0, tether_stiffness(tether, length) * (pos - length))


def effective_tether_length(winch: WinchParams, winch_angle: float,
                            spring_pos: float) -> float:
    """Deployed tether length [m]: drum payout plus twice the carriage travel.

    The tether runs around the moving pulley on the spring carriage, so
    each metre of compression releases two metres of line.
    """
    return winch.radius * winch_angle + 2.0 * spring_pos


def spring_friction(spring: SpringParams, spring_pos: float,
                    spring_vel: float) -> float:
    """Viscous friction coefficient of the carriage [kg/s].

    Returns the free-running value except when the carriage sits inside an
    endstop band and is still moving into the stop, where the bumper model
    multiplies it by endstop_gain.
    """
    if spring_pos <= spring.endstop_margin and spring_vel < 0.0:
        return spring.endstop_gain * spring.free_friction
    if spring_pos > spring.max_travel - spring.endstop_margin and spring_vel > 0.0:
        return spring.endstop_gain * spring.free_friction
    return spring.free_friction


def design_derivatives(state: DesignState, params: SystemParams) -> tuple:
    """Time derivatives of the six model states.

    Worst-case assumptions of the sizing study: the propeller holds peak
    thrust, the winch motor holds peak reel-out torque, and the tether
    pulls exactly against the flight direction. The same tension value
    decelerates the aircraft, drives the carriage (doubled by the moving
    pulley) and helps spin the winch out.
    """
    pos, vel, spring_pos, spring_vel, winch_angle, winch_speed = state
    aircraft = params.aircraft
    spring = params.spring
    winch = params.winch

    length = effective_tether_length(winch, winch_angle, spring_pos)
    force = tether_force(params.tether, pos, length)

    drag = (0.5 * params.ambient.air_density * aircraft.drag_coeff
            * aircraft.effective_area * vel * vel)
    accel = (aircraft.max_thrust - drag - force) / aircraft.mass

    friction = spring_friction(spring, spring_pos, spring_vel)
    spring_accel = (2.0 * force - friction * spring_vel
                    - spring.stiffness * spring_pos) / spring.carriage_mass

    winch_accel = (winch.max_torque + winch.radius * force
                   - winch.rot_friction * winch_speed) / winch.inertia

    return (vel, accel, spring_vel, spring_accel, winch_speed, winch_accel)


def initial_state(ic: InitConditions, winch: WinchParams) -> DesignState:
    """Model state at t=0: tether exactly taut at zero force, spring at rest.

    The winch angle is chosen so the deployed length equals the aircraft
    position, and the winch speed lags the aircraft by the speed deficit.
    """
    return DesignState(
        pos=ic.position,
        vel=ic.speed,
        spring_pos=0.0,
        spring_vel=0.0,
        winch_angle=ic.position / winch.radius,
        winch_speed=(ic.speed - ic.speed_deficit) / winch.radius,
    )


def clamp_spring_travel(spring_pos: float, spring_vel: float,
                        max_travel: float) -> tuple[float, float]:
    """Hard stop at the ends of the spring travel.

    The high-friction bumper model alone can overshoot the physical stops
    numerically; real bumpers are rigid, so the position is clamped and
    any residual velocity into the stop is zeroed.
    """
    if spring_pos < 0.0:
        return 0.0, max(0.0, spring_vel)
    if spring_pos > max_travel:
        return max_travel, min(0.0, spring_vel)
    return spring_pos, spring_vel


def default_aircraft_params() -> AircraftParams:
    """Aircraft constants of the small-scale prototype glider."""
    return AircraftParams(
        effective_area=0.3,     # [m^2]
        drag_coeff=0.05,
        mass=1.2,               # [kg]
        max_thrust=10.0,        # [N]
        min_cruise_speed=7.0,   # [m/s]
    )


def default_tether_params() -> TetherParams:
    """2 mm UHMWPE line."""
    return TetherParams(breaking_load=4500.0, breaking_elongation=0.02)


def default_spring_params() -> SpringParams:
    """Buffer spring as built: 0.35 m travel at 70 N/m."""
    return SpringParams(
        stiffness=70.0,      # [N/m]
        carriage_mass=2.0,   # [kg]
        free_friction=1e-4,  # [kg/s]
        endstop_gain=1e6,
        endstop_margin=0.001,  # [m]
        max_travel=0.35,       # [m]
    )


def default_winch_params() -> WinchParams:
    return WinchParams(
        radius=0.1,        # [m]
        max_torque=13.0,   # rated motor torque [N*m]
        inertia=0.1,       # [kg*m^2]
        rot_friction=0.01,  # [kg*m^2/s]
    )


def default_ambient_params() -> AmbientParams:
    return AmbientParams(air_density=1.2)


def default_slide_params() -> SlidePlantParams:
    """Slide motion system: 11.2 kg equivalent mass on a 0.1 m drum.

    The drum friction coefficient is taken equal to the winch's; the two
    use the same motor and a similar drum.
    """
    return SlidePlantParams(drum_radius=0.1, equivalent_mass=11.2,
                            rot_friction=0.01)


def default_system_params() -> SystemParams:
    """Full prototype parameter set."""
    return SystemParams(
        aircraft=default_aircraft_params(),
        tether=default_tether_params(),
        spring=default_spring_params(),
        winch=default_winch_params(),
        ambient=default_ambient_params(),
        slide=default_slide_params(),
    )


def default_init_conditions() -> InitConditions:
    """Sizing-study initial condition: 10 m/s flight, 4 m/s winch deficit."""
    return InitConditions(position=20.0, speed=10.0, speed_deficit=4.0)
