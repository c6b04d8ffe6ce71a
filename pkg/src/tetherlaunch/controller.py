"""Hierarchical ground-station controller.

Two inner torque loops run on the drives: a position loop for the slide
drum (proportional on position error with speed damping) and a speed loop
for the winch, both designed by pole placement and saturated at the motor
torque limits. The outer loop computes the winch speed reference from two
contributions: a feedforward latch that couples the winch to the slide
during the launch acceleration, and an integral feedback driven by the
buffer-spring compression, split into three zones (reel-in when nearly
uncompressed, hold in the middle band, reel-out under load). All loops are
discrete time with a common sample period.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Zone(Enum):
    """Spring-compression band: A reels in, B holds, C reels out."""

    A = "a"
    B = "b"
    C = "c"


@dataclass(frozen=True)
class SlideGains:
    """Slide drum position loop: static state feedback with torque limit."""

    position_gain: float  # [N*m/rad]
    speed_gain: float     # [N*m*s/rad]
    torque_limit: float   # peak drive torque [N*m]

    def __post_init__(self) -> None:
        for name in ("position_gain", "speed_gain", "torque_limit"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0 (got {getattr(self, name)})")


@dataclass(frozen=True)
class WinchGains:
    """Winch drum speed loop."""

    speed_gain: float    # [N*m*s/rad]
    torque_limit: float  # rated drive torque [N*m]

    def __post_init__(self) -> None:
        for name in ("speed_gain", "torque_limit"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0 (got {getattr(self, name)})")


@dataclass(frozen=True)
class WinchOuterParams:
    """Outer winch speed reference generator.

    zone_low and zone_high split the spring travel into the three zones.
    In the reel-in and reel-out zones the feedback reference ramps at
    reelin_accel / reelout_accel, scaled by how far the compression sits
    beyond the zone edge relative to the anchor points; the clamps to
    [ref_min, 0] and [0, ref_max] also re-saturate the sign of whatever
    reference was inherited when a zone is entered.
    """

    ffwd_gain: float       # winch-to-slide speed coupling during launch [-]
    zone_low: float        # upper edge of the reel-in zone [m]
    zone_high: float       # lower edge of the reel-out zone [m]
    reelin_anchor: float   # compression of full reel-in ramp rate [m]
    reelout_anchor: float  # compression of full reel-out ramp rate [m]
    ref_min: float         # largest commanded reel-in speed [rad/s]
    ref_max: float         # largest commanded reel-out speed [rad/s]
    reelin_accel: float    # reference ramp rate in zone A [rad/s^2]
    reelout_accel: float   # reference ramp rate in zone C [rad/s^2]
    sample_period: float   # controller update period [s]

    def __post_init__(self) -> None:
        if self.ffwd_gain < 0.0:
            raise ValueError(f"ffwd_gain must be >= 0 (got {self.ffwd_gain})")
        if not 0.0 < self.zone_low < self.zone_high:
            raise ValueError(
                "zone thresholds must satisfy 0 < zone_low < zone_high "
                f"(got {self.zone_low}, {self.zone_high})"
            )
        if not self.reelin_anchor < self.zone_low:
            raise ValueError(
                f"reelin_anchor must be < zone_low (got {self.reelin_anchor})"
            )
        if not self.reelout_anchor > self.zone_high:
            raise ValueError(
                f"reelout_anchor must be > zone_high (got {self.reelout_anchor})"
            )
        if not self.ref_min < 0.0 < self.ref_max:
            raise ValueError(
                "reference bounds must satisfy ref_min < 0 < ref_max "
                f"(got {self.ref_min}, {self.ref_max})"
            )
        if not self.reelin_accel < 0.0 < self.reelout_accel:
            raise ValueError(
                "ramp rates must satisfy reelin_accel < 0 < reelout_accel "
                f"(got {self.reelin_accel}, {self.reelout_accel})"
            )
        if not self.sample_period > 0.0:
            raise ValueError(
                f"sample_period must be > 0 (got {self.sample_period})"
            )


@dataclass(frozen=True)
class ControlParams:
    """Complete gain set of the ground-station control stack."""

    slide: SlideGains
    winch: WinchGains
    outer: WinchOuterParams


class WinchControllerState(NamedTuple):
    """Persistent state of the outer feedback loop."""

    fbck_ref: float  # feedback speed reference of the previous step [rad/s]
    zone: Zone


def _clamp(value: float, low: float, high: float) -> float:
    return min(high, max(low, value))


def slide_torque(angle_ref: float, angle: float, speed: float,
                 gains: SlideGains) -> float:
    """Slide drum torque command [N*m], saturated at the drive limit."""
    torque = gains.position_gain * (angle_ref - angle) - gains.speed_gain * speed
    return _clamp(torque, -gains.torque_limit, gains.torque_limit)


def winch_torque(speed_ref: float, speed: float, gains: WinchGains) -> float:
    """Winch drum torque command [N*m], saturated at the drive limit."""
    torque = gains.speed_gain * (speed_ref - speed)
    return _clamp(torque, -gains.torque_limit, gains.torque_limit)


def winch_ffwd(slide_speed: float, ffwd_gain: float) -> float:
    """Feedforward winch speed reference [rad/s]: latch to the slide speed."""
    return ffwd_gain * slide_speed


def classify_zone(compression: float, p: WinchOuterParams) -> Zone:
    """Zone of the given spring compression."""
    if compression < p.zone_low:
        return Zone.A
    if compression < p.zone_high:
        return Zone.B
    return Zone.C


def winch_fbck(state: WinchControllerState, compression: float,
               p: WinchOuterParams) -> tuple[float, WinchControllerState]:
    """One update of the feedback winch speed reference.

    An integral controller on the distance of the compression from the
    hold band, with a piecewise-constant gain. In zone A the reference
    ramps negative (reel-in) and is clamped to [ref_min, 0]; in zone C it
    ramps positive (reel-out) and is clamped to [0, ref_max]; in zone B it
    is held. The clamps are applied every step, so on entering zone A or C
    an inherited reference of the wrong sign is re-saturated immediately.
    """
    zone = classify_zone(compression, p)
    prev = state.fbck_ref
    if zone is Zone.A:
        # Both numerator and denominator are negative below zone_low, so
        # the scale is positive and the increment inherits reelin_accel's
        # sign.
        scale = (compression - p.zone_low) / (p.reelin_anchor - p.zone_low)
        ref = min(0.0, max(p.ref_min,
                           prev + p.sample_period * p.reelin_accel * scale))
    elif zone is Zone.B:
        ref = prev
    else:
        scale = (compression - p.zone_high) / (p.reelout_anchor - p.zone_high)
        ref = max(0.0, min(p.ref_max,
                           prev + p.sample_period * p.reelout_accel * scale))
    return ref, WinchControllerState(ref, zone)


def combine_refs(ffwd: float, fbck: float, slide_speed: float) -> float:
    """Arbitrate the two winch speed contributions.

    The feedforward is used only while the slide moves forward and only if
    it asks for more speed than the feedback.
    """
    if slide_speed > 0.0:
        return max(ffwd, fbck)
    return fbck


def initial_controller_state(compression: float,
                             p: WinchOuterParams) -> WinchControllerState:
    """Controller state before the take-off: winch at rest."""
    return WinchControllerState(0.0, classify_zone(compression, p))


def winch_speed_reference(state: WinchControllerState, compression: float,
                          slide_speed: float, p: WinchOuterParams,
                          ) -> tuple[float, WinchControllerState]:
    """Full outer-loop update: feedback step, then arbitration."""
    fbck, new_state = winch_fbck(state, compression, p)
    ffwd = winch_ffwd(slide_speed, p.ffwd_gain)
    return combine_refs(ffwd, fbck, slide_speed), new_state


def default_slide_gains() -> SlideGains:
    """Slide loop as tuned on the prototype; 26 N*m is twice rated torque,
    available from the drive for the short launch burst."""
    return SlideGains(position_gain=14.0, speed_gain=2.5, torque_limit=26.0)


def default_winch_gains() -> WinchGains:
    return WinchGains(speed_gain=1.0, torque_limit=13.0)


def default_outer_params() -> WinchOuterParams:
    return WinchOuterParams(
        ffwd_gain=1.2,
        zone_low=0.05,       # [m]
        zone_high=0.1,       # [m]
        reelin_anchor=0.025,  # [m]
        reelout_anchor=0.2,   # [m]
        ref_min=-10.0,        # [rad/s]
        ref_max=120.0,        # [rad/s]
        reelin_accel=-100.0,  # [rad/s^2]
        reelout_accel=30.0,   # [rad/s^2]
        sample_period=0.001,  # [s]
    )


def default_control_params() -> ControlParams:
    return ControlParams(
        slide=default_slide_gains(),
        winch=default_winch_gains(),
        outer=default_outer_params(),
    )
