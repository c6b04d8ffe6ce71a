"""Simulation library for the ground-station assisted take-off of tethered
aircraft: spring-sizing model, hierarchical winch/slide controller, and
closed-loop take-off maneuvers with power accounting."""

from .controller import (
    ControlParams,
    SlideGains,
    WinchControllerState,
    WinchGains,
    WinchOuterParams,
    Zone,
    classify_zone,
    combine_refs,
    default_control_params,
    initial_controller_state,
    slide_torque,
    winch_fbck,
    winch_ffwd,
    winch_speed_reference,
    winch_torque,
)
from .integrator import (
    IntegrationError,
    StopCondition,
    Trace,
    rk4_step,
    simulate,
)
from .model import (
    AircraftParams,
    AmbientParams,
    DesignState,
    InitConditions,
    SlidePlantParams,
    SpringParams,
    SystemParams,
    TetherParams,
    WinchParams,
    clamp_spring_travel,
    default_init_conditions,
    default_system_params,
    design_derivatives,
    effective_tether_length,
    initial_state,
    spring_friction,
    tether_force,
    tether_stiffness,
)
from .config import AppConfig, ConfigError, default_app_config, load_config
from .csvio import write_design_trace, write_sweep_csv, write_takeoff_trace
from .spring_design import (
    FeasibilityResult,
    SweepGrid,
    SweepPoint,
    assess_trace,
    count_compression_cycles,
    evaluate_spring,
    simulate_design,
    sweep,
)
from .takeoff import (
    Phase,
    TakeoffConfig,
    TakeoffError,
    TakeoffResult,
    TakeoffTrace,
    default_takeoff_config,
    motor_power,
    run_takeoff,
    slack_estimate,
)

__version__ = "0.1.0"
