"""Integrator tests: accuracy on a known system, stop predicates,
trace bookkeeping, and determinism."""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from tetherlaunch.integrator import (
    IntegrationError,
    StopCondition,
    rk4_step,
    simulate,
)
from tetherlaunch.model import (
    DesignState,
    InitConditions,
    default_init_conditions,
    default_system_params,
    initial_state,
)


def harmonic(state):
    return (state.vel, -state.pos, 0.0, 0.0, 0.0, 0.0)


def integrate_harmonic(steps: int) -> float:
    dt = 2.0 * math.pi / steps
    state = DesignState(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    for _ in range(steps):
        state = rk4_step(harmonic, state, dt)
    return state.pos


class TestRk4Step:
    def test_one_period_returns_home(self):
        steps = round(2.0 * math.pi / 1e-3)
        assert abs(integrate_harmonic(steps) - 1.0) < 1e-9

    def test_observed_order(self):
        coarse = abs(integrate_harmonic(314) - 1.0)
        fine = abs(integrate_harmonic(628) - 1.0)
        assert math.log2(coarse / fine) >= 3.9

    def test_zero_derivative_identity(self):
        state = DesignState(1.0, 2.0, 0.1, -0.2, 3.0, 4.0)
        zero = lambda s: (0.0,) * 6
        assert rk4_step(zero, state, 0.1) == state

    def test_rejects_nonpositive_step(self):
        state = DesignState(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        with pytest.raises(ValueError, match="dt"):
            rk4_step(harmonic, state, 0.0)

    def test_blowup_raises(self):
        state = DesignState(1e200, 0.0, 0.0, 0.0, 0.0, 0.0)
        grow = lambda s: (s.pos * s.pos, 0.0, 0.0, 0.0, 0.0, 0.0)
        with pytest.raises(IntegrationError):
            for _ in range(10):
                state = rk4_step(grow, state, 1.0)

    def test_spring_clamp_applied(self):
        state = DesignState(0.0, 0.0, 0.3, 0.0, 0.0, 0.0)
        push = lambda s: (0.0, 0.0, 10.0, 0.0, 0.0, 0.0)
        out = rk4_step(push, state, 0.1, spring_limit=0.35)
        assert out.spring_pos == 0.35
        out = rk4_step(push, state, 0.1, spring_limit=None)
        assert out.spring_pos == pytest.approx(1.3)


class TestStopCondition:
    def test_validation(self):
        with pytest.raises(ValueError, match="max_time"):
            StopCondition(max_time=0.0)
        with pytest.raises(ValueError, match="stop kind"):
            StopCondition(max_time=1.0, kind="whenever")


@pytest.fixture(scope="module")
def release_trace():
    params = default_system_params()
    init = initial_state(default_init_conditions(), params.winch)
    return simulate(params, init, 1e-4,
                    StopCondition(max_time=10.0, kind="force_released")), params


class TestSimulate:

    def test_transient_shape(self, release_trace):
        # Tension rises from zero, slows the aircraft, then releases.
        trace, params = release_trace
        assert trace.force[0] < 1e-9
        assert trace.force.max() > 1.0
        assert trace.vel.min() < trace.vel[0]
        assert not trace.timed_out

    def test_release_instant_condition(self, release_trace):
        trace, params = release_trace
        assert trace.force[-1] < 1e-6
        assert params.winch.radius * trace.winch_speed[-1] >= trace.vel[-1]
        assert (trace.force > 1e-6).any()

    def test_release_instant_step_insensitive(self, release_trace):
        trace, params = release_trace
        init = initial_state(default_init_conditions(), params.winch)
        finer = simulate(params, init, 1e-5,
                         StopCondition(max_time=10.0, kind="force_released"))
        assert abs(trace.times[-1] - finer.times[-1]) <= 1e-3

    def test_min_speed_step_convergence(self, release_trace):
        trace, params = release_trace
        init = initial_state(default_init_conditions(), params.winch)
        coarse = simulate(params, init, 1e-3,
                          StopCondition(max_time=10.0, kind="force_released"))
        rel = abs(coarse.vel.min() - trace.vel.min()) / trace.vel.min()
        assert rel < 0.005

    def test_uniform_grid(self, release_trace):
        trace, _ = release_trace
        steps = np.diff(trace.times)
        assert np.allclose(steps, 1e-4, rtol=1e-9, atol=0.0)
        assert len(trace.times) == len(trace.states)

    def test_spring_stays_inside_travel(self):
        params = default_system_params()
        from dataclasses import replace
        tight = replace(params, spring=replace(params.spring, max_travel=0.05))
        init = initial_state(default_init_conditions(), tight.winch)
        trace = simulate(tight, init, 1e-4,
                         StopCondition(max_time=10.0, kind="force_released"))
        assert trace.spring_pos.min() >= 0.0
        assert trace.spring_pos.max() <= 0.05

    def test_no_deficit_times_out_without_force(self):
        params = default_system_params()
        init = initial_state(InitConditions(20.0, 10.0, 0.0), params.winch)
        trace = simulate(params, init, 1e-4,
                         StopCondition(max_time=0.5, kind="force_released"))
        assert trace.timed_out
        assert trace.force.max() < 1e-9

    def test_short_window_tags_timeout(self):
        params = default_system_params()
        init = initial_state(default_init_conditions(), params.winch)
        trace = simulate(params, init, 1e-4,
                         StopCondition(max_time=0.05, kind="force_released"))
        assert trace.timed_out
        assert trace.times[-1] == pytest.approx(0.05, abs=1e-4)

    def test_max_time_kind_is_not_a_timeout(self):
        params = default_system_params()
        init = initial_state(default_init_conditions(), params.winch)
        trace = simulate(params, init, 1e-3,
                         StopCondition(max_time=0.1, kind="max_time"))
        assert not trace.timed_out

    def test_bit_identical_across_runs_and_threads(self):
        params = default_system_params()
        init = initial_state(default_init_conditions(), params.winch)
        stop = StopCondition(max_time=10.0, kind="force_released")

        def run(_):
            return simulate(params, init, 1e-4, stop)

        with ThreadPoolExecutor(max_workers=2) as pool:
            first, second = pool.map(run, range(2))
        assert np.array_equal(first.states, second.states)
        assert np.array_equal(first.force, second.force)
        assert np.array_equal(first.length, second.length)
