"""Shared fixtures: the default setup and the expensive reference runs."""

from __future__ import annotations

import time
from dataclasses import replace

import pytest

from tetherlaunch.config import default_app_config
from tetherlaunch.spring_design import assess_trace, simulate_design
from tetherlaunch.takeoff import run_takeoff


@pytest.fixture(scope="session")
def config():
    return default_app_config()


@pytest.fixture(scope="session")
def takeoff_default(config):
    """Default take-off run plus the wall time it took."""
    start = time.perf_counter()
    result = run_takeoff(config.takeoff, config.system, config.control)
    elapsed = time.perf_counter() - start
    return result, elapsed


@pytest.fixture(scope="session")
def sizing_runs(config):
    """Sizing traces and verdicts for the three reference travels."""
    runs = {}
    start = time.perf_counter()
    for travel in (0.05, 0.2, 0.35):
        params = replace(config.system,
                         spring=replace(config.system.spring,
                                        max_travel=travel))
        trace = simulate_design(params, config.ic, dt=config.dt,
                                max_time=config.max_time,
                                force_tol=config.force_tolerance)
        runs[travel] = (trace, assess_trace(trace, params,
                                            config.force_tolerance))
    elapsed = time.perf_counter() - start
    return runs, elapsed
