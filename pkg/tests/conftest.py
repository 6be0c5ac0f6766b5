"""Shared fixtures: calibrated device, environments, reference transients.

The transient fixtures are session-scoped because several modules (and the
acceptance suite) interrogate the same three canonical runs.
"""

import time

import pytest

from cryomems.calibrate import DEFAULT_LANDING_SPEC, DEFAULT_PARAMS
from cryomems.dynamics import SimConfig, simulate_transient
from cryomems.params import Environment
from cryomems.waveform import (
    characterization_hold_pulse,
    engineered_waveform,
    standard_gate_pulse,
)


@pytest.fixture(scope="session")
def params():
    return DEFAULT_PARAMS


@pytest.fixture(scope="session")
def landing_spec():
    return DEFAULT_LANDING_SPEC


@pytest.fixture(scope="session")
def env_rt():
    return Environment()


@pytest.fixture(scope="session")
def env_cryo():
    return Environment(temperature=5.8)


@pytest.fixture(scope="session")
def square_trace_rt(params, env_rt):
    """295 K closing transient under the standard 90 V square drive."""
    return simulate_transient(
        params, env_rt, standard_gate_pulse(),
        SimConfig(t_end=8e-6, dt=1e-9, record_stride=4))


@pytest.fixture(scope="session")
def cascade_trace_cryo(params, env_cryo):
    """5.8 K bounce cascade under a held gate, long enough to ring down."""
    return simulate_transient(
        params, env_cryo, characterization_hold_pulse(),
        SimConfig(t_end=400e-6, dt=1e-9, record_stride=20))


@pytest.fixture(scope="session")
def square_trace_cryo(params, env_cryo):
    """5.8 K closing transient under the standard square drive."""
    return simulate_transient(
        params, env_cryo, standard_gate_pulse(),
        SimConfig(t_end=15e-6, dt=1e-9, record_stride=4))


@pytest.fixture(scope="session")
def engineered_trace_cryo(params, env_cryo, landing_spec):
    """5.8 K soft-landing transient with the calibrated drive profile."""
    return simulate_transient(
        params, env_cryo, engineered_waveform(landing_spec),
        SimConfig(t_end=15e-6, dt=1e-9, record_stride=4))


# Whole-suite wall time is itself a requirement (budget: two minutes), so the
# session hooks measure it and report a verdict alongside the acceptance lines.
_SUITE_BUDGET_S = 120.0


def pytest_sessionstart(session):
    session.config._suite_t0 = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    t0 = getattr(session.config, "_suite_t0", None)
    if t0 is None:
        return
    elapsed = time.perf_counter() - t0
    verdict = "PASS" if elapsed < _SUITE_BUDGET_S else "FAIL"
    reporter = session.config.pluginmanager.get_plugin("terminalreporter")
    line = (f"[acceptance] suite runtime: {verdict} - "
            f"{elapsed:.1f} s (budget {_SUITE_BUDGET_S:.0f} s)")
    if reporter is not None:
        reporter.write_line(line)
    else:
        print(line)
