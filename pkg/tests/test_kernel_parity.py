"""The compiled kernel and the pure-Python fallback must agree bit for bit."""

import numpy as np
import pytest

from cryomems import _kernel_py, dynamics
from cryomems.dynamics import SimConfig, kernel_backend, simulate_transient
from cryomems.params import Environment
from cryomems.waveform import (
    characterization_hold_pulse,
    engineered_waveform,
    standard_gate_pulse,
)

pytestmark = pytest.mark.skipif(
    kernel_backend() == _kernel_py.BACKEND,
    reason="compiled kernel not built; nothing to compare against")


def _run_both(params, env, wave, config):
    compiled = dynamics._kernel
    a = simulate_transient(params, env, wave, config)
    dynamics._kernel = _kernel_py
    try:
        b = simulate_transient(params, env, wave, config)
    finally:
        dynamics._kernel = compiled
    return a, b


def _assert_bitwise(a, b):
    for name in ("times", "tip_position", "tip_velocity", "gate_voltage"):
        assert np.array_equal(getattr(a, name), getattr(b, name)), name
    assert len(a.contact_events) == len(b.contact_events)
    for ea, eb in zip(a.contact_events, b.contact_events):
        # leave_time is nan while still in contact at run end
        assert np.array_equal(np.asarray(ea, dtype=float),
                              np.asarray(eb, dtype=float), equal_nan=True)
    assert a.max_penetration == b.max_penetration


def test_square_close_at_room_temperature(params, env_rt):
    _assert_bitwise(*_run_both(params, env_rt, standard_gate_pulse(),
                               SimConfig(t_end=8e-6, dt=1e-9, record_stride=8)))


def test_bounce_cascade_at_5p8k(params, env_cryo):
    _assert_bitwise(*_run_both(params, env_cryo, characterization_hold_pulse(),
                               SimConfig(t_end=60e-6, dt=1e-9, record_stride=8)))


def test_engineered_landing_at_5p8k(params, env_cryo, landing_spec):
    _assert_bitwise(*_run_both(params, env_cryo, engineered_waveform(landing_spec),
                               SimConfig(t_end=15e-6, dt=1e-9, record_stride=8)))
