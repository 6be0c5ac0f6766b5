"""Timing and parity comparison of the two integrator kernels.

Runs identical transients through the compiled kernel and the pure-Python
fallback, checks that every sampled array and contact event matches bit for
bit, and prints a wall-time table.  Usage:

    python benchmarks/benchmark_kernel.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cryomems import dynamics
from cryomems._kernel_py import BACKEND as PY_BACKEND
from cryomems import _kernel_py
from cryomems.calibrate import DEFAULT_LANDING_SPEC, DEFAULT_PARAMS
from cryomems.dynamics import SimConfig, simulate_transient
from cryomems.params import Environment
from cryomems.waveform import (
    characterization_hold_pulse,
    engineered_waveform,
    standard_gate_pulse,
)

CASES = (
    ("square close, 295 K, 8 us", Environment(),
     standard_gate_pulse(), SimConfig(t_end=8e-6, dt=1e-9, record_stride=8)),
    ("bounce cascade, 5.8 K, 60 us", Environment(temperature=5.8),
     characterization_hold_pulse(), SimConfig(t_end=60e-6, dt=1e-9, record_stride=8)),
    ("engineered landing, 5.8 K, 15 us", Environment(temperature=5.8),
     engineered_waveform(DEFAULT_LANDING_SPEC),
     SimConfig(t_end=15e-6, dt=1e-9, record_stride=8)),
)


def _run(kernel, env, wave, config):
    saved = dynamics._kernel
    dynamics._kernel = kernel
    try:
        return simulate_transient(DEFAULT_PARAMS, env, wave, config)
    finally:
        dynamics._kernel = saved


def _time(kernel, env, wave, config, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        _run(kernel, env, wave, config)
        best = min(best, time.perf_counter() - t0)
    return best


def _identical(a, b) -> bool:
    arrays_equal = all(
        np.array_equal(getattr(a, name), getattr(b, name))
        for name in ("times", "tip_position", "tip_velocity", "gate_voltage"))
    if not arrays_equal or len(a.contact_events) != len(b.contact_events):
        return False
    # leave_time is NaN while a contact is still closed at t_end
    return all(
        np.array_equal(np.asarray(ea, dtype=float), np.asarray(eb, dtype=float),
                       equal_nan=True)
        for ea, eb in zip(a.contact_events, b.contact_events))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    compiled = dynamics._kernel
    if compiled.BACKEND == PY_BACKEND:
        print("compiled kernel not available; nothing to compare against")
        return 1

    header = f"{'case':38s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}  parity"
    print(header)
    print("-" * len(header))
    all_match = True
    for name, env, wave, config in CASES:
        match = _identical(_run(compiled, env, wave, config),
                           _run(_kernel_py, env, wave, config))
        all_match &= match
        t_c = _time(compiled, env, wave, config, args.repeats)
        t_p = _time(_kernel_py, env, wave, config, args.repeats)
        print(f"{name:38s} {t_c * 1e3:8.1f} ms {t_p * 1e3:8.1f} ms "
              f"{t_p / t_c:7.1f}x  {'bitwise' if match else 'MISMATCH'}")
    print()
    print("parity:", "all cases bitwise identical" if all_match else "MISMATCH")
    return 0 if all_match else 1


if __name__ == "__main__":
    raise SystemExit(main())
