"""Transient and quasi-static tip dynamics.

The tip is a single lumped degree of freedom: effective mass on the beam
stiffness, driven by the gate electrostatic force through the lever ratio,
damped by a structural term plus a gas term that tracks ambient pressure,
and stopped by a stiff one-sided contact penalty at the contact gap.

Integration runs in a fixed-step RK4 kernel.  A compiled backend is used
when available; set CRYOMEMS_PURE_PYTHON=1 to force the pure-Python one.
Both produce bit-identical trajectories.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernel_py
from .exceptions import SingularityError, StabilityError
from .model import contact_gap_at_temperature, gap_at_temperature, gas_pressure
from .params import EPS0, Environment, SwitchParams
from .waveform import Waveform

if os.environ.get("CRYOMEMS_PURE_PYTHON") == "1":
    _kernel = _kernel_py
else:
    try:
        from . import _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _kernel_py


def kernel_backend() -> str:
    """Name of the integrator backend in use: "cython" or "python"."""
    return _kernel.BACKEND


def electrostatic_force(
    params: SwitchParams, x: float, voltage: float, temperature: float = 295.0
) -> float:
    """Tip-referred gate force at tip deflection ``x``, N.

    The gate plate sits at lever_ratio times the tip deflection, so the
    parallel-plate force picks up the same factor when referred to the tip
    (virtual work through the lever).
    """
    lam = params.lever_ratio
    g_eff = gap_at_temperature(params, temperature)
    d = g_eff - lam * x
    if d <= 0.0:
        raise SingularityError(f"plate gap closed at tip deflection {x!r} m")
    return lam * EPS0 * params.electrode_area * voltage * voltage / (2.0 * d * d)


def damping_coefficient(params: SwitchParams, env: Environment) -> float:
    """Flight damping, N s/m: structural floor plus gas film scaled by
    ambient pressure."""
    scale = gas_pressure(env) / env.pressure_ref
    return params.struct_damping + params.gas_damping_ref * scale


def contact_damping_effective(params: SwitchParams, env: Environment) -> float:
    """Contact-stop damping, N s/m, at the ambient gas pressure.

    The squeeze film between tip and contact is what absorbs impact, so the
    stop damper follows gas pressure the same way flight damping does.  At
    reference pressure this equals the contact_damping parameter; in a
    cryopumped cavity it nearly vanishes and touchdown turns elastic.
    """
    return params.contact_damping * gas_pressure(env) / env.pressure_ref


@dataclass(frozen=True)
class SimConfig:
    """Integration settings.

    :param t_end: end time, s (run covers at least this)
    :param dt: fixed step, s
    :param record_stride: sample every this many steps
    :param contact_epsilon: separation below this merges re-touches into
        the same contact event
    :param overshoot_fraction: allowed contact penetration as a fraction
        of the contact gap before the run aborts
    """

    t_end: float
    dt: float = 1e-9
    record_stride: int = 1
    contact_epsilon: float = 1e-9
    overshoot_fraction: float = 0.01

    def __post_init__(self) -> None:
        if self.t_end <= 0.0 or self.dt <= 0.0:
            raise ValueError("t_end and dt must be positive")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")
        if self.contact_epsilon <= 0.0 or self.overshoot_fraction <= 0.0:
            raise ValueError("contact_epsilon and overshoot_fraction must be positive")


class ContactEvent(NamedTuple):
    """One continuous dwell on the contact; chatter within contact_epsilon
    is merged.  leave_time is nan while the tip is still down at run end."""

    touch_time: float
    leave_time: float
    impact_velocity: float


@dataclass(frozen=True)
class Trace:
    """Sampled transient result."""

    times: np.ndarray
    tip_position: np.ndarray
    tip_velocity: np.ndarray
    gate_voltage: np.ndarray
    contact_events: tuple[ContactEvent, ...]
    contact_gap: float
    contact_epsilon: float
    rising_edges: tuple[float, ...]
    gate_change_times: tuple[float, ...]
    max_penetration: float
    temperature: float

    def final_in_contact(self) -> bool:
        ev = self.contact_events
        return bool(ev) and math.isnan(ev[-1].leave_time)


def _step_limit(params: SwitchParams) -> float:
    """Largest stable step: a twentieth of the in-contact natural period."""
    w = math.sqrt((params.stiffness + params.contact_stiffness) / params.mass_eff)
    return 2.0 * math.pi / w / 20.0


def simulate_transient(
    params: SwitchParams,
    env: Environment,
    wave: Waveform,
    config: SimConfig,
    x0: float = 0.0,
    v0: float = 0.0,
) -> Trace:
    """Integrate the tip response to ``wave`` and return a sampled trace.

    Raises StabilityError if the tip penetrates the stop beyond the
    configured fraction of the contact gap (advice: reduce dt or soften the
    drive) and SingularityError if the plate gap closes, which the stop
    should normally prevent.
    """
    dt_max = _step_limit(params)
    if config.dt > dt_max:
        raise ValueError(
            f"dt={config.dt!r} exceeds the stable-step bound {dt_max:.3e} s "
            "for this contact stiffness; reduce dt"
        )

    T = env.temperature
    g_eff = gap_at_temperature(params, T)
    g_c = contact_gap_at_temperature(params, T)
    if x0 >= g_c:
        raise ValueError("initial tip position must be on the open side of the stop")

    b = damping_coefficient(params, env)
    c_con = contact_damping_effective(params, env)
    lam = params.lever_ratio
    f_coef = lam * EPS0 * params.electrode_area / 2.0

    stride = config.record_stride
    n_steps = max(1, int(math.ceil(config.t_end / config.dt - 1e-9)))
    n_steps = ((n_steps + stride - 1) // stride) * stride

    edge_t, edge_v = wave.edges()
    edge_t_arr = np.asarray(edge_t, dtype=np.float64)
    edge_v_arr = np.asarray(edge_v, dtype=np.float64)

    times, xs, vs, vgs, events, max_pen, status, fail_time = _kernel.run_transient(
        params.mass_eff,
        params.stiffness,
        b,
        f_coef,
        lam,
        g_eff,
        g_c,
        params.contact_stiffness,
        c_con,
        edge_t_arr,
        edge_v_arr,
        x0,
        v0,
        config.dt,
        n_steps,
        stride,
        config.contact_epsilon,
        config.overshoot_fraction * g_c,
    )

    if status == _kernel_py.STATUS_SINGULAR:
        raise SingularityError(
            f"plate gap closed at t={fail_time:.6e} s; the contact gap leaves "
            "too little margin to the travel limit for this drive"
        )
    if status == _kernel_py.STATUS_OVERSHOOT:
        raise StabilityError(
            f"contact penetration exceeded {config.overshoot_fraction:.1%} of the "
            f"contact gap at t={fail_time:.6e} s; reduce dt or the approach speed"
        )

    changes: list[float] = []
    prev = 0.0
    for t_e, v_e in zip(edge_t, edge_v):
        if v_e != prev:
            changes.append(t_e)
        prev = v_e

    return Trace(
        times=times,
        tip_position=xs,
        tip_velocity=vs,
        gate_voltage=vgs,
        contact_events=tuple(ContactEvent(*ev) for ev in events),
        contact_gap=g_c,
        contact_epsilon=config.contact_epsilon,
        rising_edges=tuple(wave.rising_edge_times()),
        gate_change_times=tuple(changes),
        max_penetration=max_pen,
        temperature=T,
    )


@dataclass(frozen=True)
class BounceMetrics:
    """Contact-event summary of one transient."""

    bounce_count: int
    impact_velocity: float
    ring_down: float
    settle_time: float


def bounce_metrics(trace: Trace) -> BounceMetrics:
    """Summarize contact behaviour.

    bounce_count is the number of full separate-and-return excursions after
    first touch.  ring_down is first touch to last re-touch.  settle_time
    runs from the last gate edge inside the trace until the tip stays within
    contact_epsilon of its final position.
    """
    ev = trace.contact_events
    if not ev:
        count = 0
        v_imp = 0.0
        ring = 0.0
    else:
        count = len(ev) - 1
        v_imp = ev[0].impact_velocity
        ring = ev[-1].touch_time - ev[0].touch_time

    x = trace.tip_position
    t = trace.times
    x_final = x[-1]
    away = np.abs(x - x_final) > trace.contact_epsilon
    idx = np.nonzero(away)[0]
    t_settle = t[idx[-1] + 1] if len(idx) and idx[-1] + 1 < len(t) else t[0]

    ref = 0.0
    for t_e in trace.gate_change_times:
        if t_e <= t[-1]:
            ref = t_e
    settle = max(0.0, t_settle - ref)
    return BounceMetrics(
        bounce_count=count, impact_velocity=v_imp, ring_down=ring, settle_time=settle
    )


def switching_time(trace: Trace) -> float | None:
    """First gate rising edge to first contact touch, s; None if the tip
    never reaches the contact."""
    if not trace.contact_events:
        return None
    start = trace.rising_edges[0] if trace.rising_edges else 0.0
    return trace.contact_events[0].touch_time - start


@dataclass(frozen=True)
class PullInSweep:
    """Quasi-static deflection branch and its instability boundary."""

    temperature: float
    voltages: np.ndarray
    deflections: np.ndarray
    v_pi: float


def _static_deflection(
    k: float, f_coef: float, g_eff: float, lam: float, x_lim: float, voltage: float
) -> float | None:
    """Stable static tip deflection in [0, x_lim], or None past pull-in.

    Finds the lowest root of k*x = f_coef*V^2/(g_eff-lam*x)^2 by scanning
    for the first sign change of the restoring-minus-drive force and
    bisecting it.
    """
    if voltage == 0.0:
        return 0.0

    def h(x: float) -> float:
        d = g_eff - lam * x
        return k * x - f_coef * voltage * voltage / (d * d)

    n_scan = 512
    lo = 0.0
    h_lo = h(lo)
    hit = None
    for i in range(1, n_scan + 1):
        hi = x_lim * i / n_scan
        h_hi = h(hi)
        if h_lo < 0.0 <= h_hi:
            hit = (lo, hi)
            break
        lo, h_lo = hi, h_hi
    if hit is None:
        return None
    lo, hi = hit
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if h(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quasi_static_sweep(
    params: SwitchParams,
    env: Environment | None = None,
    v_max: float | None = None,
    v_step: float = 0.25,
) -> PullInSweep:
    """Ramp gate voltage slowly and track the stable deflection branch.

    Deflection is nan past the instability.  The boundary voltage v_pi is
    refined by bisection between the last stable and first unstable grid
    points, so it does not depend on the step size beyond bracketing.
    """
    if v_step <= 0.0:
        raise ValueError("v_step must be positive")
    temperature = env.temperature if env is not None else 295.0
    g_eff = gap_at_temperature(params, temperature)
    g_c = contact_gap_at_temperature(params, temperature)
    lam = params.lever_ratio
    k = params.stiffness
    f_coef = lam * EPS0 * params.electrode_area / 2.0
    x_lim = min(g_c, (g_eff / lam) * (1.0 - 1e-9))

    if v_max is None:
        # generous default range; the boundary itself is found numerically
        v_max = 1.5 * math.sqrt(
            8.0 * k * g_eff**3 / (27.0 * EPS0 * params.electrode_area * lam * lam)
        )

    n = int(math.floor(v_max / v_step + 1e-9)) + 1
    voltages = np.array([i * v_step for i in range(n)])
    deflections = np.empty(n)
    first_unstable = None
    for i, v in enumerate(voltages):
        x_s = _static_deflection(k, f_coef, g_eff, lam, x_lim, float(v))
        if x_s is None:
            deflections[i] = math.nan
            if first_unstable is None:
                first_unstable = i
        else:
            deflections[i] = x_s

    if first_unstable is None:
        raise ValueError(
            f"no instability found up to {v_max!r} V; raise v_max"
        )
    if first_unstable == 0:
        raise ValueError("unstable at 0 V; parameter set is inconsistent")

    lo = float(voltages[first_unstable - 1])
    hi = float(voltages[first_unstable])
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _static_deflection(k, f_coef, g_eff, lam, x_lim, mid) is None:
            hi = mid
        else:
            lo = mid
    v_pi = 0.5 * (lo + hi)
    return PullInSweep(
        temperature=temperature, voltages=voltages, deflections=deflections, v_pi=v_pi
    )


def export_trace_csv(trace: Trace, path: str) -> None:
    """Write the sampled trace as CSV: t_s, x_m, v_mps, v_gate."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t_s", "x_m", "v_mps", "v_gate"])
        for t, x, v, vg in zip(
            trace.times, trace.tip_position, trace.tip_velocity, trace.gate_voltage
        ):
            w.writerow([f"{t:.12g}", f"{x:.12g}", f"{v:.12g}", f"{vg:.12g}"])
