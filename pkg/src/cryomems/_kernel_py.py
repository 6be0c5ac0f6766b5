"""Pure-Python transient integrator kernel.

Fixed-step RK4 on the 1-DOF tip equation with a one-sided penalty contact.
This is the reference implementation; the compiled kernel in _kernel.pyx
repeats the same arithmetic statement by statement so both backends produce
bit-identical trajectories.  Any change here must be mirrored there.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

STATUS_OK = 0
STATUS_SINGULAR = 1
STATUS_OVERSHOOT = 2

# contact-tracker states
_FAR = 0      # separated by more than eps, or never touched
_CONTACT = 1  # tip at or beyond the contact plane
_NEAR = 2     # lifted off but still within eps of the plane


def run_transient(
    m: float,
    k: float,
    b: float,
    f_coef: float,
    lam: float,
    g_eff: float,
    g_c: float,
    k_contact: float,
    c_contact: float,
    edge_t: np.ndarray,
    edge_v: np.ndarray,
    x0: float,
    v0: float,
    dt: float,
    n_steps: int,
    stride: int,
    eps: float,
    pen_limit: float,
):
    """Integrate n_steps of size dt and return sampled arrays plus events.

    f_coef is the electrostatic force numerator coefficient so that the tip
    force is f_coef * V^2 / (g_eff - lam*x)^2.  The contact force engages for
    x > g_c and is clipped so the stop never pulls the tip inward.  Returns
    (times, xs, vs, vgs, events, max_pen, status, fail_time) where events is
    a list of (touch_time, leave_time, impact_velocity) with leave_time nan
    when the tip is still down at the end of the run.
    """
    n_rec = n_steps // stride + 1
    times = np.empty(n_rec)
    xs = np.empty(n_rec)
    vs = np.empty(n_rec)
    vgs = np.empty(n_rec)

    n_edges = len(edge_t)
    idx = 0

    x = x0
    v = v0
    state = _FAR
    pending_leave = 0.0
    touch_times: list[float] = []
    leave_times: list[float] = []
    impact_vels: list[float] = []
    max_pen = 0.0
    status = STATUS_OK
    fail_time = 0.0

    half = 0.5 * dt
    sixth = dt / 6.0
    rec = 0

    i = 0
    while i < n_steps:
        t = i * dt

        # gate voltage at t (piecewise constant, edges pre-merged)
        while idx + 1 < n_edges and t >= edge_t[idx + 1]:
            idx += 1
        v_gate = edge_v[idx]

        if i % stride == 0:
            times[rec] = t
            xs[rec] = x
            vs[rec] = v
            vgs[rec] = v_gate
            rec += 1

        # voltage at the half and full step (same walker, monotone time)
        th = t + half
        j = idx
        while j + 1 < n_edges and th >= edge_t[j + 1]:
            j += 1
        v_half = edge_v[j]
        tf = t + dt
        while j + 1 < n_edges and tf >= edge_t[j + 1]:
            j += 1
        v_full = edge_v[j]

        # RK4 stages; acceleration inlined so both backends share one form
        d = g_eff - lam * x
        if d <= 0.0:
            status = STATUS_SINGULAR
            fail_time = t
            break
        f = f_coef * v_gate * v_gate / (d * d) - k * x - b * v
        pen = x - g_c
        if pen > 0.0:
            fc = -k_contact * pen - c_contact * v
            if fc < 0.0:
                f = f + fc
        a1 = f / m
        x1 = v
        xa = x + half * x1
        va = v + half * a1

        d = g_eff - lam * xa
        if d <= 0.0:
            status = STATUS_SINGULAR
            fail_time = t
            break
        f = f_coef * v_half * v_half / (d * d) - k * xa - b * va
        pen = xa - g_c
        if pen > 0.0:
            fc = -k_contact * pen - c_contact * va
            if fc < 0.0:
                f = f + fc
        a2 = f / m
        x2 = va
        xb = x + half * x2
        vb = v + half * a2

        d = g_eff - lam * xb
        if d <= 0.0:
            status = STATUS_SINGULAR
            fail_time = t
            break
        f = f_coef * v_half * v_half / (d * d) - k * xb - b * vb
        pen = xb - g_c
        if pen > 0.0:
            fc = -k_contact * pen - c_contact * vb
            if fc < 0.0:
                f = f + fc
        a3 = f / m
        x3 = vb
        xc = x + dt * x3
        vc = v + dt * a3

        d = g_eff - lam * xc
        if d <= 0.0:
            status = STATUS_SINGULAR
            fail_time = t
            break
        f = f_coef * v_full * v_full / (d * d) - k * xc - b * vc
        pen = xc - g_c
        if pen > 0.0:
            fc = -k_contact * pen - c_contact * vc
            if fc < 0.0:
                f = f + fc
        a4 = f / m
        x4 = vc

        x_prev = x
        v_prev = v
        x = x + sixth * (x1 + 2.0 * x2 + 2.0 * x3 + x4)
        v = v + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        t_new = t + dt

        pen = x - g_c
        if pen > max_pen:
            max_pen = pen
        if pen > pen_limit:
            status = STATUS_OVERSHOOT
            fail_time = t_new
            break

        # contact tracker; re-touch within eps of the plane merges into the
        # current event so integration chatter does not inflate the count
        if state != _CONTACT and x >= g_c:
            frac = (g_c - x_prev) / (x - x_prev)
            t_touch = t + dt * frac
            v_imp = v_prev + (v - v_prev) * frac
            if state == _FAR:
                touch_times.append(t_touch)
                leave_times.append(float("nan"))
                impact_vels.append(v_imp)
            else:
                leave_times[-1] = float("nan")
            state = _CONTACT
        elif state == _CONTACT and x < g_c:
            frac = (x_prev - g_c) / (x_prev - x)
            pending_leave = t + dt * frac
            state = _NEAR
        elif state == _NEAR and x < g_c - eps:
            leave_times[-1] = pending_leave
            state = _FAR

        i += 1

    if status == STATUS_OK:
        t = n_steps * dt
        while idx + 1 < n_edges and t >= edge_t[idx + 1]:
            idx += 1
        times[rec] = t
        xs[rec] = x
        vs[rec] = v
        vgs[rec] = edge_v[idx]
        rec += 1
        if state == _NEAR:
            leave_times[-1] = pending_leave

    times = times[:rec]
    xs = xs[:rec]
    vs = vs[:rec]
    vgs = vgs[:rec]
    events = list(zip(touch_times, leave_times, impact_vels))
    return times, xs, vs, vgs, events, max_pen, status, fail_time
