# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled transient integrator kernel.

Statement-for-statement mirror of _kernel_py.run_transient.  The build turns
off floating-point contraction so results stay bit-identical to the Python
backend; keep the arithmetic in the same order when editing either file.
"""

import numpy as np

BACKEND = "cython"

STATUS_OK = 0
STATUS_SINGULAR = 1
STATUS_OVERSHOOT = 2

cdef int _FAR = 0
cdef int _CONTACT = 1
cdef int _NEAR = 2


def run_transient(
    double m,
    double k,
    double b,
    double f_coef,
    double lam,
    double g_eff,
    double g_c,
    double k_contact,
    double c_contact,
    edge_t_in,
    edge_v_in,
    double x0,
    double v0,
    double dt,
    long n_steps,
    long stride,
    double eps,
    double pen_limit,
):
    """See _kernel_py.run_transient; same contract, same bit-level results."""
    cdef long n_rec = n_steps // stride + 1
    times_arr = np.empty(n_rec)
    xs_arr = np.empty(n_rec)
    vs_arr = np.empty(n_rec)
    vgs_arr = np.empty(n_rec)
    cdef double[::1] times = times_arr
    cdef double[::1] xs = xs_arr
    cdef double[::1] vs = vs_arr
    cdef double[::1] vgs = vgs_arr

    edge_t_c = np.ascontiguousarray(edge_t_in, dtype=np.float64)
    edge_v_c = np.ascontiguousarray(edge_v_in, dtype=np.float64)
    cdef double[::1] edge_t = edge_t_c
    cdef double[::1] edge_v = edge_v_c
    cdef long n_edges = edge_t.shape[0]
    cdef long idx = 0
    cdef long j

    cdef double x = x0
    cdef double v = v0
    cdef int state = _FAR
    cdef double pending_leave = 0.0
    touch_times = []
    leave_times = []
    impact_vels = []
    cdef double max_pen = 0.0
    cdef int status = STATUS_OK
    cdef double fail_time = 0.0

    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef long rec = 0

    cdef long i = 0
    cdef double t, th, tf, t_new, v_gate, v_half, v_full
    cdef double d, f, pen, fc, frac, t_touch, v_imp
    cdef double a1, a2, a3, a4, x1, x2, x3, x4, xa, xb, xc, va, vb, vc
    cdef double x_prev, v_prev

    while i < n_steps:
        t = i * dt

        while idx + 1 < n_edges and t >= edge_t[idx + 1]:
            idx += 1
        v_gate = edge_v[idx]

        if i % stride == 0:
            times[rec] = t
            xs[rec] = x
            vs[rec] = v
            vgs[rec] = v_gate
            rec += 1

        th = t + half
        j = idx
        while j + 1 < n_edges and th >= edge_t[j + 1]:
            j += 1
        v_half = edge_v[j]
        tf = t + dt
        while j + 1 < n_edges and tf >= edge_t[j + 1]:
            j += 1
        v_full = edge_v[j]

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

        if state != _CONTACT and x >= g_c:
            frac = (g_c - x_prev) / (x - x_prev)
            t_touch = t + dt * frac
            v_imp = v_prev + (v - v_prev) * frac
            if state == _FAR:
                touch_times.append(t_touch)
                leave_times.append(float("nan"))
                impact_vels.append(v_imp)
            else:
                # explicit index: wraparound is off module-wide
                leave_times[len(leave_times) - 1] = float("nan")
            state = _CONTACT
        elif state == _CONTACT and x < g_c:
            frac = (x_prev - g_c) / (x_prev - x)
            pending_leave = t + dt * frac
            state = _NEAR
        elif state == _NEAR and x < g_c - eps:
            leave_times[len(leave_times) - 1] = pending_leave
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
            leave_times[len(leave_times) - 1] = pending_leave

    times_out = times_arr[:rec]
    xs_out = xs_arr[:rec]
    vs_out = vs_arr[:rec]
    vgs_out = vgs_arr[:rec]
    events = list(zip(touch_times, leave_times, impact_vels))
    return times_out, xs_out, vs_out, vgs_out, events, max_pen, status, fail_time
