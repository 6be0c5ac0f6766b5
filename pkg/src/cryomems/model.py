"""Static switch physics: gaps, pull-in voltage, contact resistance, gas.

Everything here is closed-form.  The transient solver in
:mod:`cryomems.dynamics` builds on these same expressions, so the
quasi-static sweep there doubles as an independent check of
:func:`pull_in_voltage`.
"""

from __future__ import annotations

import math

from .params import EPS0, Environment, SwitchParams

# Fractional reduction of contact resistance between 295 K and 5.8 K.
R_ON_CRYO_DROP = 0.153
_R_ON_T_LOW = 5.8
_R_ON_T_HIGH = 295.0


def _check_temperature(temperature: float) -> None:
    if not 0.0 <= temperature <= 400.0:
        raise ValueError(f"temperature out of supported range [0, 400] K: {temperature!r}")


def thermal_gap_shift(params: SwitchParams, temperature: float) -> float:
    """Absolute gap reduction at ``temperature`` relative to 295 K, m.

    Differential contraction of the metal stack bows the cantilever toward
    the substrate as the device cools.  The shift grows linearly from zero
    at 295 K to ``thermal_gap_shift_max`` at 0 K and is zero above 295 K.
    """
    _check_temperature(temperature)
    if temperature >= 295.0:
        return 0.0
    return params.thermal_gap_shift_max * (295.0 - temperature) / 295.0


def gap_at_temperature(params: SwitchParams, temperature: float) -> float:
    """Gate-plate actuation gap at ``temperature``, m."""
    return params.gap_actuation_295 - thermal_gap_shift(params, temperature)


def contact_gap_at_temperature(params: SwitchParams, temperature: float) -> float:
    """Tip travel to contact at ``temperature``, m.

    The whole beam bows, so the contact gap shrinks by the same absolute
    amount as the actuation gap.
    """
    return params.gap_contact_295 - thermal_gap_shift(params, temperature)


def pull_in_voltage(params: SwitchParams, temperature: float) -> float:
    """Closed-form pull-in voltage at ``temperature``, V.

    sqrt(8 k g(T)^3 / (27 eps0 A lambda^2)) for a linear spring loaded by a
    parallel-plate force acting through the lever ratio.
    """
    g = gap_at_temperature(params, temperature)
    lam = params.lever_ratio
    return math.sqrt(
        8.0 * params.stiffness * g**3 / (27.0 * EPS0 * params.electrode_area * lam**2)
    )


def on_resistance(params: SwitchParams, temperature: float) -> float:
    """Closed-state contact resistance at ``temperature``, ohm.

    Linear metallic reduction on [5.8, 295] K, clamped outside; the ratio
    R(5.8)/R(295) equals 1 - 0.153 exactly.
    """
    _check_temperature(temperature)
    t = min(max(temperature, _R_ON_T_LOW), _R_ON_T_HIGH)
    frac = (_R_ON_T_HIGH - t) / (_R_ON_T_HIGH - _R_ON_T_LOW)
    return params.r_on_295 * (1.0 - R_ON_CRYO_DROP * frac)


def gas_pressure(env: Environment, temperature: float | None = None) -> float:
    """Cavity gas pressure at ``temperature``, Pa.

    Sealed, constant-volume ideal gas: p scales linearly with T.  Below the
    O2 condensation point the oxygen fraction drops out; below the N2 point
    only a residual fraction of the sealing pressure remains.
    """
    t = env.temperature if temperature is None else temperature
    _check_temperature(t)
    if t >= env.t_condense_o2:
        return env.pressure_ref * t / 295.0
    if t >= env.t_condense_n2:
        return (1.0 - env.o2_fraction) * env.pressure_ref * t / 295.0
    return env.residual_pressure_fraction * env.pressure_ref
