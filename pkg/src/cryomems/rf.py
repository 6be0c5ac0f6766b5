"""Small-signal two-port response of one switch in a matched line.

The switch is a single series lumped element in a z0 = 50 ohm system: the
closed state is its on-resistance (frequency-flat insertion loss), the open
state its off-capacitance (isolation falling 6 dB per octave).  No package
parasitics or line loss.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .params import SwitchParams
from .model import on_resistance

Z0_DEFAULT = 50.0

# dB floor standing in for a perfect open (|S21| = 0)
S21_DB_FLOOR = -600.0


class TwoPortPoint(NamedTuple):
    """Series-element two-port response at one frequency."""

    frequency: float
    s21_mag: float
    s21_db: float
    s11_mag: float


def s21_series(z_series: complex, z0: float = Z0_DEFAULT,
               frequency: float = 0.0) -> TwoPortPoint:
    """Two-port S-parameters of a series impedance between matched ports.

    S21 = 2 z0 / (2 z0 + Z) and S11 = Z / (2 z0 + Z); an infinite or NaN
    ``z_series`` is treated as a perfect open.
    """
    if z0 <= 0.0:
        raise ValueError(f"z0 must be positive, got {z0!r}")
    z = complex(z_series)
    if math.isinf(abs(z)) or math.isnan(abs(z)):
        return TwoPortPoint(frequency, 0.0, S21_DB_FLOOR, 1.0)
    denom = 2.0 * z0 + z
    s21 = 2.0 * z0 / denom
    s11 = z / denom
    mag = abs(s21)
    db = S21_DB_FLOOR if mag == 0.0 else max(20.0 * math.log10(mag), S21_DB_FLOOR)
    return TwoPortPoint(frequency, mag, db, abs(s11))


def _band(f_lo: float, f_hi: float, n: int) -> list[float]:
    if not f_lo < f_hi:
        raise ValueError(f"need f_lo < f_hi, got {f_lo!r} >= {f_hi!r}")
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n!r}")
    step = (f_hi - f_lo) / (n - 1)
    return [f_lo + i * step for i in range(n)]


def insertion_loss_sweep(params: SwitchParams, temperature: float,
                         f_lo: float = 4e9, f_hi: float = 8e9,
                         n: int = 101, z0: float = Z0_DEFAULT) -> list[TwoPortPoint]:
    """Closed-switch sweep: series element is the on-resistance at ``temperature``."""
    r = on_resistance(params, temperature)
    return [s21_series(complex(r, 0.0), z0, f) for f in _band(f_lo, f_hi, n)]


def isolation_sweep(params: SwitchParams, temperature: float,
                    f_lo: float = 4e9, f_hi: float = 8e9,
                    n: int = 101, z0: float = Z0_DEFAULT) -> list[TwoPortPoint]:
    """Open-switch sweep: series element is the off-capacitance reactance.

    ``temperature`` is accepted for interface symmetry; the off-capacitance
    is temperature-independent in this model.
    """
    del temperature
    c = params.c_off
    points = []
    for f in _band(f_lo, f_hi, n):
        if c == 0.0 or f == 0.0:
            points.append(TwoPortPoint(f, 0.0, S21_DB_FLOOR, 1.0))
        else:
            points.append(s21_series(1.0 / complex(0.0, 2.0 * math.pi * f * c), z0, f))
    return points


def isolation_db(point: TwoPortPoint) -> float:
    """Isolation is the negated transmission in dB."""
    return -point.s21_db


def export_rf_csv(points: list[TwoPortPoint], path: str) -> None:
    """Write a sweep as CSV columns f_hz,s21_db,s11_db."""
    lines = ["f_hz,s21_db,s11_db"]
    for pt in points:
        s11_db = (S21_DB_FLOOR if pt.s11_mag == 0.0
                  else max(20.0 * math.log10(pt.s11_mag), S21_DB_FLOOR))
        lines.append(f"{pt.frequency:.12g},{pt.s21_db:.12g},{s11_db:.12g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
