"""Parameter records for the switch model.

Three records cover everything the simulator needs: the switch itself
(`SwitchParams`), the thermal/gas environment (`Environment`), and the
measurement targets used to produce a calibrated default parameter set
(`CalibrationTargets`).  All values are SI.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

# Vacuum permittivity, F/m (CODATA 2018).
EPS0 = 8.8541878128e-12


@dataclass(frozen=True)
class SwitchParams:
    """Lumped one-degree-of-freedom description of a cantilever switch.

    The tip coordinate x runs from 0 (open rest position) toward
    ``gap_contact_295`` (contact).  The gate plate sits behind an actuation
    gap ``gap_actuation_295`` and moves ``lever_ratio`` times the tip
    displacement.

    :param mass_eff: effective modal mass, kg
    :param stiffness: effective spring constant at the tip, N/m
    :param gap_actuation_295: gate-plate electrostatic gap at 295 K, m
    :param gap_contact_295: tip travel to contact at 295 K, m
        (must not exceed ``gap_actuation_295``)
    :param lever_ratio: gate-plate displacement per unit tip displacement
    :param electrode_area: gate electrode overlap area, m^2
    :param gate_capacitance_closed: closed-state gate capacitance used in
        the drive-power estimate, F
    :param r_on_295: closed-state contact resistance at 295 K, ohm
    :param r_off_dc: open-state DC leakage resistance, ohm
    :param c_off: open-state coupling capacitance, F
    :param contact_stiffness: penalty spring at the contact stop, N/m
    :param contact_damping: penalty damper at the contact stop at reference
        pressure, N*s/m (scaled with ambient gas pressure at run time; the
        landing film that absorbs impact is gas, so it thins out as the
        sealed package cools and the fill gas condenses)
    :param struct_damping: structural (gas-independent) damping, N*s/m
    :param gas_damping_ref: gas damping at reference pressure, N*s/m
    :param thermal_gap_shift_max: total gap reduction from 295 K to 0 K, m
    """

    mass_eff: float
    stiffness: float
    gap_actuation_295: float
    gap_contact_295: float
    lever_ratio: float
    electrode_area: float
    gate_capacitance_closed: float
    r_on_295: float
    r_off_dc: float
    c_off: float
    contact_stiffness: float
    contact_damping: float
    struct_damping: float
    gas_damping_ref: float
    thermal_gap_shift_max: float

    def __post_init__(self) -> None:
        positive = (
            "mass_eff",
            "stiffness",
            "gap_actuation_295",
            "gap_contact_295",
            "lever_ratio",
            "electrode_area",
            "gate_capacitance_closed",
            "r_on_295",
            "r_off_dc",
            "c_off",
            "contact_stiffness",
            "thermal_gap_shift_max",
        )
        for name in positive:
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        for name in ("contact_damping", "struct_damping", "gas_damping_ref"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        if self.gap_contact_295 > self.gap_actuation_295:
            raise ValueError(
                "gap_contact_295 must not exceed gap_actuation_295 "
                f"({self.gap_contact_295!r} > {self.gap_actuation_295!r})"
            )
        if self.thermal_gap_shift_max >= self.gap_contact_295:
            raise ValueError("thermal_gap_shift_max must be smaller than gap_contact_295")
        if self.r_off_dc < 1e6 * self.r_on_295:
            raise ValueError("r_off_dc must dominate r_on_295 by at least 1e6x")


@dataclass(frozen=True)
class Environment:
    """Operating environment of a sealed switch package.

    The package is sealed at ``pressure_ref`` (room conditions) with air.
    Cooling reduces the internal pressure isochorically; below the O2 and
    N2 condensation points the corresponding fraction drops out of the gas
    phase, and below both the cavity is effectively evacuated apart from a
    small residual fraction.

    :param temperature: operating temperature, K
    :param pressure_ref: sealing pressure at 295 K, Pa
    :param t_condense_o2: oxygen condensation temperature, K
    :param t_condense_n2: nitrogen condensation temperature, K
    :param o2_fraction: mole fraction of oxygen in the fill gas
    :param residual_pressure_fraction: pressure floor below full
        condensation, as a fraction of ``pressure_ref``
    """

    temperature: float = 295.0
    pressure_ref: float = 101325.0
    t_condense_o2: float = 90.2
    t_condense_n2: float = 77.4
    o2_fraction: float = 0.21
    residual_pressure_fraction: float = 1e-4

    def __post_init__(self) -> None:
        if not 0.0 <= self.temperature <= 400.0:
            raise ValueError(f"temperature out of supported range [0, 400] K: {self.temperature!r}")
        if self.pressure_ref <= 0.0:
            raise ValueError("pressure_ref must be positive")
        if not self.t_condense_n2 < self.t_condense_o2:
            raise ValueError("t_condense_n2 must be below t_condense_o2")
        if not 0.0 <= self.o2_fraction <= 1.0:
            raise ValueError("o2_fraction must lie in [0, 1]")
        if not 0.0 < self.residual_pressure_fraction < 1.0:
            raise ValueError("residual_pressure_fraction must lie in (0, 1)")


@dataclass(frozen=True)
class CalibrationTargets:
    """Measurement targets the calibration routine reproduces.

    :param v_pi_295: pull-in voltage at 295 K, V (must lie in (55, 80))
    :param switching_time_295: closing time under a 90 V step at 295 K, s
    :param switching_tol: relative tolerance on ``switching_time_295``
    :param thermal_gap_shift: total gap reduction at 0 K, m
    :param pull_in_drop_0k: relative pull-in reduction at 0 K
    :param ring_down_target: target duration of post-contact bouncing for
        a plain square pulse at 5.8 K, s
    """

    v_pi_295: float = 70.0
    switching_time_295: float = 2.7e-6
    switching_tol: float = 0.02
    thermal_gap_shift: float = 60e-9
    pull_in_drop_0k: float = 0.035
    ring_down_target: float = 150e-6

    def __post_init__(self) -> None:
        if not 55.0 < self.v_pi_295 < 80.0:
            raise ValueError("v_pi_295 must lie in (55, 80) V")
        if self.switching_time_295 <= 0.0:
            raise ValueError("switching_time_295 must be positive")
        if not 0.0 < self.pull_in_drop_0k < 1.0:
            raise ValueError("pull_in_drop_0k must lie in (0, 1)")
        if self.thermal_gap_shift <= 0.0:
            raise ValueError("thermal_gap_shift must be positive")


def params_to_dict(params: SwitchParams) -> dict:
    return dataclasses.asdict(params)


def params_from_dict(data: dict) -> SwitchParams:
    known = {f.name for f in dataclasses.fields(SwitchParams)}
    missing = known - set(data)
    if missing:
        raise ValueError(f"missing switch parameter fields: {sorted(missing)}")
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown switch parameter fields: {sorted(extra)}")
    return SwitchParams(**data)


def save_params(params: SwitchParams, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(params_to_dict(params), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_params(path: str) -> SwitchParams:
    with open(path) as fh:
        return params_from_dict(json.load(fh))


def environment_to_dict(env: Environment) -> dict:
    return dataclasses.asdict(env)


def environment_from_dict(data: dict) -> Environment:
    known = {f.name for f in dataclasses.fields(Environment)}
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown environment fields: {sorted(extra)}")
    return Environment(**data)
