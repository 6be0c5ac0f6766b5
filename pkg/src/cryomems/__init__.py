"""Cryogenic electrostatic cantilever switch simulator."""

__version__ = "0.1.0"

from .params import (
    EPS0,
    CalibrationTargets,
    Environment,
    SwitchParams,
    load_params,
    save_params,
)
from .exceptions import (
    CalibrationError,
    LogicIntegrityError,
    OptimizationError,
    SingularityError,
    StabilityError,
)
from .model import (
    gap_at_temperature,
    gas_pressure,
    on_resistance,
    pull_in_voltage,
    thermal_gap_shift,
)
from .waveform import (
    EngineeredSpec,
    Waveform,
    actuation_power,
    engineered_waveform,
    square_pulse,
    standard_gate_pulse,
)
from .dynamics import (
    SimConfig,
    Trace,
    bounce_metrics,
    kernel_backend,
    quasi_static_sweep,
    simulate_transient,
    switching_time,
)
from .calibrate import CalibrationResult, calibrate, default_landing_spec, default_params
from .optimize import ObjectiveWeights, landing_objective, optimize_waveform
from .rf import insertion_loss_sweep, isolation_sweep, s21_series
from .network import LogicCircuit, SP4TDevice, logic_transient, nand, nor, route
from .scenarios import (
    CycleReport,
    Scenario,
    cycling_test,
    figure_preset,
    run_scenario,
    temperature_sweep,
)
