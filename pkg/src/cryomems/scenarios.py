"""Scenario execution: named runs producing CSV/JSON artifacts plus a manifest.

A Scenario is a small JSON-serializable description (kind, parameter file,
environment overrides, kind-specific options).  `run_scenario` executes it
into an output directory and writes `manifest.json` recording input hashes
and output hashes; everything is deterministic, so re-running a scenario
from its manifest reproduces the output files byte for byte.

The figure presets (`fig2c` .. `suppfig2`) bundle the scenarios behind each
reference plot with their pass/fail assertions.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, NamedTuple

from . import __version__
from .params import (
    Environment,
    SwitchParams,
    environment_to_dict,
    load_params,
    params_to_dict,
)
from .model import gas_pressure, on_resistance, pull_in_voltage
from .waveform import (
    EngineeredSpec,
    Waveform,
    actuation_power,
    characterization_hold_pulse,
    engineered_waveform,
    square_pulse,
    standard_gate_pulse,
)
from .dynamics import (
    SimConfig,
    bounce_metrics,
    damping_coefficient,
    export_trace_csv,
    kernel_backend,
    quasi_static_sweep,
    simulate_transient,
    switching_time,
)
from .rf import export_rf_csv, insertion_loss_sweep, isolation_sweep
from .network import (
    PARALLEL,
    SERIES,
    LogicCircuit,
    SP4TDevice,
    logic_transient,
    nand,
    nor,
    route,
)
from .optimize import ObjectiveWeights, landing_objective, optimize_waveform
from .calibrate import (
    DEFAULT_LANDING_SPEC,
    DEFAULT_PARAMS,
    calibrate as _run_calibration,
)

KINDS = (
    "transient", "temp_sweep", "pullin_sweep", "rf", "optimize",
    "logic", "route", "cycle", "budget", "calibrate",
)

# Default grid for temperature sweeps: dense through the bounce-onset region.
SWEEP_TEMPERATURES = (
    295.0, 250.0, 200.0, 150.0, 120.0, 100.0, 95.0, 90.0, 85.0, 80.0,
    77.4, 60.0, 40.0, 20.0, 10.0, 5.8,
)


@dataclass(frozen=True)
class Scenario:
    """One reproducible run: what to execute and with which inputs."""

    kind: str
    output_dir: str
    params_path: str | None = None
    env: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind: must be one of {', '.join(KINDS)}; got {self.kind!r}")
        if self.workers < 1:
            raise ValueError(f"workers: must be at least 1, got {self.workers!r}")
        env_fields = {f.name for f in fields(Environment)}
        for key in self.env:
            if key not in env_fields:
                raise ValueError(f"env.{key}: unknown environment field")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scenario fields: {', '.join(sorted(unknown))}")
        return cls(**data)


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        return Scenario.from_dict(json.load(fh))


class ScenarioReport(NamedTuple):
    """What a scenario produced and whether its assertions held."""

    scenario: Scenario
    outputs: dict
    assertions: dict
    summary: dict
    manifest_path: str


def _jsonable(obj):
    """Recursively coerce numpy scalars so json.dumps accepts the payload."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    return obj


def _sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _sha256_file(path: str) -> str:
    with open(path, "rb") as fh:
        return _sha256_bytes(fh.read())


def _write_text(outdir: str, name: str, text: str, outputs: dict) -> str:
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        fh.write(text)
    outputs[name] = _sha256_bytes(text.encode())
    return path


def _write_csv(outdir: str, name: str, header: list[str], rows: list[list],
               outputs: dict) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = [c if isinstance(c, str) else f"{c:.12g}" for c in row]
        lines.append(",".join(cells))
    return _write_text(outdir, name, "\n".join(lines) + "\n", outputs)


def _write_json(outdir: str, name: str, payload, outputs: dict) -> str:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    return _write_text(outdir, name, text, outputs)


def _resolve_params(scenario: Scenario) -> tuple[SwitchParams, dict]:
    if scenario.params_path is None:
        params = DEFAULT_PARAMS
        digest = _sha256_bytes(
            json.dumps(params_to_dict(params), sort_keys=True).encode())
        return params, {"params": "calibrated-default", "params_sha256": digest}
    params = load_params(scenario.params_path)
    return params, {"params": scenario.params_path,
                    "params_sha256": _sha256_file(scenario.params_path)}


def _resolve_env(scenario: Scenario) -> Environment:
    return Environment(**scenario.env)


def _opt(options: dict, key: str, default):
    return options.get(key, default)


def _check_options(options: dict, allowed: set[str]) -> None:
    unknown = set(options) - allowed
    if unknown:
        raise ValueError(
            "options." + ", options.".join(sorted(unknown)) + ": unknown option")


def _pmap(fn, items, workers: int):
    """Order-preserving map; results merged by index regardless of dispatch."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _standard_wave(name: str, spec: EngineeredSpec) -> Waveform:
    if name == "square":
        return standard_gate_pulse()
    if name == "hold":
        return characterization_hold_pulse()
    if name == "engineered":
        return engineered_waveform(spec)
    raise ValueError(f"options.waveform: must be square, hold, or engineered; got {name!r}")


# --- kind runners -----------------------------------------------------------

def _run_transient(params, env, options, outdir, outputs, workers):
    _check_options(options, {"waveform", "t_end", "dt", "record_stride",
                             "assert_close_us", "assert_close_tol",
                             "assert_max_bounces", "assert_min_bounces",
                             "assert_ring_us"})
    wave = _standard_wave(_opt(options, "waveform", "square"),
                          DEFAULT_LANDING_SPEC)
    config = SimConfig(
        t_end=float(_opt(options, "t_end", 15e-6)),
        dt=float(_opt(options, "dt", 1e-9)),
        record_stride=int(_opt(options, "record_stride", 8)),
    )
    trace = simulate_transient(params, env, wave, config)
    path = os.path.join(outdir, "trace.csv")
    export_trace_csv(trace, path)
    outputs["trace.csv"] = _sha256_file(path)
    metrics = bounce_metrics(trace)
    ts = switching_time(trace)
    summary = {
        "switching_time_s": ts,
        "bounce_count": metrics.bounce_count,
        "impact_velocity_mps": metrics.impact_velocity,
        "ring_down_s": metrics.ring_down,
        "settle_time_s": metrics.settle_time,
        "temperature_k": env.temperature,
    }
    _write_json(outdir, "metrics.json", summary, outputs)
    assertions = {}
    if "assert_close_us" in options:
        target = options["assert_close_us"] * 1e-6
        tol = _opt(options, "assert_close_tol", 0.05)
        assertions["closing_time_in_band"] = (
            ts is not None and abs(ts - target) <= tol * target)
    if "assert_max_bounces" in options:
        assertions["bounce_count_max"] = metrics.bounce_count <= options["assert_max_bounces"]
    if "assert_min_bounces" in options:
        assertions["bounce_count_min"] = metrics.bounce_count >= options["assert_min_bounces"]
    if "assert_ring_us" in options:
        lo, hi = options["assert_ring_us"]
        assertions["ring_down_in_band"] = lo * 1e-6 <= metrics.ring_down <= hi * 1e-6
    return assertions, summary


def temperature_sweep(params: SwitchParams, env: Environment,
                      temperatures=SWEEP_TEMPERATURES,
                      workers: int = 1) -> tuple[list[dict], float | None]:
    """Per-temperature summary plus the bounce-onset temperature.

    Each point reports the flight damping coefficient, pull-in voltage,
    on-resistance, gas pressure, and the bounce count under the held
    characterization pulse.  The onset is the first temperature, scanning
    from hot to cold, whose count exceeds 1.
    """
    if not temperatures:
        raise ValueError("temperature list must be non-empty")
    wave = characterization_hold_pulse()
    config = SimConfig(t_end=60e-6, dt=1e-9, record_stride=10)

    def one(temperature: float) -> dict:
        env_t = replace(env, temperature=temperature)
        count = bounce_metrics(
            simulate_transient(params, env_t, wave, config)).bounce_count
        return {
            "t_k": temperature,
            "v_pi_v": pull_in_voltage(params, temperature),
            "r_on_ohm": on_resistance(params, temperature),
            "damping_nsm": damping_coefficient(params, env_t),
            "gas_pressure_pa": gas_pressure(env_t),
            "bounce_count": count,
        }

    rows = _pmap(one, list(temperatures), workers)
    onset = None
    for row in sorted(rows, key=lambda r: -r["t_k"]):
        if row["bounce_count"] > 1:
            onset = row["t_k"]
            break
    return rows, onset


def _run_temp_sweep(params, env, options, outdir, outputs, workers):
    _check_options(options, {"temperatures", "assert_onset_window"})
    temps = tuple(_opt(options, "temperatures", SWEEP_TEMPERATURES))
    rows, onset = temperature_sweep(params, env, temps, workers)
    header = ["t_k", "v_pi_v", "r_on_ohm", "damping_nsm", "gas_pressure_pa",
              "bounce_count"]
    _write_csv(outdir, "sweep.csv", header,
               [[row[h] for h in header] for row in rows], outputs)
    summary = {"onset_temperature_k": onset, "points": len(rows)}
    _write_json(outdir, "onset.json", summary, outputs)
    assertions = {}
    if "assert_onset_window" in options:
        lo, hi = options["assert_onset_window"]
        assertions["onset_in_window"] = onset is not None and lo < onset < hi
    return assertions, summary


def _run_pullin(params, env, options, outdir, outputs, workers):
    _check_options(options, {"temperatures", "v_step", "assert_tolerance",
                             "assert_drop"})
    temps = tuple(_opt(options, "temperatures", (295.0, 5.8)))
    v_step = float(_opt(options, "v_step", 0.25))
    tol = float(_opt(options, "assert_tolerance", 0.01))

    def one(temperature: float):
        env_t = replace(env, temperature=temperature)
        return quasi_static_sweep(params, env_t, v_step=v_step)

    sweeps = _pmap(one, list(temps), workers)
    summary_rows = []
    assertions = {}
    v_pi = {}
    for temperature, sweep in zip(temps, sweeps):
        name = f"pullin_{temperature:g}k.csv"
        rows = [[v, x] for v, x in zip(sweep.voltages, sweep.deflections)
                if not math.isnan(x)]
        _write_csv(outdir, name, ["v_gate_v", "x_m"], rows, outputs)
        closed = pull_in_voltage(params, temperature)
        rel = abs(sweep.v_pi - closed) / closed
        v_pi[temperature] = sweep.v_pi
        summary_rows.append([temperature, sweep.v_pi, closed, rel])
        assertions[f"matches_closed_form_{temperature:g}k"] = rel < tol
    _write_csv(outdir, "pullin_summary.csv",
               ["t_k", "v_pi_sweep_v", "v_pi_closed_v", "rel_err"],
               summary_rows, outputs)
    summary = {"v_pi": {f"{t:g}": v for t, v in v_pi.items()}}
    if "assert_drop" in options:
        t_cold, t_hot, target, tol_drop = options["assert_drop"]
        ratio = v_pi[t_cold] / v_pi[t_hot]
        summary["drop_ratio"] = ratio
        assertions["pullin_drop"] = abs(ratio - target) <= tol_drop
    return assertions, summary


def _run_rf(params, env, options, outdir, outputs, workers):
    _check_options(options, {"state", "f_lo", "f_hi", "n",
                             "assert_loss_db", "assert_isolation_db"})
    state = _opt(options, "state", "on")
    if state not in ("on", "off"):
        raise ValueError(f"options.state: must be 'on' or 'off', got {state!r}")
    f_lo = float(_opt(options, "f_lo", 4e9))
    f_hi = float(_opt(options, "f_hi", 8e9))
    n = int(_opt(options, "n", 101))
    sweep_fn = insertion_loss_sweep if state == "on" else isolation_sweep
    points = sweep_fn(params, env.temperature, f_lo, f_hi, n)
    path = os.path.join(outdir, f"rf_{state}.csv")
    export_rf_csv(points, path)
    outputs[f"rf_{state}.csv"] = _sha256_file(path)
    worst_db = min(pt.s21_db for pt in points) if state == "on" else \
        max(pt.s21_db for pt in points)
    summary = {"state": state, "temperature_k": env.temperature,
               "points": n, "worst_s21_db": worst_db}
    assertions = {}
    if state == "on" and "assert_loss_db" in options:
        assertions["insertion_loss_bound"] = all(
            -pt.s21_db < options["assert_loss_db"] for pt in points)
    if state == "off" and "assert_isolation_db" in options:
        assertions["isolation_bound"] = all(
            -pt.s21_db > options["assert_isolation_db"] for pt in points)
    return assertions, summary


def _spec_from_name(name: str) -> EngineeredSpec:
    if name == "calibrated":
        return DEFAULT_LANDING_SPEC
    if name == "default":
        return EngineeredSpec()
    raise ValueError(
        f"options.template: must be 'calibrated' or 'default', got {name!r}")


def _run_optimize(params, env, options, outdir, outputs, workers):
    _check_options(options, {"template", "free", "bounds", "weights",
                             "max_evals", "t_end"})
    template = _spec_from_name(_opt(options, "template", "calibrated"))
    free = tuple(_opt(options, "free", ("v_coast", "t_coast", "t_kick")))
    bounds = {k: tuple(v) for k, v in _opt(options, "bounds", {
        "v_coast": (0.0, 60.0), "t_coast": (0.2e-6, 6e-6), "t_kick": (0.8e-6, 2.6e-6),
    }).items()}
    weights = ObjectiveWeights(**_opt(options, "weights", {}))
    config = SimConfig(t_end=float(_opt(options, "t_end", 15e-6)), dt=1e-9,
                       record_stride=4)
    history: list = []
    spec, objective = optimize_waveform(
        params, env, template, free, bounds, weights, config=config,
        max_evals=int(_opt(options, "max_evals", 160)), history=history)
    template_score = landing_objective(params, env, template, weights, config)
    best_score = landing_objective(params, env, spec, weights, config)
    _write_csv(outdir, "objective.csv", ["iteration", "objective"],
               list(history), outputs)
    _write_json(outdir, "best_spec.json", asdict(spec), outputs)
    summary = {
        "objective_template": template_score.objective,
        "objective_best": objective,
        "impact_velocity_mps": best_score.impact_velocity,
        "bounce_count": best_score.bounce_count,
        "t_close_s": best_score.t_close,
        "evaluations": len(history),
    }
    _write_json(outdir, "optimize_summary.json", summary, outputs)
    return {"objective_monotone": objective <= template_score.objective}, summary


_EXPECTED_TABLE = {
    "nand": {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 0},
    "nor": {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 0},
}


def _run_logic(params, env, options, outdir, outputs, workers):
    _check_options(options, {"gate", "frequency", "assert_lag_tol"})
    gate = _opt(options, "gate", "nand")
    if gate not in ("nand", "nor"):
        raise ValueError(f"options.gate: must be 'nand' or 'nor', got {gate!r}")
    frequency = float(_opt(options, "frequency", 10e3))
    circuit = LogicCircuit(SERIES if gate == "nand" else PARALLEL)
    gate_fn = nand if gate == "nand" else nor

    table = {}
    for a in (0, 1):
        for b in (0, 1):
            v_out, bit = gate_fn(a, b, circuit, params, env.temperature)
            table[f"{a}{b}"] = {"v_out": v_out, "bit": int(bit)}
    _write_json(outdir, "truth_table.json", table, outputs)
    table_ok = all(
        table[f"{a}{b}"]["bit"] == _EXPECTED_TABLE[gate][(a, b)]
        for a in (0, 1) for b in (0, 1))

    period = 1.0 / frequency
    drive = square_pulse(90.0, period / 2.0, period)
    config = SimConfig(t_end=period, dt=1e-9, record_stride=20)
    lt = logic_transient(circuit, [drive, drive], params, env, config)
    _write_csv(outdir, "logic_transient.csv", ["t_s", "v_out"],
               list(zip(lt.times, lt.v_out)), outputs)

    # both gates rise together, so the output transition tracks one switch
    ts = switching_time(lt.traces[0])
    threshold = 0.5 * circuit.v_supply
    lag = None
    for t, v in zip(lt.times, lt.v_out):
        if v < threshold:
            lag = t
            break
    summary = {"gate": gate, "temperature_k": env.temperature,
               "edge_lag_s": lag, "mechanical_switching_s": ts}
    assertions = {"truth_table_exact": table_ok}
    if "assert_lag_tol" in options:
        tol = options["assert_lag_tol"]
        assertions["edge_lag_tracks_mechanics"] = (
            lag is not None and ts is not None and abs(lag - ts) <= tol * ts)
    return assertions, summary


def _run_route(params, env, options, outdir, outputs, workers):
    _check_options(options, {"gate", "frequency", "n"})
    gate_index = int(_opt(options, "gate", 1))
    if not 1 <= gate_index <= 4:
        raise ValueError(f"options.gate: output index must be 1..4, got {gate_index!r}")
    frequency = float(_opt(options, "frequency", 10e3))
    n = int(_opt(options, "n", 501))
    period = 1.0 / frequency
    drive = square_pulse(90.0, period / 2.0, period)
    gates: list = [False] * 4
    gates[gate_index - 1] = drive
    dev = SP4TDevice.uniform(params, gates)
    rows = []
    exclusive = True
    for i in range(n):
        t = period * i / (n - 1) * (1.0 - 1e-12)
        res = route(dev, t, env.temperature)
        rows.append([t, *res.divided])
        high = sum(v > 0.5 for v in res.divided)
        asserted = drive.evaluate(t) > pull_in_voltage(params, env.temperature)
        if high != (1 if asserted else 0):
            exclusive = False
    _write_csv(outdir, "route.csv", ["t_s", "out1_v", "out2_v", "out3_v", "out4_v"],
               rows, outputs)
    summary = {"gate": gate_index, "samples": n}
    return {"router_exclusive": exclusive}, summary


class CycleReport(NamedTuple):
    """Outcome of repeated actuation periods from the converged steady state."""

    cycles_run: int
    samples: tuple
    max_drift: float
    failed_cycle: int | None


def cycling_test(params: SwitchParams, env: Environment, wave: Waveform,
                 n_cycles: int = 10_000, sample_decades: bool = True,
                 config: SimConfig | None = None,
                 perturb: Callable[[int, SwitchParams], SwitchParams] | None = None,
                 ) -> CycleReport:
    """Repeat one actuation period per cycle and report metric drift.

    The model has no wear physics: cycling validates pipeline determinism,
    not material lifetime.  Each cycle replays one period of ``wave`` from
    the converged periodic steady state, so with the default (identity)
    perturbation all cycles are bitwise identical; only sampled cycles are
    integrated and the rest are counted.  Pass ``perturb`` mapping
    (cycle_index, params) to per-cycle parameters, or ``sample_decades=
    False``, to force every cycle to run individually.

    ``samples`` holds (cycle, switching_time, bounce_count, settle_time)
    rows, at decade boundaries when ``sample_decades`` else for every cycle.
    Drift is the worst relative spread of each metric, taken over closed
    cycles only; a cycle that never closes stops the run and its index is
    reported in ``failed_cycle``.
    """
    if n_cycles < 1:
        raise ValueError("n_cycles must be at least 1")
    config = config or SimConfig(t_end=wave.period, dt=1e-9, record_stride=50)

    # converge the carried (x, v) state to the periodic fixed point
    x0 = v0 = 0.0
    for _ in range(64):
        trace = simulate_transient(params, env, wave, config, x0=x0, v0=v0)
        x1 = float(trace.tip_position[-1])
        v1 = float(trace.tip_velocity[-1])
        settled = abs(x1 - x0) <= 1e-15 and abs(v1 - v0) <= 1e-9
        x0, v0 = x1, v1
        if settled:
            break

    if sample_decades:
        wanted = {1, n_cycles}
        decade = 10
        while decade < n_cycles:
            wanted.add(decade)
            decade *= 10
    else:
        wanted = set(range(1, n_cycles + 1))

    # unperturbed replays are identical, so integrating non-sampled cycles
    # adds no information
    run_every = perturb is not None or not sample_decades
    cycle_indices = range(1, n_cycles + 1) if run_every else sorted(wanted)

    metrics_seen: list[tuple] = []
    samples = []
    failed_cycle = None
    for cycle in cycle_indices:
        cycle_params = perturb(cycle, params) if perturb is not None else params
        trace = simulate_transient(cycle_params, env, wave, config, x0=x0, v0=v0)
        ts = switching_time(trace)
        if ts is None:
            failed_cycle = cycle
            break
        mm = bounce_metrics(trace)
        metrics_seen.append((ts, mm.bounce_count, mm.settle_time))
        if cycle in wanted:
            samples.append((cycle, ts, mm.bounce_count, mm.settle_time))

    max_drift = 0.0
    for i in range(3):
        values = [m[i] for m in metrics_seen]
        if not values:
            continue
        spread = max(values) - min(values)
        ref = abs(values[0])
        max_drift = max(max_drift, spread / ref if ref else float(spread))
    if failed_cycle is not None:
        cycles_run = failed_cycle - 1 if run_every else len(metrics_seen)
    else:
        cycles_run = n_cycles
    return CycleReport(cycles_run, tuple(samples), max_drift, failed_cycle)


def _run_cycle(params, env, options, outdir, outputs, workers):
    _check_options(options, {"n_cycles", "waveform", "sample_decades"})
    n_cycles = int(_opt(options, "n_cycles", 1000))
    wave = _standard_wave(_opt(options, "waveform", "engineered"),
                          DEFAULT_LANDING_SPEC)
    report = cycling_test(params, env, wave, n_cycles,
                          bool(_opt(options, "sample_decades", True)))
    _write_csv(outdir, "cycles.csv",
               ["cycle", "switching_time_s", "bounce_count", "settle_time_s"],
               [list(s) for s in report.samples], outputs)
    summary = {
        "cycles_run": report.cycles_run,
        "max_drift": report.max_drift,
        "failed_cycle": report.failed_cycle,
    }
    _write_json(outdir, "cycle_report.json", summary, outputs)
    return {"all_cycles_closed": report.failed_cycle is None,
            "zero_drift": report.max_drift == 0.0}, summary


def _run_budget(params, env, options, outdir, outputs, workers):
    _check_options(options, {"n_switches", "voltage", "frequency", "budget_w"})
    n = int(_opt(options, "n_switches", 32))
    voltage = float(_opt(options, "voltage", 90.0))
    frequency = float(_opt(options, "frequency", 10e3))
    budget = float(_opt(options, "budget_w", 20e-6))
    per_switch = actuation_power(params.gate_capacitance_closed, voltage, frequency)
    total = n * per_switch
    _write_csv(outdir, "budget.csv",
               ["n_switches", "voltage_v", "frequency_hz", "power_per_switch_w",
                "total_w", "budget_w"],
               [[n, voltage, frequency, per_switch, total, budget]], outputs)
    summary = {"per_switch_w": per_switch, "total_w": total, "budget_w": budget}
    return {"within_budget": total <= budget}, summary


def _run_calibrate(params, env, options, outdir, outputs, workers):
    _check_options(options, set())
    result = _run_calibration()
    _write_json(outdir, "params.default.json", params_to_dict(result.params), outputs)
    _write_json(outdir, "landing_spec.json", asdict(result.landing_spec), outputs)
    _write_json(outdir, "calibration_diagnostics.json", result.diagnostics, outputs)
    return {"verified": True}, result.diagnostics


_RUNNERS = {
    "transient": _run_transient,
    "temp_sweep": _run_temp_sweep,
    "pullin_sweep": _run_pullin,
    "rf": _run_rf,
    "optimize": _run_optimize,
    "logic": _run_logic,
    "route": _run_route,
    "cycle": _run_cycle,
    "budget": _run_budget,
    "calibrate": _run_calibrate,
}


def run_scenario(scenario: Scenario, output_dir: str | None = None) -> ScenarioReport:
    """Execute a scenario into its output directory.

    Writes the kind-specific artifacts plus `manifest.json` (inputs, outputs,
    and their SHA-256 hashes).  Raises RuntimeError if any of the scenario's
    assertions fail; config errors surface as ValueError naming the field.
    """
    outdir = output_dir or scenario.output_dir
    os.makedirs(outdir, exist_ok=True)
    params, input_info = _resolve_params(scenario)
    env = _resolve_env(scenario)
    outputs: dict = {}
    try:
        assertions, summary = _RUNNERS[scenario.kind](
            params, env, scenario.options, outdir, outputs, scenario.workers)
    except ValueError:
        raise
    except Exception as err:
        raise RuntimeError(f"scenario {scenario.kind!r}: {err}") from err
    assertions = {name: bool(ok) for name, ok in assertions.items()}
    manifest = {
        "scenario": scenario.to_dict(),
        "inputs": {**input_info, "environment": environment_to_dict(env)},
        "outputs": outputs,
        "assertions": assertions,
        "summary": _jsonable(summary),
        "backend": kernel_backend(),
        "version": __version__,
    }
    manifest_path = os.path.join(outdir, "manifest.json")
    with open(manifest_path, "w") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    failed = [name for name, ok in assertions.items() if not ok]
    if failed:
        raise RuntimeError(
            f"scenario {scenario.kind!r}: assertions failed: {', '.join(failed)}")
    return ScenarioReport(scenario, outputs, assertions, summary, manifest_path)


def scenario_from_manifest(path: str) -> Scenario:
    """Rebuild the scenario a manifest was produced from."""
    with open(path) as fh:
        return Scenario.from_dict(json.load(fh)["scenario"])


def figure_preset(figure_id: str, output_dir: str) -> Scenario:
    """Named scenario reproducing the data behind one reference figure."""
    presets = {
        "fig2c": Scenario(
            kind="pullin_sweep", output_dir=output_dir,
            options={"temperatures": (295.0, 5.8), "assert_tolerance": 0.01,
                     "assert_drop": (5.8, 295.0, 0.969, 0.005)}),
        "fig2e": Scenario(
            kind="rf", output_dir=output_dir, env={"temperature": 5.8},
            options={"state": "on", "assert_loss_db": 0.5}),
        "fig2f": Scenario(
            kind="rf", output_dir=output_dir, env={"temperature": 5.8},
            options={"state": "off", "assert_isolation_db": 35.0}),
        "fig3b": Scenario(
            kind="transient", output_dir=output_dir,
            options={"waveform": "square", "t_end": 8e-6,
                     "assert_close_us": 2.7, "assert_close_tol": 0.05}),
        "fig3d": Scenario(
            kind="transient", output_dir=output_dir, env={"temperature": 5.8},
            options={"waveform": "hold", "t_end": 400e-6, "record_stride": 40,
                     "assert_min_bounces": 5, "assert_ring_us": (75.0, 300.0)}),
        "fig3f": Scenario(
            kind="transient", output_dir=output_dir, env={"temperature": 5.8},
            options={"waveform": "engineered", "t_end": 15e-6,
                     "assert_close_us": 3.3, "assert_close_tol": 0.15,
                     "assert_max_bounces": 1}),
        "fig4": Scenario(
            kind="cycle", output_dir=output_dir, env={"temperature": 5.8},
            options={"n_cycles": 1000, "waveform": "engineered"}),
        "fig5": Scenario(
            kind="route", output_dir=output_dir, options={"gate": 1}),
        "fig6c": Scenario(
            kind="logic", output_dir=output_dir,
            options={"gate": "nand", "assert_lag_tol": 0.1}),
        "fig6f": Scenario(
            kind="logic", output_dir=output_dir,
            options={"gate": "nor", "assert_lag_tol": 0.1}),
        "suppfig2": Scenario(
            kind="temp_sweep", output_dir=output_dir,
            options={"assert_onset_window": (77.4, 90.2)}),
    }
    if figure_id not in presets:
        raise ValueError(
            f"unknown figure id {figure_id!r}; have {', '.join(sorted(presets))}")
    return presets[figure_id]


FIGURE_IDS = ("fig2c", "fig2e", "fig2f", "fig3b", "fig3d", "fig3f",
              "fig4", "fig5", "fig6c", "fig6f", "suppfig2")
