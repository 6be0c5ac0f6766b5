"""Switch networks: SP4T routing and two-switch resistor logic.

Electrical resolution is quasi-static: at each instant every switch is a
resistor (on-resistance closed, DC off-resistance open) and the network is a
resistive divider.  Mechanical timescales dominate electrical ones by six
orders of magnitude, so no reactive elements appear in the signal path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .exceptions import LogicIntegrityError
from .params import Environment, SwitchParams
from .model import on_resistance, pull_in_voltage
from .waveform import Waveform
from .dynamics import SimConfig, Trace, simulate_transient

SERIES = "series"
PARALLEL = "parallel"


def divider_output(v_supply: float, r_load: float, r_network: float) -> float:
    """Output across the switch network, below the load: high when open."""
    if r_load <= 0.0:
        raise ValueError(f"r_load must be positive, got {r_load!r}")
    if r_network < 0.0:
        raise ValueError(f"r_network must be non-negative, got {r_network!r}")
    return v_supply * r_network / (r_network + r_load)


def series_parallel_resistance(states: Sequence[bool], topology: str,
                               params: SwitchParams, temperature: float) -> float:
    """Combined resistance of switches in the given states."""
    if not states:
        raise ValueError("need at least one switch state")
    r_on = on_resistance(params, temperature)
    values = [r_on if closed else params.r_off_dc for closed in states]
    if topology == SERIES:
        return sum(values)
    if topology == PARALLEL:
        return 1.0 / sum(1.0 / r for r in values)
    raise ValueError(f"topology must be 'series' or 'parallel', got {topology!r}")


@dataclass(frozen=True)
class LogicCircuit:
    """A load resistor over a two-switch network, read across the network.

    series topology gives NAND (both switches must close to pull the output
    low), parallel gives NOR (either closing pulls it low).
    """

    topology: str
    r_load: float = 10e3
    v_supply: float = 1.0
    switch_count: int = 2

    def __post_init__(self) -> None:
        if self.topology not in (SERIES, PARALLEL):
            raise ValueError(
                f"topology must be 'series' or 'parallel', got {self.topology!r}")
        if self.r_load <= 0.0:
            raise ValueError("r_load must be positive")
        if self.switch_count != 2:
            raise ValueError("logic circuits use exactly two switches")

    def check_separation(self, params: SwitchParams, temperature: float) -> None:
        # levels stay unambiguous iff r_on << r_load << r_off by >= 1e3 each
        r_on = on_resistance(params, temperature)
        if self.r_load < 1e3 * r_on or params.r_off_dc < 1e3 * self.r_load:
            raise LogicIntegrityError(
                f"resistance separation violated: r_on={r_on:.6g}, "
                f"r_load={self.r_load:.6g}, r_off={params.r_off_dc:.6g}")


def _to_bit(circuit: LogicCircuit, v_out: float) -> bool:
    threshold = 0.5 * circuit.v_supply
    if abs(v_out - threshold) <= 0.1 * threshold:
        raise LogicIntegrityError(
            f"ambiguous logic level {v_out:.6g} V within 10% of the "
            f"{threshold:.6g} V threshold")
    return v_out > threshold


def _gate(circuit: LogicCircuit, in1: bool, in2: bool,
          params: SwitchParams, temperature: float) -> tuple[float, bool]:
    circuit.check_separation(params, temperature)
    r_net = series_parallel_resistance(
        [bool(in1), bool(in2)], circuit.topology, params, temperature)
    v_out = divider_output(circuit.v_supply, circuit.r_load, r_net)
    return v_out, _to_bit(circuit, v_out)


def nand(in1: bool, in2: bool, circuit: LogicCircuit,
         params: SwitchParams, temperature: float) -> tuple[float, bool]:
    """Two closed switches in series pull the output low; anything else is high."""
    if circuit.topology != SERIES:
        raise ValueError("nand needs a series-topology circuit")
    return _gate(circuit, in1, in2, params, temperature)


def nor(in1: bool, in2: bool, circuit: LogicCircuit,
        params: SwitchParams, temperature: float) -> tuple[float, bool]:
    """Either closed switch in the parallel pair pulls the output low."""
    if circuit.topology != PARALLEL:
        raise ValueError("nor needs a parallel-topology circuit")
    return _gate(circuit, in1, in2, params, temperature)


def contact_flags(trace: Trace) -> list[bool]:
    """Per-sample closed/open state derived from the trace's contact events."""
    flags = [False] * len(trace.times)
    events = trace.contact_events
    idx = 0
    for i, t in enumerate(trace.times):
        while idx < len(events) and not math.isnan(events[idx].leave_time) \
                and t >= events[idx].leave_time:
            idx += 1
        if idx < len(events) and t >= events[idx].touch_time:
            flags[i] = True
    return flags


class LogicTransient(NamedTuple):
    """Output voltage of a logic circuit under mechanical gate drives."""

    times: list[float]
    v_out: list[float]
    traces: tuple[Trace, Trace]


def logic_transient(circuit: LogicCircuit, gate_waveforms: Sequence[Waveform],
                    params: SwitchParams, env: Environment,
                    config: SimConfig) -> LogicTransient:
    """Drive both switches mechanically and resolve the divider per sample."""
    if len(gate_waveforms) != 2:
        raise ValueError("logic circuits take exactly two gate waveforms")
    circuit.check_separation(params, env.temperature)
    traces = tuple(simulate_transient(params, env, w, config) for w in gate_waveforms)
    r_on = on_resistance(params, env.temperature)
    flags = [contact_flags(tr) for tr in traces]
    v_out = []
    for a, b in zip(*flags):
        ra = r_on if a else params.r_off_dc
        rb = r_on if b else params.r_off_dc
        r_net = ra + rb if circuit.topology == SERIES else ra * rb / (ra + rb)
        v_out.append(divider_output(circuit.v_supply, circuit.r_load, r_net))
    return LogicTransient(list(traces[0].times), v_out, traces)


@dataclass(frozen=True)
class SP4TDevice:
    """Four switches sharing one input, each gating one output.

    Gate states and the input signal may be static values or waveforms;
    waveform gates count as asserted while they exceed the pull-in voltage.
    """

    switches: tuple[SwitchParams, SwitchParams, SwitchParams, SwitchParams]
    gate_states: tuple[object, object, object, object]
    input_signal: object = 1.0

    @classmethod
    def uniform(cls, params: SwitchParams, gate_states: Sequence[object],
                input_signal: object = 1.0) -> "SP4TDevice":
        """All four throws built from the same switch parameters."""
        states = tuple(gate_states)
        if len(states) != 4:
            raise ValueError("need exactly four gate states")
        return cls(switches=(params,) * 4, gate_states=states,
                   input_signal=input_signal)


class RouteResult(NamedTuple):
    """Instantaneous SP4T outputs.

    ``raw`` is the through-switch value (input when closed, 0 when open);
    ``divided`` is the value across a per-output load resistor, which is what
    a readout divider would see.  ``multi_assert`` flags more than one closed
    throw: legal, but not a routing state.
    """

    raw: tuple[float, float, float, float]
    divided: tuple[float, float, float, float]
    multi_assert: bool


def route(dev: SP4TDevice, t: float, temperature: float = 295.0,
          r_load: float = 10e3) -> RouteResult:
    """Resolve all four outputs of the router at time ``t``."""
    v_in = (dev.input_signal.evaluate(t) if isinstance(dev.input_signal, Waveform)
            else float(dev.input_signal))
    raw = []
    divided = []
    closed_count = 0
    for params, gate in zip(dev.switches, dev.gate_states):
        if isinstance(gate, Waveform):
            closed = gate.evaluate(t) > pull_in_voltage(params, temperature)
        else:
            closed = bool(gate)
        closed_count += closed
        r_path = on_resistance(params, temperature) if closed else params.r_off_dc
        raw.append(v_in if closed else 0.0)
        divided.append(v_in * r_load / (r_load + r_path))
    return RouteResult(tuple(raw), tuple(divided), closed_count > 1)
