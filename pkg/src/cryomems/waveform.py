"""Gate drive waveforms.

A :class:`Waveform` is a right-continuous, piecewise-constant voltage
profile: a list of (voltage, duration) segments repeated at a fixed period
for a finite number of repetitions.  Anything not covered by a segment,
and everything after the last repetition, is 0 V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Waveform:
    """Piecewise-constant gate voltage profile.

    :param segments: (voltage_V, duration_s) pairs, played in order from
        the start of each period
    :param period: repetition period, s
    :param repetitions: number of periods before the drive stays at 0 V
    """

    segments: tuple[tuple[float, float], ...]
    period: float
    repetitions: int = 1

    def __post_init__(self) -> None:
        if self.period <= 0.0:
            raise ValueError("period must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        total = 0.0
        for v, dur in self.segments:
            if dur <= 0.0:
                raise ValueError(f"segment duration must be positive, got {dur!r}")
            if v < 0.0:
                raise ValueError(f"segment voltage must be non-negative, got {v!r}")
            total += dur
        if total > self.period * (1.0 + 1e-12):
            raise ValueError(
                f"segment durations sum to {total!r}, exceeding period {self.period!r}"
            )

    def evaluate(self, t: float) -> float:
        """Gate voltage at time ``t`` (s), right-continuous at edges."""
        if t < 0.0:
            raise ValueError(f"time must be non-negative, got {t!r}")
        cycle = math.floor(t / self.period)
        if cycle >= self.repetitions:
            return 0.0
        tau = t - cycle * self.period
        for v, dur in self.segments:
            if tau < dur:
                return v
            tau -= dur
        return 0.0

    def edges(self) -> tuple[list[float], list[float]]:
        """Expanded step-function form (edge_times, voltages).

        Voltage i holds on [edge_times[i], edge_times[i+1]); the last entry
        is 0 V and holds forever.  Zero-voltage runs are merged.
        """
        times: list[float] = [0.0]
        volts: list[float] = []
        for cycle in range(self.repetitions):
            t0 = cycle * self.period
            tau = 0.0
            for v, dur in self.segments:
                _append_edge(times, volts, t0 + tau, v)
                tau += dur
            if tau < self.period:
                _append_edge(times, volts, t0 + tau, 0.0)
        _append_edge(times, volts, self.repetitions * self.period, 0.0)
        return times, volts

    def rising_edge_times(self) -> list[float]:
        """Times at which the gate voltage increases."""
        times, volts = self.edges()
        edges = []
        prev = 0.0
        for t, v in zip(times, volts):
            if v > prev:
                edges.append(t)
            prev = v
        return edges


def _append_edge(times: list[float], volts: list[float], t: float, v: float) -> None:
    if volts and volts[-1] == v:
        return
    if volts:
        times.append(t)
    volts.append(v)


def square_pulse(
    voltage: float, t_on: float, period: float, repetitions: int = 1
) -> Waveform:
    """Square gate drive: ``voltage`` for ``t_on``, then 0 V for the rest
    of each period."""
    if not 0.0 < t_on <= period:
        raise ValueError("t_on must lie in (0, period]")
    segments: tuple[tuple[float, float], ...]
    if t_on < period:
        segments = ((voltage, t_on), (0.0, period - t_on))
    else:
        segments = ((voltage, t_on),)
    return Waveform(segments=segments, period=period, repetitions=repetitions)


def standard_gate_pulse(repetitions: int = 1) -> Waveform:
    """The 10 kHz, 90 V, 50% duty square drive used for switching-time and
    logic characterization."""
    return square_pulse(90.0, 50e-6, 100e-6, repetitions)


def characterization_hold_pulse() -> Waveform:
    """A 90 V gate held on for 450 us.

    Bounce counting and ring-down need the gate to stay asserted until the
    contact chatter has died out; the 10 kHz drive would release mid-cascade.
    """
    return square_pulse(90.0, 450e-6, 500e-6)


@dataclass(frozen=True)
class EngineeredSpec:
    """Region values of the soft-landing gate profile.

    Actuation is kick / coast / hold: a short over-voltage kick gives the
    beam momentum, a sub-pull-in coast lets the spring bleed it off so the
    tip arrives gently, and the hold clamps the closed switch.  Release
    mirrors it: a zero-voltage coast lets the beam fly back, then a catch
    pulse brakes it before it can ring.

    Defaults: 90 V / 2 us kick, 55 V / 1 us coast, 90 V hold, 1 us release
    coast, 80 V / 2 us catch, in a 100 us (10 kHz) period.
    """

    v_kick: float = 90.0
    t_kick: float = 2e-6
    v_coast: float = 55.0
    t_coast: float = 1e-6
    v_hold: float = 90.0
    t_hold: float = 47e-6
    v_release_coast: float = 0.0
    t_release_coast: float = 1e-6
    v_catch: float = 80.0
    t_catch: float = 2e-6

    _durations = ("t_kick", "t_coast", "t_hold", "t_release_coast", "t_catch")

    def __post_init__(self) -> None:
        for name in self._durations:
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("v_kick", "v_coast", "v_hold", "v_release_coast", "v_catch"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")

    def validate_against_pull_in(self, v_pi: float) -> None:
        """Check the region ordering that makes the profile work.

        The kick and hold must exceed the pull-in voltage, the coast must
        stay below it (so the beam decelerates), and the catch must exceed
        it (so it can arrest the released beam).
        """
        if not self.v_coast < v_pi:
            raise ValueError(f"violated: v_coast < V_pi ({self.v_coast!r} >= {v_pi!r})")
        if not v_pi < self.v_kick:
            raise ValueError(f"violated: V_pi < v_kick ({v_pi!r} >= {self.v_kick!r})")
        if not v_pi < self.v_hold:
            raise ValueError(f"violated: V_pi < v_hold ({v_pi!r} >= {self.v_hold!r})")
        if not v_pi < self.v_catch:
            raise ValueError(f"violated: V_pi < v_catch ({v_pi!r} >= {self.v_catch!r})")

    def total_duration(self) -> float:
        return sum(getattr(self, name) for name in self._durations)


def engineered_waveform(
    spec: EngineeredSpec,
    period: float = 100e-6,
    repetitions: int = 1,
    v_pi: float | None = None,
) -> Waveform:
    """Build the kick/coast/hold + release/catch drive from its region values.

    With ``v_pi`` given, the region ordering is validated first.  The hold
    duration is a free parameter; the default spec fills a 10 kHz period
    with a 50% actuated fraction.
    """
    if v_pi is not None:
        spec.validate_against_pull_in(v_pi)
    segments = (
        (spec.v_kick, spec.t_kick),
        (spec.v_coast, spec.t_coast),
        (spec.v_hold, spec.t_hold),
        (spec.v_release_coast, spec.t_release_coast),
        (spec.v_catch, spec.t_catch),
    )
    return Waveform(segments=segments, period=period, repetitions=repetitions)


def actuation_power(capacitance: float, voltage: float, frequency: float) -> float:
    """Average gate drive power 0.5 C V^2 f, W.

    Energy CV^2/2 is delivered to the gate capacitance once per actuation
    cycle and dumped on release.
    """
    if capacitance < 0.0 or frequency < 0.0:
        raise ValueError("capacitance and frequency must be non-negative")
    return 0.5 * capacitance * voltage * voltage * frequency
