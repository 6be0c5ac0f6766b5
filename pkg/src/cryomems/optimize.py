"""Derivative-free tuning of the engineered gate drive.

The landing objective mixes impact speed, bounce count, settling, and a
closing-time budget; bounce counts make it piecewise-constant, so the search
is a bounded Nelder-Mead simplex over the freed region values, with every
candidate scored by a full transient simulation.  Seeding, tie-breaking, and
restarts are deterministic, and the returned spec never scores worse than the
starting template.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Iterable, Mapping, NamedTuple

from .exceptions import OptimizationError
from .params import Environment, SwitchParams
from .waveform import EngineeredSpec, engineered_waveform
from .dynamics import SimConfig, Trace, bounce_metrics, simulate_transient, switching_time

_SPEC_FIELDS = frozenset(f.name for f in fields(EngineeredSpec))

# Infeasible candidates score above this; the penalty grows with the miss
# distance so the search can still climb toward feasibility.
FEASIBILITY_PENALTY = 1e9


@dataclass(frozen=True)
class ObjectiveWeights:
    """Weights of the landing cost

        J = w_impact * v_impact^2 + w_bounce * bounces
          + w_settle * settle_time + w_close * max(0, t_close - t_close_budget).

    All-zero weights make the cost identically 0.
    """

    w_impact: float = 1.0
    w_bounce: float = 0.01
    w_settle: float = 100.0
    w_close: float = 1e5
    t_close_budget: float = 6.6e-6

    def all_zero(self) -> bool:
        return self.w_impact == self.w_bounce == self.w_settle == self.w_close == 0.0


class LandingScore(NamedTuple):
    """One scored candidate: the cost plus the metrics behind it."""

    objective: float
    impact_velocity: float | None
    bounce_count: int | None
    settle_time: float | None
    t_close: float | None
    diagnostic: str


def _release_velocity(trace: Trace) -> float | None:
    """Tip speed at the moment of the last separation, if the switch opened."""
    leaves = [ev.leave_time for ev in trace.contact_events if not math.isnan(ev.leave_time)]
    if not leaves:
        return None
    t_leave = leaves[-1]
    times = trace.times
    lo, hi = 0, len(times) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if times[mid] < t_leave:
            lo = mid + 1
        else:
            hi = mid
    return abs(trace.tip_velocity[lo])


def landing_objective(
    params: SwitchParams,
    env: Environment,
    spec: EngineeredSpec,
    weights: ObjectiveWeights,
    config: SimConfig,
    period: float = 100e-6,
    phase: str = "close",
) -> LandingScore:
    """Score one candidate spec by simulating it.

    ``phase="close"`` penalizes the first-impact velocity; ``phase="release"``
    penalizes instead the tip velocity at the final separation, for tuning the
    release-side regions.  A candidate that never closes (or, for the release
    phase, never opens) is infeasible and scores a FEASIBILITY_PENALTY that
    grows with its miss distance.
    """
    if phase not in ("close", "release"):
        raise ValueError(f"phase must be 'close' or 'release', got {phase!r}")
    try:
        wave = engineered_waveform(spec, period=period)
        trace = simulate_transient(params, env, wave, config)
    except (ValueError, RuntimeError) as err:
        return LandingScore(2.0 * FEASIBILITY_PENALTY, None, None, None, None,
                            f"candidate rejected: {err}")
    if not trace.contact_events:
        gap = trace.contact_gap
        closest = max(trace.tip_position)
        deficit = max(0.0, (gap - closest) / gap)
        return LandingScore(
            FEASIBILITY_PENALTY * (1.0 + deficit), None, None, None, None,
            f"no contact within {trace.times[-1]:.3g} s; "
            f"closest approach {closest:.6g} m of {gap:.6g} m",
        )
    metrics = bounce_metrics(trace)
    t_close = switching_time(trace)
    if phase == "release":
        v = _release_velocity(trace)
        if v is None:
            return LandingScore(
                FEASIBILITY_PENALTY, None, metrics.bounce_count, None, t_close,
                "switch never re-opened within the window",
            )
    else:
        v = metrics.impact_velocity
    over = max(0.0, (t_close if t_close is not None else trace.times[-1])
               - weights.t_close_budget)
    j = (weights.w_impact * v * v
         + weights.w_bounce * metrics.bounce_count
         + weights.w_settle * metrics.settle_time
         + weights.w_close * over)
    if math.isnan(j):
        return LandingScore(2.0 * FEASIBILITY_PENALTY, v, metrics.bounce_count,
                            metrics.settle_time, t_close, "objective evaluated to NaN")
    return LandingScore(j, v, metrics.bounce_count, metrics.settle_time, t_close, "ok")


def _simplex_spread(point: tuple[float, ...], spread: float) -> list[tuple[float, ...]]:
    """Axis-aligned simplex around a unit-cube point, reflected off the walls."""
    vertices = [point]
    for i in range(len(point)):
        step = spread if point[i] + spread <= 1.0 else -spread
        vertex = list(point)
        vertex[i] = min(1.0, max(0.0, vertex[i] + step))
        vertices.append(tuple(vertex))
    return vertices


def optimize_waveform(
    params: SwitchParams,
    env: Environment,
    template: EngineeredSpec,
    free: Iterable[str],
    bounds: Mapping[str, tuple[float, float]],
    obj: ObjectiveWeights | None = None,
    *,
    config: SimConfig | None = None,
    period: float = 100e-6,
    phase: str = "close",
    max_evals: int = 160,
    history: list | None = None,
) -> tuple[EngineeredSpec, float]:
    """Tune the freed region values of ``template`` to minimize the landing cost.

    ``free`` names the EngineeredSpec fields to vary; ``bounds`` maps each of
    them to an inclusive (low, high) range.  Returns the best spec found and
    its objective; the result never scores worse than the template.  If
    ``history`` is a list, (evaluation_index, objective) pairs are appended
    for each candidate.  ``max_evals`` caps fresh simulations; the simplex
    operation in flight when the budget runs out still completes, so a few
    evaluations past the cap are possible.

    Raises OptimizationError when no candidate (template included) closes the
    switch, carrying the most nearly feasible candidate and its diagnostic.
    """
    free = tuple(free)
    if not free:
        raise ValueError("at least one spec field must be freed")
    for name in free:
        if name not in _SPEC_FIELDS:
            raise ValueError(f"unknown spec field {name!r}")
        if name not in bounds:
            raise ValueError(f"no bounds given for freed field {name!r}")
        lo, hi = bounds[name]
        if not lo < hi:
            raise ValueError(f"bounds for {name!r} must satisfy low < high")
    obj = obj or ObjectiveWeights()
    config = config or SimConfig(t_end=15e-6, dt=1e-9, record_stride=4)

    if obj.all_zero():
        if history is not None:
            history.append((0, 0.0))
        return template, 0.0

    lows = [bounds[name][0] for name in free]
    spans = [bounds[name][1] - bounds[name][0] for name in free]

    def to_spec(u: tuple[float, ...]) -> EngineeredSpec:
        values = {name: lows[i] + u[i] * spans[i] for i, name in enumerate(free)}
        return replace(template, **values)

    evals = 0
    best_u: tuple[float, ...] | None = None
    best_spec = template
    best_score = LandingScore(2.0 * FEASIBILITY_PENALTY, None, None, None, None,
                              "not evaluated")
    cache: dict[tuple[float, ...], float] = {}

    def score(u: tuple[float, ...]) -> float:
        nonlocal evals, best_u, best_spec, best_score
        u = tuple(min(1.0, max(0.0, ui)) for ui in u)
        if u in cache:
            return cache[u]
        try:
            spec = to_spec(u)
            candidate = landing_objective(params, env, spec, obj, config, period, phase)
        except ValueError as err:
            spec = template
            candidate = LandingScore(2.0 * FEASIBILITY_PENALTY, None, None, None, None,
                                     f"candidate rejected: {err}")
        if history is not None:
            history.append((evals, candidate.objective))
        evals += 1
        # strict improvement only: ties keep the earlier (lexicographic) winner
        if candidate.objective < best_score.objective:
            best_u, best_spec, best_score = u, spec, candidate
        cache[u] = candidate.objective
        return candidate.objective

    u0 = tuple(
        min(1.0, max(0.0, (getattr(template, name) - lows[i]) / spans[i]))
        for i, name in enumerate(free)
    )
    template_score = landing_objective(params, env, template, obj, config, period, phase)
    if history is not None:
        history.append((evals, template_score.objective))
    evals += 1
    best_u, best_spec, best_score = u0, template, template_score
    cache[u0] = template_score.objective

    dim = len(free)
    spread = 0.15
    restarts = 0
    stall_limit = 12 * dim
    iteration = 0
    last_improvement = 0

    points = _simplex_spread(u0, spread)
    simplex = sorted(((score(u), u) for u in points), key=lambda e: (e[0], e[1]))

    # iteration bound guards against cache-hit loops on a collapsed simplex
    while evals < max_evals and iteration < 4 * max_evals:
        iteration += 1
        best_j_before = best_score.objective
        # standard Nelder-Mead step on the unit cube
        worst_j, worst_u = simplex[-1]
        centroid = tuple(
            sum(u[i] for _, u in simplex[:-1]) / dim for i in range(dim)
        )
        reflected = tuple(centroid[i] + (centroid[i] - worst_u[i]) for i in range(dim))
        jr = score(reflected)
        if jr < simplex[0][0]:
            expanded = tuple(centroid[i] + 2.0 * (centroid[i] - worst_u[i])
                             for i in range(dim))
            je = score(expanded)
            replacement = (je, expanded) if (je, expanded) < (jr, reflected) else (jr, reflected)
        elif jr < simplex[-2][0]:
            replacement = (jr, reflected)
        else:
            contracted = tuple(centroid[i] + 0.5 * (worst_u[i] - centroid[i])
                               for i in range(dim))
            jc = score(contracted)
            if (jc, contracted) < (worst_j, worst_u):
                replacement = (jc, contracted)
            else:
                # shrink toward the best vertex
                best_vertex = simplex[0][1]
                shrunk = [simplex[0]]
                for _, u in simplex[1:]:
                    v = tuple(best_vertex[i] + 0.5 * (u[i] - best_vertex[i])
                              for i in range(dim))
                    shrunk.append((score(v), v))
                simplex = sorted(shrunk, key=lambda e: (e[0], e[1]))
                replacement = None
        if replacement is not None:
            simplex[-1] = replacement
            simplex.sort(key=lambda e: (e[0], e[1]))
        if best_score.objective < best_j_before:
            last_improvement = iteration
        if iteration - last_improvement >= stall_limit:
            if restarts >= 2:
                break
            restarts += 1
            spread *= 0.5
            last_improvement = iteration
            points = _simplex_spread(best_u, spread)
            simplex = sorted(((score(u), u) for u in points), key=lambda e: (e[0], e[1]))

    if best_score.objective >= FEASIBILITY_PENALTY:
        raise OptimizationError(
            "no candidate closed the switch within the simulation window",
            best_spec=best_spec,
            best_diagnostic=best_score.diagnostic,
        )
    return best_spec, best_score.objective
