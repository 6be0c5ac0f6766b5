"""Command-line front end.

Every subcommand builds one Scenario, executes it into the output directory,
and prints a one-line verdict per assertion.  Exit status is 0 only when the
scenario ran and every assertion passed; config errors exit 2, assertion or
runtime failures exit 1.
"""

from __future__ import annotations

import argparse
import sys

from .scenarios import FIGURE_IDS, Scenario, figure_preset, run_scenario


def _parse_band(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"band must be LO:HI in Hz (e.g. 4e9:8e9), got {text!r}")


def _parse_temps(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"temperatures must be comma-separated kelvin values, got {text!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--params", metavar="FILE", default=None,
                     help="switch parameter JSON (default: calibrated values)")
    sub.add_argument("--out", metavar="DIR", default=None,
                     help="output directory (default: out/<subcommand>)")
    sub.add_argument("--temp-k", type=float, default=295.0,
                     help="operating temperature in kelvin")
    sub.add_argument("--workers", type=int, default=1,
                     help="worker threads for independent sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryomems",
        description="Desk-scale simulator for electrostatic cantilever "
                    "RF-MEMS switches, 295 K down to 5.8 K.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("calibrate", help="re-derive default parameters from "
                        "the published operating targets")
    _add_common(p)

    p = subs.add_parser("simulate", help="one transient actuation run")
    _add_common(p)
    p.add_argument("--waveform", choices=("square", "hold", "engineered"),
                   default="square")
    p.add_argument("--t-end-us", type=float, default=15.0,
                   help="simulated span in microseconds")

    p = subs.add_parser("sweep-temp", help="per-temperature summary with "
                        "bounce-onset detection")
    _add_common(p)
    p.add_argument("--temps", type=_parse_temps, default=None,
                   help="comma-separated kelvin list (default: standard grid)")

    p = subs.add_parser("pullin", help="quasi-static pull-in sweeps vs the "
                        "closed form")
    _add_common(p)
    p.add_argument("--temps", type=_parse_temps, default=(295.0, 5.8))
    p.add_argument("--v-step", type=float, default=0.25)

    p = subs.add_parser("rf", help="two-port sweep of the closed or open switch")
    _add_common(p)
    p.add_argument("--state", choices=("on", "off"), default="on")
    p.add_argument("--band", type=_parse_band, default=(4e9, 8e9),
                   metavar="LO:HI", help="frequency band in Hz")
    p.add_argument("--points", type=int, default=101)

    p = subs.add_parser("optimize", help="tune the landing waveform against "
                        "the impact objective")
    _add_common(p)
    p.add_argument("--template", choices=("calibrated", "default"),
                   default="calibrated")
    p.add_argument("--max-evals", type=int, default=160)

    p = subs.add_parser("logic", help="switch-network gate: truth table plus "
                        "output transient")
    _add_common(p)
    p.add_argument("--gate", choices=("nand", "nor"), required=True)
    p.add_argument("--freq-hz", type=float, default=10e3)

    p = subs.add_parser("route", help="SP4T routing over one gate period")
    _add_common(p)
    p.add_argument("--gate", type=int, default=1, metavar="N",
                   help="driven output index, 1..4")
    p.add_argument("--freq-hz", type=float, default=10e3)

    p = subs.add_parser("cycle", help="repeated-actuation determinism check")
    _add_common(p)
    p.add_argument("--n-cycles", type=int, default=10_000)
    p.add_argument("--waveform", choices=("square", "hold", "engineered"),
                   default="engineered")

    p = subs.add_parser("budget", help="actuation power vs the array budget")
    _add_common(p)
    p.add_argument("--n-switches", type=int, default=32)
    p.add_argument("--voltage", type=float, default=90.0)
    p.add_argument("--freq-hz", type=float, default=10e3)

    p = subs.add_parser("repro", help="run a named figure-reproduction preset")
    _add_common(p)
    p.add_argument("figure_id", choices=FIGURE_IDS)

    return parser


def _scenario_from_args(args: argparse.Namespace) -> Scenario:
    out = args.out or f"out/{args.command}"
    env = {} if args.temp_k == 295.0 else {"temperature": args.temp_k}
    common = dict(output_dir=out, params_path=args.params, env=env,
                  workers=args.workers)

    if args.command == "calibrate":
        return Scenario(kind="calibrate", **common)
    if args.command == "simulate":
        return Scenario(kind="transient", options={
            "waveform": args.waveform, "t_end": args.t_end_us * 1e-6}, **common)
    if args.command == "sweep-temp":
        options = {} if args.temps is None else {"temperatures": args.temps}
        return Scenario(kind="temp_sweep", options=options, **common)
    if args.command == "pullin":
        return Scenario(kind="pullin_sweep", options={
            "temperatures": args.temps, "v_step": args.v_step,
            "assert_tolerance": 0.01}, **common)
    if args.command == "rf":
        options = {"state": args.state, "f_lo": args.band[0],
                   "f_hi": args.band[1], "n": args.points}
        if args.state == "on":
            options["assert_loss_db"] = 0.5
        else:
            options["assert_isolation_db"] = 35.0
        return Scenario(kind="rf", options=options, **common)
    if args.command == "optimize":
        return Scenario(kind="optimize", options={
            "template": args.template, "max_evals": args.max_evals}, **common)
    if args.command == "logic":
        return Scenario(kind="logic", options={
            "gate": args.gate, "frequency": args.freq_hz,
            "assert_lag_tol": 0.1}, **common)
    if args.command == "route":
        return Scenario(kind="route", options={
            "gate": args.gate, "frequency": args.freq_hz}, **common)
    if args.command == "cycle":
        return Scenario(kind="cycle", options={
            "n_cycles": args.n_cycles, "waveform": args.waveform}, **common)
    if args.command == "budget":
        return Scenario(kind="budget", options={
            "n_switches": args.n_switches, "voltage": args.voltage,
            "frequency": args.freq_hz}, **common)
    if args.command == "repro":
        preset = figure_preset(args.figure_id, out)
        overrides = {}
        if args.params is not None:
            overrides["params_path"] = args.params
        if env:
            overrides["env"] = {**preset.env, **env}
        if overrides:
            data = preset.to_dict()
            data.update(overrides)
            preset = Scenario.from_dict(data)
        return preset
    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _scenario_from_args(args)
    except ValueError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2

    try:
        report = run_scenario(scenario)
    except ValueError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except RuntimeError as err:
        print(f"FAIL: {err}", file=sys.stderr)
        return 1

    for name, ok in report.assertions.items():
        print(f"{'PASS' if ok else 'FAIL'}: {name}")
    for key, value in report.summary.items():
        print(f"  {key} = {value}")
    print(f"wrote {report.manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
