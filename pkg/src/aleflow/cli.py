"""Command-line entry point.

    aleflow run <config.toml | preset-name> [--out DIR]
    aleflow refine <study.toml | preset-name> [--out DIR]
    aleflow mass <snapshot.csv>
    aleflow --print-defaults
    aleflow --version

Exit codes: 0 completed, 2 curvature blow-up, 3 asymptotics violated,
4 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, config as cfgmod, harness
from .errors import AleflowError, ConfigError


def _load_config(arg: str) -> cfgmod.ExperimentConfig:
    presets = cfgmod.presets()
    if arg in presets:
        return presets[arg]
    return cfgmod.load(arg)


def _cmd_run(args) -> int:
    cfg = _load_config(args.config)
    result = harness.run(cfg, outdir=args.out)
    print(f"status: {result.status}")
    if result.outdir is not None:
        print(f"outputs: {result.outdir}")
    if "mass_drift_max" in result.summary:
        print(f"mass drift max: {result.summary['mass_drift_max']:.6g}")
        print(f"mu drift max:   {result.summary['mu_drift_max']:.6g}")
    if "failure" in result.summary:
        f = result.summary["failure"]
        print(f"failure: {f['error']} at t = {f['time']}: {f['message']}")
    return result.exit_code


def _cmd_refine(args) -> int:
    cfg = _load_config(args.study)
    study = harness.make_study(cfg)
    table = harness.refine(study, outdir=args.out)
    print("level    " + "  ".join(f"{lbl:>10}" for lbl in table["levels"]))
    for name, data in table["observables"].items():
        vals = "  ".join(f"{v:10.3e}" for v in data["values"])
        orders = ", ".join(str(o) if isinstance(o, str) else f"{o:.2f}"
                           for o in data["orders"])
        print(f"{name:12s} {vals}   orders: {orders}")
    bad = [s for s in table["statuses"] if s != "completed"]
    return 0 if not bad else harness.STATUS_CODES.get(bad[0], 1)


def _cmd_mass(args) -> int:
    report = harness.snapshot_report(args.snapshot)
    print(json.dumps(report, indent=1))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="aleflow", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"aleflow {__version__}")
    parser.add_argument("--print-defaults", action="store_true",
                        help="print the default configuration as TOML and exit")
    sub = parser.add_subparsers(dest="command")

    p_run = sub.add_parser("run", help="run one experiment")
    p_run.add_argument("config", help="config TOML path or preset name")
    p_run.add_argument("--out", default=None, help="output directory override")

    p_ref = sub.add_parser("refine", help="run a refinement study")
    p_ref.add_argument("study", help="study TOML path or preset name")
    p_ref.add_argument("--out", default=None, help="output directory for tables")

    p_mass = sub.add_parser("mass", help="static diagnostics of a snapshot")
    p_mass.add_argument("snapshot", help="snapshot CSV path")

    args = parser.parse_args(argv)
    if args.print_defaults:
        print(cfgmod.emit(cfgmod.defaults()), end="")
        return 0
    if args.command is None:
        parser.print_help()
        return 4

    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "refine":
            return _cmd_refine(args)
        return _cmd_mass(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 4
    except AleflowError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
