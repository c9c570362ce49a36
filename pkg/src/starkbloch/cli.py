"""Command-line interface.

Subcommands:
    simulate --config FILE [--out DIR]   run a scenario described in JSON
    figure {1,2,3,4} [--out DIR]         run a built-in figure preset
    validate [--tol NAME=VALUE] [--only PREFIX]
                                         run the validation suite

The default output directory is $STARKBLOCH_OUTDIR, falling back to ./out.
Exit codes: 0 success / all checks pass, 1 runtime error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

__all__ = ["main"]


def _default_outdir() -> Path:
    return Path(os.environ.get("STARKBLOCH_OUTDIR", "out"))


def _cmd_simulate(args) -> int:
    from .scenarios import ScenarioConfig, run_scenario
    config = ScenarioConfig.from_json(args.config)
    out = Path(args.out) if args.out else _default_outdir()
    record, density, view_x, paths = run_scenario(config, out)
    print(f"scenario {config.name}: {len(record.times)} records, "
          f"grid view {len(view_x)} points")
    for p in paths:
        print(f"  wrote {p}")
    return 0


def _cmd_figure(args) -> int:
    from .scenarios import preset_config, run_scenario
    from .export import write_trajectory_csv
    out = Path(args.out) if args.out else _default_outdir()
    keys = {"1": ["1"], "2": ["2"], "3": ["3"],
            "4": ["4a", "4b", "4c", "4d"]}[args.number]
    records = {}
    for key in keys:
        config = preset_config(key)
        record, density, view_x, paths = run_scenario(config, out)
        records[key] = record
        print(f"preset {key} ({config.name}): done")
        for p in paths:
            print(f"  wrote {p}")
    if args.number == "4":
        # combined revival-probability table for the apodized runs
        import numpy as np
        out.mkdir(parents=True, exist_ok=True)
        path = out / "fig4_revival.csv"
        ts = records["4b"].times
        cols = [records[k].revival for k in ("4b", "4c", "4d")]
        lines = ["t,prev_a300,prev_a100,prev_a50"]
        for i, t in enumerate(ts):
            lines.append(f"{t!r},{cols[0][i]!r},{cols[1][i]!r},{cols[2][i]!r}")
        path.write_text("\n".join(lines) + "\n")
        print(f"  wrote {path}")
    return 0


def _parse_tol(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--tol expects NAME=VALUE, got {pair!r}")
        name, value = pair.split("=", 1)
        out[name.strip()] = float(value)
    return out


def _cmd_validate(args) -> int:
    from .validation import CHECKS, format_report, run_checks
    overrides = _parse_tol(args.tol or [])
    names = None
    if args.only:
        names = [n for n in CHECKS if n.startswith(args.only)]
        if not names:
            print(f"no checks match prefix {args.only!r}", file=sys.stderr)
            return 1
    results = run_checks(names, overrides)
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starkbloch",
        description="Wave-packet dynamics in a generalized Wannier-Stark model")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a scenario from a JSON config")
    p_sim.add_argument("--config", required=True, help="path to the JSON config")
    p_sim.add_argument("--out", help="output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_fig = sub.add_parser("figure", help="run a built-in figure preset")
    p_fig.add_argument("number", choices=["1", "2", "3", "4"])
    p_fig.add_argument("--out", help="output directory")
    p_fig.set_defaults(func=_cmd_figure)

    p_val = sub.add_parser("validate", help="run the validation suite")
    p_val.add_argument("--tol", action="append", metavar="NAME=VALUE",
                       help="override a check tolerance (repeatable)")
    p_val.add_argument("--only", metavar="PREFIX",
                       help="run only checks whose name starts with PREFIX")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
