"""Command-line front end.

Subcommands::

    hybridconsensus check  CONFIG   # solvability + predicted value, no simulation
    hybridconsensus run    CONFIG   # simulate, write trajectory.csv + verdict.json
    hybridconsensus bounds CONFIG   # print the three sampling-period bounds
    hybridconsensus matrix CONFIG   # dump the iteration / expected matrix

Exit codes: 0 success (for `run`: converged matches solvable), 1 I/O or
parse failure, 2 condition violation (h over bound, bad dimensions, or a
converged/solvable mismatch).  HYBRIDCONSENSUS_OUTDIR sets the default
output directory for `run`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from pathlib import Path

from .analysis import case_bound, case_matrix, decide, verify_run
from .config import ExperimentConfig, build_schedule, build_system, load_config
from .engine import RunConfig
from .errors import ConsensusError, ParseError, SamplingPeriodTooLarge
from .protocols import GossipSchedule, HybridSystem
from .reporting import verdict_report, write_trajectory_csv, write_verdict_json
from .spectral import StochasticMatrix

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONDITION = 2

_OVERRIDE_KEYS = ("case", "m", "h", "x0", "steps", "dense_per_step", "seed", "trials", "probs", "tol")


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="experiment config file (key = value)")
    parser.add_argument("--case", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--h", type=float)
    parser.add_argument("--x0", help="comma-separated initial state or 'paper'")
    parser.add_argument("--steps", type=int)
    parser.add_argument("--dense-per-step", dest="dense_per_step", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--probs", help="'uniform' or comma-separated edge probabilities")
    parser.add_argument("--tol", type=float)


def _load(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {k: getattr(args, k) for k in _OVERRIDE_KEYS if getattr(args, k, None) is not None}
    if isinstance(overrides.get("probs"), list):
        overrides["probs"] = ",".join(str(p) for p in overrides["probs"])
    return load_config(args.config, overrides)


def _setup(cfg: ExperimentConfig) -> tuple[HybridSystem, GossipSchedule | None]:
    system = build_system(cfg)
    sched = build_schedule(cfg) if cfg.case == 3 else None
    return system, sched


def _cmd_check(args) -> int:
    cfg = _load(args)
    system, sched = _setup(cfg)
    verdict = decide(system, cfg.case, sched)
    print(json.dumps(verdict_report(cfg, system, verdict), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    cfg = _load(args)
    system, _ = _setup(cfg)
    for case in (1, 2, 3):
        print(f"bound_case{case} = {case_bound(system, case)!r}")
    return EXIT_OK


def _cmd_matrix(args) -> int:
    cfg = _load(args)
    system, sched = _setup(cfg)
    matrix: StochasticMatrix = case_matrix(system, cfg.case, sched)
    for row in matrix.entries:
        print(",".join(repr(float(v)) for v in row))
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = _load(args)
    system, sched = _setup(cfg)
    run_cfg = RunConfig(
        steps=cfg.steps, dense_per_step=cfg.dense_per_step, seed=cfg.seed, trials=cfg.trials
    )
    verdict, traj = verify_run(system, cfg.case, run_cfg, tol=cfg.tol, sched=sched)
    outdir = Path(args.out or os.environ.get("HYBRIDCONSENSUS_OUTDIR", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(system, traj, outdir / "trajectory.csv")
    write_verdict_json(verdict_report(cfg, system, verdict), outdir / "verdict.json")
    print(f"wrote {outdir / 'trajectory.csv'} and {outdir / 'verdict.json'}")
    if verdict.converged != verdict.solvable:
        print(
            f"converged = {verdict.converged} does not match solvable = {verdict.solvable}",
            file=_sys.stderr,
        )
        return EXIT_CONDITION
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridconsensus",
        description="Simulate and verify consensus of hybrid multi-agent systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler in (
        ("check", _cmd_check),
        ("run", _cmd_run),
        ("bounds", _cmd_bounds),
        ("matrix", _cmd_matrix),
    ):
        p = sub.add_parser(name)
        _add_overrides(p)
        if name == "run":
            p.add_argument("--out", help="output directory (default: $HYBRIDCONSENSUS_OUTDIR or .)")
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (FileNotFoundError, OSError, ParseError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_IO
    except (SamplingPeriodTooLarge, ConsensusError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_CONDITION


if __name__ == "__main__":
    _sys.exit(main())
