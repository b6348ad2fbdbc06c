"""Machine-readable outputs: long-form trajectory CSV and verdict JSON.

Floats are serialized with repr, so identical runs produce byte-identical
files and values round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .analysis import ConsensusVerdict, case_bound
from .config import ExperimentConfig
from .engine import MonteCarloSummary, Trajectory
from .protocols import HybridSystem

CSV_HEADER = "t,agent,value,kind,record"


def _kind(sys: HybridSystem, agent: int) -> str:
    return "continuous" if sys.is_continuous(agent) else "discrete"


def trajectory_csv_lines(sys: HybridSystem, traj: Trajectory | MonteCarloSummary) -> list[str]:
    """Rows `t,agent,value,kind,record`; agent ids are 1-based as in the
    edge-list format.  Monte-Carlo summaries emit their mean states."""
    lines = [CSV_HEADER]
    if isinstance(traj, MonteCarloSummary):
        times, states, dense = traj.sample_times, traj.mean_states, ()
    else:
        times, states, dense = traj.sample_times, traj.sample_states, traj.dense_records
    dense_by_step: dict[int, list] = {}
    for rec in dense:
        # records lie in (t_k, t_{k+1}]; nudge below the right endpoint
        k = int((rec.t - 1e-12) / sys.h)
        dense_by_step.setdefault(max(0, min(k, len(times) - 2)), []).append(rec)
    for k, t in enumerate(times):
        for agent in range(sys.n):
            lines.append(
                f"{float(t)!r},{agent + 1},{float(states[k, agent])!r},{_kind(sys, agent)},sample"
            )
        for rec in dense_by_step.get(k, ()):
            lines.append(
                f"{float(rec.t)!r},{rec.agent + 1},{float(rec.value)!r},{_kind(sys, rec.agent)},dense"
            )
    return lines


def write_trajectory_csv(
    sys: HybridSystem, traj: Trajectory | MonteCarloSummary, path: str | Path
) -> None:
    Path(path).write_text("\n".join(trajectory_csv_lines(sys, traj)) + "\n")


def _finite_or_none(value: float) -> float | None:
    return value if value == value and abs(value) != float("inf") else None


def verdict_report(
    cfg: ExperimentConfig, sys: HybridSystem, verdict: ConsensusVerdict
) -> dict:
    return {
        "solvable": verdict.solvable,
        "condition": verdict.condition,
        "predicted_value": verdict.predicted_value,
        "measured_final_disagreement": verdict.measured_final_disagreement,
        "converged": verdict.converged,
        "bounds": {
            f"case{c}": _finite_or_none(case_bound(sys, c)) for c in (1, 2, 3)
        },
        "config": {
            "graph": str(cfg.graph_path),
            "case": cfg.case,
            "m": cfg.m,
            "h": cfg.h,
            "x0": list(cfg.x0),
            "steps": cfg.steps,
            "dense_per_step": cfg.dense_per_step,
            "seed": cfg.seed,
            "trials": cfg.trials,
            "probs": cfg.probs,
            "tol": cfg.tol,
        },
    }


def write_verdict_json(report: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
