"""Experiment configuration: a plain `key = value` text format.

Recognized keys::

    graph = path/to/graph.edges   # edge-list file, resolved relative to the config
    case = 1                      # 1, 2 or 3
    m = 3                         # number of continuous-time agents
    h = 0.2                       # sampling period (omit with x0 = paper)
    x0 = -1, 0.5, 2               # initial state, or the literal `paper`
    steps = 200
    dense_per_step = 10
    seed = 0
    trials = 2000                 # case 3 only
    probs = uniform               # or an explicit comma list, one per edge
    tol = 1e-8

`x0 = paper` expands to the benchmark initial state
[-13, 14, 3, -9, -3, 6] with h = 0.2 and requires a 6-vertex graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError, UnknownCase
from .graphs import WeightedDigraph, read_edge_list
from .protocols import GossipSchedule, HybridSystem

PAPER_X0 = (-13.0, 14.0, 3.0, -9.0, -3.0, 6.0)
PAPER_H = 0.2

_DEFAULT_STEPS = 200
_DEFAULT_TRIALS = 1000


@dataclass
class ExperimentConfig:
    graph_path: Path
    graph: WeightedDigraph
    case: int
    m: int
    h: float
    x0: np.ndarray
    steps: int = _DEFAULT_STEPS
    dense_per_step: int = 10
    seed: int = 0
    trials: int = _DEFAULT_TRIALS
    probs: str | list[float] = "uniform"
    tol: float = 1e-8


def _parse_pairs(path: Path) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if key in pairs:
            raise ParseError(f"{path}:{lineno}: duplicate key {key!r}")
        pairs[key] = value.strip()
    return pairs


def _get(pairs: dict[str, str], key: str, convert, default=None):
    if key not in pairs:
        if default is None:
            raise ParseError(f"missing required key {key!r}")
        return default
    try:
        return convert(pairs.pop(key))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad value for {key!r}: {exc}") from exc


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def load_config(path: str | Path, overrides: dict | None = None) -> ExperimentConfig:
    """Parse and validate a config file; `overrides` (same keys, string or
    native values) take precedence over file entries."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(path)
    pairs = _parse_pairs(path)
    if overrides:
        pairs.update({k: str(v) for k, v in overrides.items() if v is not None})

    graph_rel = _get(pairs, "graph", str)
    graph_path = (path.parent / graph_rel).resolve()
    if not graph_path.is_file():
        raise FileNotFoundError(graph_path)
    graph = read_edge_list(graph_path)

    case = _get(pairs, "case", int)
    if case not in (1, 2, 3):
        raise UnknownCase(f"case must be 1, 2 or 3, got {case}")

    x0_text = pairs.pop("x0", "paper")
    if x0_text.strip().lower() == "paper":
        if graph.n != len(PAPER_X0):
            raise DimensionMismatch(
                f"the paper preset needs a {len(PAPER_X0)}-vertex graph, got n = {graph.n}"
            )
        x0 = np.array(PAPER_X0)
        h = _get(pairs, "h", float, default=PAPER_H)
    else:
        x0 = np.array(_float_list(x0_text))
        h = _get(pairs, "h", float)
    if len(x0) != graph.n:
        raise DimensionMismatch(f"x0 has length {len(x0)}, graph has n = {graph.n}")

    probs_text = pairs.pop("probs", "uniform")
    probs: str | list[float]
    if probs_text.strip().lower() == "uniform":
        probs = "uniform"
    else:
        probs = _float_list(probs_text)

    cfg = ExperimentConfig(
        graph_path=graph_path,
        graph=graph,
        case=case,
        m=_get(pairs, "m", int),
        h=h,
        x0=x0,
        steps=_get(pairs, "steps", int, default=_DEFAULT_STEPS),
        dense_per_step=_get(pairs, "dense_per_step", int, default=10),
        seed=_get(pairs, "seed", int, default=0),
        trials=_get(pairs, "trials", int, default=_DEFAULT_TRIALS),
        probs=probs,
        tol=_get(pairs, "tol", float, default=1e-8),
    )
    if pairs:
        raise ParseError(f"unknown config keys: {sorted(pairs)}")
    return cfg


def build_system(cfg: ExperimentConfig) -> HybridSystem:
    return HybridSystem(graph=cfg.graph, m=cfg.m, h=cfg.h, x0=cfg.x0)


def build_schedule(cfg: ExperimentConfig) -> GossipSchedule:
    if cfg.probs == "uniform":
        return GossipSchedule.uniform(cfg.graph)
    edges = cfg.graph.edges()
    return GossipSchedule(tuple(edges), np.asarray(cfg.probs, dtype=float))
