"""Trajectory execution: sampled-map iteration, dense intra-sample records,
seeded gossip runs and Monte-Carlo aggregation.

Randomness comes from numpy's PCG64 generator so that a (seed, trial)
pair reproduces a trajectory bit-for-bit on any platform.  Gossip edges
are drawn by inverse CDF over the schedule's cumulative probabilities in
sorted edge order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .protocols import (
    GossipSchedule,
    HybridSystem,
    case1_matrix,
    case2_matrix,
    continuous_interpolant,
    gossip_interpolant,
    gossip_pair_matrix,
)


class DenseRecord(NamedTuple):
    agent: int
    t: float
    value: float


@dataclass(frozen=True)
class RunConfig:
    steps: int
    dense_per_step: int = 10
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.dense_per_step < 0:
            raise ValueError("dense_per_step must be >= 0")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    sample_times: np.ndarray  # (K+1,)
    sample_states: np.ndarray  # (K+1, n)
    dense_records: tuple[DenseRecord, ...]
    drawn_edges: tuple[tuple[int, int], ...] | None = None  # gossip runs only

    @property
    def final_state(self) -> np.ndarray:
        return self.sample_states[-1]


@dataclass(frozen=True)
class MonteCarloSummary:
    sample_times: np.ndarray
    mean_states: np.ndarray  # (K+1, n) empirical mean over trials
    stderr: np.ndarray  # (K+1, n) standard error of the mean


def _dense_tau_grid(h: float, dense_per_step: int) -> np.ndarray:
    return np.arange(1, dense_per_step + 1) * (h / dense_per_step)


def simulate_deterministic(sys: HybridSystem, case: int, cfg: RunConfig) -> Trajectory:
    """Iterate the case-1/2 sampled map; dense records for continuous agents."""
    M = (case1_matrix if case == 1 else case2_matrix)(sys).entries
    states = np.empty((cfg.steps + 1, sys.n))
    states[0] = sys.x0
    dense: list[DenseRecord] = []
    taus = _dense_tau_grid(sys.h, cfg.dense_per_step) if cfg.dense_per_step else ()
    for k in range(cfg.steps):
        x_k = states[k]
        for i in range(sys.m):
            for tau in taus:
                dense.append(
                    DenseRecord(i, k * sys.h + tau, continuous_interpolant(case, sys, x_k, i, tau))
                )
        states[k + 1] = M @ x_k
    return Trajectory(
        sample_times=np.arange(cfg.steps + 1) * sys.h,
        sample_states=states,
        dense_records=tuple(dense),
    )


def _draw_edges(sched: GossipSchedule, steps: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    cum = np.cumsum(sched.probs)
    cum[-1] = 1.0  # guard against round-off in the last bin
    u = rng.random(steps)
    return np.searchsorted(cum, u, side="right")


def simulate_gossip(
    sys: HybridSystem, sched: GossipSchedule, cfg: RunConfig
) -> Trajectory:
    """One seeded gossip run: at each t_k a single edge is drawn i.i.d. and
    its pair matrix applied; everyone else holds state."""
    sched.validate_against(sys.graph)
    pair_mats = [gossip_pair_matrix(sys, i, j).entries for i, j in sched.edges]
    choice = _draw_edges(sched, cfg.steps, cfg.seed)
    states = np.empty((cfg.steps + 1, sys.n))
    states[0] = sys.x0
    dense: list[DenseRecord] = []
    drawn: list[tuple[int, int]] = []
    taus = _dense_tau_grid(sys.h, cfg.dense_per_step) if cfg.dense_per_step else ()
    for k in range(cfg.steps):
        edge = sched.edges[choice[k]]
        drawn.append(edge)
        x_k = states[k]
        for i in range(sys.m):
            for tau in taus:
                dense.append(
                    DenseRecord(i, k * sys.h + tau, gossip_interpolant(sys, x_k, edge, i, tau))
                )
        states[k + 1] = pair_mats[choice[k]] @ x_k
    return Trajectory(
        sample_times=np.arange(cfg.steps + 1) * sys.h,
        sample_states=states,
        dense_records=tuple(dense),
        drawn_edges=tuple(drawn),
    )


def monte_carlo_mean(
    sys: HybridSystem, sched: GossipSchedule, cfg: RunConfig
) -> MonteCarloSummary:
    """Empirical mean and standard error of the sampled states over
    independent gossip trials; trial r runs with seed cfg.seed + r."""
    if cfg.trials < 2:
        raise ValueError("monte_carlo_mean needs trials >= 2")
    sched.validate_against(sys.graph)
    pair_mats = [gossip_pair_matrix(sys, i, j).entries for i, j in sched.edges]
    all_states = np.empty((cfg.trials, cfg.steps + 1, sys.n))
    for r in range(cfg.trials):
        choice = _draw_edges(sched, cfg.steps, cfg.seed + r)
        x = np.array(sys.x0)
        all_states[r, 0] = x
        for k in range(cfg.steps):
            x = pair_mats[choice[k]] @ x
            all_states[r, k + 1] = x
    mean = all_states.mean(axis=0)  # numpy pairwise summation
    std = all_states.std(axis=0, ddof=1)
    return MonteCarloSummary(
        sample_times=np.arange(cfg.steps + 1) * sys.h,
        mean_states=mean,
        stderr=std / np.sqrt(cfg.trials),
    )
