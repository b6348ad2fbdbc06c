"""Consensus solvability decisions, spectral value prediction, and
convergence measurement of produced trajectories."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .engine import (
    MonteCarloSummary,
    RunConfig,
    Trajectory,
    monte_carlo_mean,
    simulate_deterministic,
)
from .errors import ConsensusError, UnknownCase
from .graphs import build_matrices, dependency_closure, has_spanning_tree, is_connected_undirected
from .protocols import (
    GossipSchedule,
    HybridSystem,
    bound_case1,
    bound_case2,
    bound_case3,
    case1_matrix,
    case2_gain,
    case2_matrix,
    gossip_expected_matrix,
)
from .spectral import left_eigenvector

GAIN_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class ConsensusVerdict:
    solvable: bool
    condition: str
    predicted_value: float | None
    measured_final_disagreement: float | None
    converged: bool


def case_matrix(sys: HybridSystem, case: int, sched: GossipSchedule | None):
    if case == 1:
        return case1_matrix(sys)
    if case == 2:
        return case2_matrix(sys)
    if case == 3:
        if sched is None:
            raise ValueError("case 3 requires a gossip schedule")
        return gossip_expected_matrix(sys, sched)
    raise UnknownCase(f"case must be 1, 2 or 3, got {case}")


def case_bound(sys: HybridSystem, case: int) -> float:
    if case == 1:
        return bound_case1(sys)
    if case == 2:
        return bound_case2(sys)
    if case == 3:
        return bound_case3(sys)
    raise UnknownCase(f"case must be 1, 2 or 3, got {case}")


def decide(
    sys: HybridSystem, case: int, sched: GossipSchedule | None = None
) -> ConsensusVerdict:
    """Solvability and spectrally predicted consensus value (no simulation).

    Cases 1-2 require a directed spanning tree; case 3 requires a connected
    undirected graph.  The predicted value is nu^T x0 with nu the left
    Perron vector of the case's iteration (or expected) matrix.
    """
    P = case_matrix(sys, case, sched)  # also enforces the h bound
    if case == 3:
        solvable = is_connected_undirected(sys.graph)
        condition = "graph is connected" if solvable else "graph is not connected"
    else:
        solvable = has_spanning_tree(sys.graph)
        condition = (
            "graph has a directed spanning tree"
            if solvable
            else "graph has no directed spanning tree"
        )
    bound = case_bound(sys, case)
    condition += f"; h = {sys.h} < bound = {bound}"
    if not solvable:
        return ConsensusVerdict(False, condition, None, None, False)
    nu = left_eigenvector(P).nu
    if case == 2:
        # the predicted value's defining identity: L^T H nu = 0
        L = build_matrices(sys.graph).laplacian
        residual = float(np.max(np.abs(L.T @ (case2_gain(sys).diag * nu))))
        if residual >= GAIN_RESIDUAL_TOL:
            raise ConsensusError(
                f"case-2 gain identity violated: |L^T H nu| = {residual:.3e}"
            )
    return ConsensusVerdict(True, condition, float(nu @ sys.x0), None, False)


def disagreement(traj: Trajectory | MonteCarloSummary, at: int = -1) -> float:
    """max_i x_i - min_i x_i at a sampled instant (mean states for MC runs)."""
    states = traj.mean_states if isinstance(traj, MonteCarloSummary) else traj.sample_states
    x = states[at]
    return float(x.max() - x.min())


def nonconsensus_witness(sys: HybridSystem) -> np.ndarray:
    """Initial state pinning two independent closed vertex sets at 0 and 1.

    Exists exactly when the graph has no spanning tree; the two sets never
    hear each other, so disagreement stays at 1 forever.
    """
    closures = sorted(
        {dependency_closure(sys.graph, v) for v in range(sys.n)}, key=lambda s: (len(s), sorted(s))
    )
    for a_idx in range(len(closures)):
        for b_idx in range(a_idx + 1, len(closures)):
            if closures[a_idx].isdisjoint(closures[b_idx]):
                x0 = np.full(sys.n, 0.5)
                x0[list(closures[a_idx])] = 0.0
                x0[list(closures[b_idx])] = 1.0
                return x0
    raise ConsensusError("graph has a spanning tree; no witness exists")


def verify_run(
    sys: HybridSystem,
    case: int,
    cfg: RunConfig,
    tol: float = 1e-8,
    sched: GossipSchedule | None = None,
) -> tuple[ConsensusVerdict, Trajectory | MonteCarloSummary]:
    """Simulate and fill in the measured half of the verdict.

    converged requires both the final disagreement and the per-agent gap to
    the predicted value to fall below tol; for case 3 the gap tolerance is
    widened to the 4-standard-error band of the Monte-Carlo mean.
    """
    verdict = decide(sys, case, sched)
    if case == 3:
        traj: Trajectory | MonteCarloSummary = monte_carlo_mean(sys, sched, cfg)
        final = traj.mean_states[-1]
        slack = 4.0 * traj.stderr[-1]
    else:
        traj = simulate_deterministic(sys, case, cfg)
        final = traj.sample_states[-1]
        slack = np.zeros(sys.n)
    measured = disagreement(traj)
    converged = False
    if verdict.solvable:
        gap = np.abs(final - verdict.predicted_value)
        converged = bool(measured < tol + float(slack.max()) and np.all(gap < tol + slack))
    verdict = replace(verdict, measured_final_disagreement=measured, converged=converged)
    return verdict, traj
