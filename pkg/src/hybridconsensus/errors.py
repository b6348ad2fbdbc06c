"""Exception hierarchy for the hybridconsensus package."""


class ConsensusError(Exception):
    """Base class for all package-specific errors."""


class InvalidGraph(ConsensusError):
    """Adjacency weights violate the graph invariants (negative, non-finite,
    nonzero diagonal, or no edge at all)."""


class AsymmetricGraph(ConsensusError):
    """An operation requiring an undirected graph received a_ij != a_ji."""


class EmptySubset(ConsensusError):
    """A vertex subset argument was empty."""


class NotStochastic(ConsensusError):
    """A matrix failed the row-stochasticity check."""

    def __init__(self, row: int, residual: float):
        self.row = row
        self.residual = residual
        super().__init__(f"row {row} violates stochasticity (residual {residual:.3e})")


class NotRankOne(ConsensusError):
    """Matrix powers did not converge to a rank-one limit; the associated
    graph lacks a spanning tree."""


class DegenerateEigenspace(ConsensusError):
    """The eigenvalue 1 has a numerical eigenspace of dimension > 1."""


class SamplingPeriodTooLarge(ConsensusError):
    """The sampling period h violates the strict bound for the chosen case."""

    def __init__(self, h: float, bound: float, bound_name: str):
        self.h = h
        self.bound = bound
        self.bound_name = bound_name
        super().__init__(f"h = {h} must be strictly below {bound_name} = {bound}")


class NotAnEdge(ConsensusError):
    """The requested pair (i, j) carries zero weight."""


class OutOfWindow(ConsensusError):
    """Intra-sample offset tau lies outside (0, h]."""


class NotContinuousAgent(ConsensusError):
    """An intra-sample evaluation was requested for a discrete-time agent."""


class InvalidSchedule(ConsensusError):
    """Gossip schedule probabilities or edge list are inconsistent."""


class ParseError(ConsensusError):
    """A graph or config file could not be parsed."""


class DimensionMismatch(ConsensusError):
    """Initial state length disagrees with the graph's vertex count."""


class UnknownCase(ConsensusError):
    """Case identifier outside {1, 2, 3}."""
