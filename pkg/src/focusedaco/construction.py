"""Focused tour construction.

Each ant copies a reference tour (global best with probability p_g, else
iteration best), walks from a random start node, and keeps proposing the
next node with the tau^alpha * H^beta transition rule. A proposal that is
not already the walk head's successor is spliced in by a relocation move.
Once the tour differs from the reference by at least `mne` edges the ant
stops modifying and the remaining reference structure stands. The returned
edge set drives the restricted local search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateMoveError, NoFeasibleNodeError
from .heuristic import HeuristicMatrix
from .instance import Instance, Tour
from .neighbors import NeighborModel
from .pheromone import PheromoneState
from .rng import Stream


@dataclass(frozen=True)
class SamplerParams:
    alpha: float = 1.0
    beta: float = 1.0
    p_g: float = 0.01
    mne: int = 8
    ants: int = 100

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")
        if not 0 <= self.p_g <= 1:
            raise ValueError(f"need 0 <= p_g <= 1, got {self.p_g}")
        if self.mne < 1:
            raise ValueError(f"need mne >= 1, got {self.mne}")
        if self.ants < 1:
            raise ValueError(f"need ants >= 1, got {self.ants}")


def transition_weights(
    tau: PheromoneState, heur: HeuristicMatrix, alpha: float, beta: float
) -> np.ndarray:
    """Sampling weights tau^alpha * H^beta, frozen for one iteration."""
    return np.ascontiguousarray(tau.tau**alpha * heur.values**beta)


def choose_reference(
    global_best: Tour, iteration_best: Tour, p_g: float, rng: Stream
) -> Tour:
    """Copy of the global best with probability p_g, else the iteration best."""
    if rng.u01() < p_g:
        return global_best.copy()
    return iteration_best.copy()


def select_next(
    i: int,
    visited: np.ndarray,
    tau: PheromoneState,
    heur: HeuristicMatrix,
    nm: NeighborModel,
    params: SamplerParams,
    rng: Stream,
    instance: Instance,
    weights: np.ndarray | None = None,
) -> int:
    """One transition from node i over the unvisited set.

    Unvisited candidates are sampled by roulette; with none left, the first
    unvisited backup node is taken; failing that, the nearest unvisited
    node by full scan. The two fallbacks bypass the tau/H weighting.
    """
    if weights is None:
        weights = transition_weights(tau, heur, params.alpha, params.beta)
    visited = np.ascontiguousarray(visited, dtype=np.uint8)
    choice = kernels.select_next(
        i, visited, weights, nm.cand, nm.backup,
        instance.coords, instance.rounded, rng.state,
    )
    if choice < 0:
        raise NoFeasibleNodeError("every node is already visited")
    return int(choice)


def _check_move(tour: Tour, u: int, v: int) -> None:
    if u == v:
        raise DegenerateMoveError(f"u == v == {u}")
    if tour.succ(u) == v:
        raise DegenerateMoveError(f"{v} already follows {u}")


def relocation_delta(instance: Instance, tour: Tour, u: int, v: int) -> float:
    """Cost change of moving v to sit immediately after u.

    Incremental over the six incident edges; the relocation tests pin this
    against apply-and-recompute. Note the replacement edge closing the gap
    left by v runs pred(v) -> succ(v).
    """
    _check_move(tour, u, v)
    return float(
        kernels.relocation_delta(
            instance.coords, instance.rounded, tour.order, tour.position, u, v
        )
    )


def apply_relocation(instance: Instance, tour: Tour, u: int, v: int) -> Tour:
    """Perform the relocation in place, updating the cached cost."""
    delta = relocation_delta(instance, tour, u, v)
    kernels.apply_relocation(tour.order, tour.position, u, v)
    tour.cost += delta
    return tour


def construct(
    reference: Tour,
    tau: PheromoneState,
    heur: HeuristicMatrix,
    nm: NeighborModel,
    params: SamplerParams,
    rng: Stream,
    instance: Instance,
    weights: np.ndarray | None = None,
) -> tuple[Tour, list[tuple[int, int]]]:
    """Build one ant's tour from the reference.

    Returns the tour plus exactly the edges of the result that are not
    edges of the reference (undirected). That set has at least `mne`
    members unless construction ran out of modification opportunities.
    """
    if weights is None:
        weights = transition_weights(tau, heur, params.alpha, params.beta)
    n = instance.n
    order = np.empty(n, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    new_u = np.empty(3 * n, dtype=np.int64)
    new_v = np.empty(3 * n, dtype=np.int64)
    cost, n_new = kernels.construct(
        instance.coords, instance.rounded,
        reference.order, reference.position,
        weights, nm.cand, nm.backup, params.mne, rng.state,
        order, pos, new_u, new_v,
    )
    tour = Tour(order=order, position=pos, cost=float(cost))
    edges = [(int(new_u[t]), int(new_v[t])) for t in range(n_new)]
    return tour, edges
