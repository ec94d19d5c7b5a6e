"""Min-max pheromone state over candidate edges.

Trails live on the candidate-list layout (one float per directed candidate
entry) but are updated symmetrically: a deposit on tour edge {a, b} lands
on entry (a -> b) if b is a candidate of a and on (b -> a) if a is a
candidate of b. Every mutation ends with a clip to [tau_min, tau_max], so
the bound invariant holds at all observable times. Bounds depend on the
global-best cost and move when it improves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundViolationError, InvalidTourError
from .instance import Tour
from .neighbors import NeighborModel


@dataclass
class PheromoneState:
    """Bounded trails; mutate only through the functions in this module."""

    tau: np.ndarray
    tau_min: float
    tau_max: float
    rho: float
    p_best: float
    k: int
    nm: NeighborModel = field(repr=False)

    def set_bounds(self, tau_min: float, tau_max: float) -> None:
        if tau_min > tau_max:
            raise BoundViolationError(f"tau_min {tau_min} > tau_max {tau_max}")
        self.tau_min = tau_min
        self.tau_max = tau_max
        np.clip(self.tau, tau_min, tau_max, out=self.tau)


def compute_bounds(
    global_best_cost: float, rho: float, k: int, p_best: float
) -> tuple[float, float]:
    """Trail limits from the global-best cost.

    tau_max = 1 / ((1 - rho) * g_b); tau_min caps the max at the value that
    leaves probability p_best of rebuilding the best tour when every other
    candidate sits at the lower bound, with k the candidate list size.
    """
    if global_best_cost <= 0:
        raise ValueError(f"global best cost must be positive, got {global_best_cost}")
    if not 0 < rho <= 1:
        raise ValueError(f"need 0 < rho <= 1, got {rho}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if not 0 < p_best < 1:
        raise ValueError(f"need 0 < p_best < 1, got {p_best}")
    tau_max = 1.0 / ((1.0 - rho) * global_best_cost) if rho < 1 else math.inf
    p = p_best ** (1.0 / k)
    tau_min = min(tau_max, tau_max * (1.0 - p) / ((k - 1) * p))
    return tau_min, tau_max


def init(
    nm: NeighborModel,
    tau_max: float,
    tau_min: float = 0.0,
    *,
    rho: float,
    p_best: float,
) -> PheromoneState:
    """All trails start at tau_max (the usual min-max convention)."""
    if tau_max <= 0:
        raise ValueError(f"need tau_max > 0, got {tau_max}")
    if tau_min > tau_max:
        raise BoundViolationError(f"tau_min {tau_min} > tau_max {tau_max}")
    tau = np.full((nm.n, nm.k), tau_max, dtype=np.float64)
    return PheromoneState(
        tau=tau, tau_min=tau_min, tau_max=tau_max, rho=rho, p_best=p_best, k=nm.k, nm=nm
    )


def update_best(state: PheromoneState, best_tour: Tour, deposit: float) -> PheromoneState:
    """Evaporate everywhere, deposit along the best tour, clip to bounds.

    Tour edges absent from the candidate layout simply receive no deposit.
    """
    if deposit < 0:
        raise ValueError(f"deposit must be >= 0, got {deposit}")
    n = state.nm.n
    if best_tour.order.shape[0] != n:
        raise InvalidTourError(
            f"tour has {best_tour.order.shape[0]} nodes, expected {n}"
        )
    state.tau *= 1.0 - state.rho
    if deposit > 0:
        a = best_tour.order
        b = np.roll(a, -1)
        for x, y in ((a, b), (b, a)):
            r = state.nm.ranks(x, y)
            ok = r >= 0
            state.tau[x[ok], r[ok]] += deposit
    np.clip(state.tau, state.tau_min, state.tau_max, out=state.tau)
    return state


def refresh_bounds(state: PheromoneState, new_global_best_cost: float) -> PheromoneState:
    """Recompute bounds for an improved global best and re-clip."""
    tau_min, tau_max = compute_bounds(
        new_global_best_cost, state.rho, state.k, state.p_best
    )
    state.set_bounds(tau_min, tau_max)
    return state
