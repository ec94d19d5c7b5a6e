"""Restricted 2-opt.

The descent only examines moves seeded by recently modified edges and only
pairs a node with its candidate-list neighbors, which keeps per-call cost
roughly proportional to the number of modified edges rather than to n.
Pivot rule: first improvement, candidates scanned in ascending-distance
order, one queue pass per pending node; nodes touched by an applied move
re-enter the queue.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DegenerateMoveError
from .instance import Instance, Tour
from .neighbors import NeighborModel


def delta_2opt(instance: Instance, tour: Tour, a: int, b: int) -> float:
    """Gain of replacing (a, succ a) and (b, succ b) by (a, b), (succ a, succ b)."""
    if a == b:
        raise DegenerateMoveError(f"a == b == {a}")
    if tour.succ(a) == b or tour.succ(b) == a:
        raise DegenerateMoveError(f"{a} and {b} are adjacent")
    return float(
        kernels.delta_two_opt(
            instance.coords, instance.rounded, tour.order, tour.position, a, b
        )
    )


def two_opt_restricted(
    instance: Instance,
    tour: Tour,
    seeds: list[tuple[int, int]],
    nm: NeighborModel,
) -> Tour:
    """Descend from the seeded queue until no pending node improves.

    ``seeds`` must be edges of the tour; their endpoints enter the queue in
    the given order. The tour is modified in place and returned.
    """
    flat = np.empty(2 * len(seeds), dtype=np.int64)
    for t, (a, b) in enumerate(seeds):
        if not tour.has_edge(a, b):
            raise ValueError(f"seed edge ({a}, {b}) is not an edge of the tour")
        flat[2 * t] = a
        flat[2 * t + 1] = b
    cost = kernels.two_opt(
        instance.coords, instance.rounded, tour.order, tour.position,
        nm.cand, flat, flat.shape[0],
    )
    tour.cost = float(cost)
    return tour
