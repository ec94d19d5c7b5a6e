"""Solver driver: nearest-neighbor seeding, the focused iteration loop,
and a classical ant-system reference mode used as a test oracle.

Each iteration forks M ants against frozen pheromone/heuristic snapshots,
joins on the iteration best, then serially updates the bests and the
trails. Ant a of iteration t draws from the stream derived from
(seed, t, a), so serial and parallel execution produce identical results.
"""

from __future__ import annotations

import concurrent.futures
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import construction, heuristic, kernels, local_search, pheromone
from .instance import Instance, Tour
from .neighbors import NeighborModel, build as build_neighbors
from .rng import Stream, derive_state


@dataclass
class SolverConfig:
    ants: int = 100
    iterations: int = 100
    alpha: float = 1.0
    beta: float = 1.0
    rho: float = 0.1
    p_g: float = 0.01
    mne: int = 8
    k: int = 20
    bkp: int = 64
    p_best: float = 0.1
    seed: int = 0
    heuristic_file: str | None = None
    gb_deposit_period: int = 10
    parallel: bool = True

    def __post_init__(self):
        construction.SamplerParams(
            alpha=self.alpha, beta=self.beta, p_g=self.p_g, mne=self.mne, ants=self.ants
        )
        if self.iterations < 0:
            raise ValueError(f"need iterations >= 0, got {self.iterations}")
        if not 0 < self.rho <= 1:
            raise ValueError(f"need 0 < rho <= 1, got {self.rho}")
        if self.k < 1:
            raise ValueError(f"need k >= 1, got {self.k}")
        if self.bkp < 0:
            raise ValueError(f"need bkp >= 0, got {self.bkp}")
        if not 0 < self.p_best < 1:
            raise ValueError(f"need 0 < p_best < 1, got {self.p_best}")
        if self.gb_deposit_period < 1:
            raise ValueError(
                f"need gb_deposit_period >= 1, got {self.gb_deposit_period}"
            )


@dataclass
class RunResult:
    best_tour: Tour
    best_cost: float
    trace: list[tuple[float, float]] = field(repr=False)
    wall_time: float
    iterations_run: int

    def trace_rows(self) -> list[str]:
        rows = ["iter,iter_best,global_best"]
        for i, (ib, gb) in enumerate(self.trace):
            rows.append(f"{i + 1},{ib!r},{gb!r}")
        return rows


def nearest_neighbor_tour(instance: Instance, nm: NeighborModel, start: int = 0) -> Tour:
    order = np.empty(instance.n, dtype=np.int64)
    kernels.nn_tour(instance.coords, instance.rounded, nm.cand, nm.backup, start, order)
    return Tour.from_order(instance, order)


def seed_tour(instance: Instance, nm: NeighborModel) -> Tour:
    """Starting reference: nearest-neighbor from node 0, then a fully
    seeded restricted 2-opt pass."""
    tour = nearest_neighbor_tour(instance, nm, start=0)
    return local_search.two_opt_restricted(instance, tour, tour.edges(), nm)


def _load_heuristic(instance: Instance, nm: NeighborModel, config: SolverConfig):
    if config.heuristic_file is None:
        return heuristic.inverse_distance(instance, nm)
    return heuristic.load(config.heuristic_file, nm)


def _run_ants_serial(instance, nm, weights, gb, ib, config, it):
    n = instance.n
    orders = np.empty((config.ants, n), dtype=np.int64)
    costs = np.empty(config.ants, dtype=np.float64)
    for a in range(config.ants):
        order = np.empty(n, dtype=np.int64)
        pos = np.empty(n, dtype=np.int64)
        costs[a] = kernels.run_ant(
            instance.coords, instance.rounded, weights, nm.cand, nm.backup,
            gb.order, gb.position, ib.order, ib.position,
            config.p_g, config.mne, derive_state(config.seed, it, a),
            order, pos,
        )
        orders[a] = order
    return orders, costs


def _run_ants_parallel(instance, nm, weights, gb, ib, config, it):
    n = instance.n
    states = np.empty((config.ants, 1), dtype=np.uint64)
    for a in range(config.ants):
        states[a] = derive_state(config.seed, it, a)
    orders = np.empty((config.ants, n), dtype=np.int64)
    costs = np.empty(config.ants, dtype=np.float64)
    if kernels.USE_NUMBA:
        kernels.run_colony(
            instance.coords, instance.rounded, weights, nm.cand, nm.backup,
            gb.order, gb.position, ib.order, ib.position,
            config.p_g, config.mne, states, orders, costs,
        )
    else:
        def one(a):
            order = np.empty(n, dtype=np.int64)
            pos = np.empty(n, dtype=np.int64)
            cost = kernels.run_ant(
                instance.coords, instance.rounded, weights, nm.cand, nm.backup,
                gb.order, gb.position, ib.order, ib.position,
                config.p_g, config.mne, states[a], order, pos,
            )
            return a, order, cost

        with concurrent.futures.ThreadPoolExecutor(
            max_workers=min(config.ants, os.cpu_count() or 1)
        ) as pool:
            for a, order, cost in pool.map(one, range(config.ants)):
                orders[a] = order
                costs[a] = cost
    return orders, costs


def solve(instance: Instance, config: SolverConfig) -> RunResult:
    """Run the full pipeline and return the best tour found."""
    if config.rho >= 1:
        raise ValueError("the bounded-trail pipeline needs rho < 1; "
                         "rho = 1 is only meaningful in the classical reference mode")
    t0 = time.perf_counter()
    nm = build_neighbors(instance, config.k, config.bkp)
    heur = _load_heuristic(instance, nm, config)
    seed = seed_tour(instance, nm)
    global_best = seed.copy()
    iter_best = seed.copy()
    tau_min, tau_max = pheromone.compute_bounds(
        global_best.cost, config.rho, nm.k, config.p_best
    )
    state = pheromone.init(
        nm, tau_max, tau_min, rho=config.rho, p_best=config.p_best
    )
    trace: list[tuple[float, float]] = []
    run_ants = _run_ants_parallel if config.parallel else _run_ants_serial
    for it in range(config.iterations):
        weights = construction.transition_weights(
            state, heur, config.alpha, config.beta
        )
        orders, costs = run_ants(
            instance, nm, weights, global_best, iter_best, config, it
        )
        best_idx = int(np.argmin(costs))
        iter_best = Tour.from_order(instance, orders[best_idx])
        if iter_best.cost < global_best.cost:
            global_best = iter_best.copy()
            pheromone.refresh_bounds(state, global_best.cost)
        if (it + 1) % config.gb_deposit_period == 0:
            deposit_tour = global_best
        else:
            deposit_tour = iter_best
        pheromone.update_best(state, deposit_tour, 1.0 / deposit_tour.cost)
        trace.append((iter_best.cost, global_best.cost))
    return RunResult(
        best_tour=global_best,
        best_cost=global_best.cost,
        trace=trace,
        wall_time=time.perf_counter() - t0,
        iterations_run=config.iterations,
    )


class ClassicalAntSystem:
    """From-scratch ant system: full rebuild per ant, all-ant deposits,
    no trail bounds, no local search. A reference oracle for small n."""

    def __init__(self, instance: Instance, config: SolverConfig):
        self.instance = instance
        self.config = config
        n = instance.n
        d = np.empty((n, n), dtype=np.float64)
        for i in range(n):
            d[i] = instance.distance_row(i)
        np.fill_diagonal(d, np.inf)
        self.dist = d
        self.eta = 1.0 / d
        self.tau = np.ones((n, n), dtype=np.float64)
        self.global_best: Tour | None = None
        self.iteration = 0

    def _construct_all(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.instance.n
        m = self.config.ants
        # each ant consumes exactly n draws: one for the start, n-1 roulette
        draws = np.empty((m, n), dtype=np.float64)
        for a in range(m):
            stream = Stream.from_seed(self.config.seed, self.iteration, a)
            for t in range(n):
                draws[a, t] = stream.u01()
        w_full = (self.tau**self.config.alpha) * (self.eta**self.config.beta)
        np.fill_diagonal(w_full, 0.0)
        orders = np.empty((m, n), dtype=np.int64)
        orders[:, 0] = np.minimum((draws[:, 0] * n).astype(np.int64), n - 1)
        visited = np.zeros((m, n), dtype=bool)
        visited[np.arange(m), orders[:, 0]] = True
        for t in range(1, n):
            cur = orders[:, t - 1]
            w = w_full[cur].copy()
            w[visited] = 0.0
            cum = np.cumsum(w, axis=1)
            r = draws[:, t] * cum[:, -1]
            choice = np.minimum((cum <= r[:, None]).sum(axis=1), n - 1)
            # float rounding can push r past the last positive weight; land
            # on the final unvisited node in that case
            bad = visited[np.arange(m), choice]
            for a in np.nonzero(bad)[0]:
                choice[a] = np.nonzero(~visited[a])[0][-1]
            orders[:, t] = choice
            visited[np.arange(m), choice] = True
        costs = np.empty(m, dtype=np.float64)
        for a in range(m):
            costs[a] = kernels.tour_cost(
                self.instance.coords, self.instance.rounded, orders[a]
            )
        return orders, costs

    def step(self) -> tuple[float, float]:
        orders, costs = self._construct_all()
        best_idx = int(np.argmin(costs))
        iter_best = Tour.from_order(self.instance, orders[best_idx])
        if self.global_best is None or iter_best.cost < self.global_best.cost:
            self.global_best = iter_best
        self.tau *= 1.0 - self.config.rho
        for a in range(self.config.ants):
            u = orders[a]
            v = np.roll(u, -1)
            np.add.at(self.tau, (u, v), 1.0 / costs[a])
            np.add.at(self.tau, (v, u), 1.0 / costs[a])
        self.iteration += 1
        return iter_best.cost, self.global_best.cost


def classical_as_reference(instance: Instance, config: SolverConfig) -> RunResult:
    """Classical loop as an oracle; intended for small instances."""
    t0 = time.perf_counter()
    system = ClassicalAntSystem(instance, config)
    trace = [system.step() for _ in range(config.iterations)]
    best = system.global_best
    if best is None:
        nm = build_neighbors(instance, config.k, config.bkp)
        best = seed_tour(instance, nm)
    return RunResult(
        best_tour=best,
        best_cost=best.cost,
        trace=trace,
        wall_time=time.perf_counter() - t0,
        iterations_run=config.iterations,
    )
