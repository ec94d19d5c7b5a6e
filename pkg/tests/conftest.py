import math

import numpy as np
import pytest

import focusedaco as fa


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first kernel call JIT-compiles on the numba backend; keep that out of
    # timed tests
    inst = fa.generate_random(12, seed=99)
    fa.solve(inst, fa.SolverConfig(ants=2, iterations=2, seed=0, parallel=True))
    fa.solve(inst, fa.SolverConfig(ants=2, iterations=2, seed=0, parallel=False))


def naive_dist(coords, rounded, i, j):
    """Distance oracle independent of the kernel implementation."""
    d = math.hypot(coords[i, 0] - coords[j, 0], coords[i, 1] - coords[j, 1])
    if rounded:
        d = float(int(d + 0.5))
    return d


def naive_cost(coords, rounded, order):
    total = 0.0
    n = len(order)
    for t in range(n):
        total += naive_dist(coords, rounded, int(order[t]), int(order[(t + 1) % n]))
    return total


def random_order(n, rng):
    order = np.arange(n, dtype=np.int64)
    # Fisher-Yates with our own stream so tests do not depend on numpy's RNG
    for i in range(n - 1, 0, -1):
        j = rng.randint(i + 1)
        order[i], order[j] = order[j], order[i]
    return order


def unit_square():
    return fa.Instance(
        name="square",
        coords=np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
        edge_metric=fa.EUCLID_REAL,
    )
