from ._dispatch import BACKEND, USE_NUMBA, rng_u01
from .core import (
    EPS_IMPROVE,
    apply_relocation,
    apply_two_opt,
    construct,
    delta_two_opt,
    dist,
    fill_positions,
    nn_tour,
    relocation_delta,
    rng_randint,
    run_ant,
    run_colony,
    select_next,
    select_next_counts,
    tour_cost,
    two_opt,
)

__all__ = [
    "BACKEND",
    "USE_NUMBA",
    "EPS_IMPROVE",
    "apply_relocation",
    "apply_two_opt",
    "construct",
    "delta_two_opt",
    "dist",
    "fill_positions",
    "nn_tour",
    "relocation_delta",
    "rng_randint",
    "rng_u01",
    "run_ant",
    "run_colony",
    "select_next",
    "select_next_counts",
    "tour_cost",
    "two_opt",
]
