"""Focused ant colony optimization for the traveling salesman problem.

Min-max pheromone trails over candidate edges, learned or inverse-distance
heuristic priors, focused tour construction via bounded relocation around a
reference tour, and restricted 2-opt local search.
"""

from .errors import (
    BoundViolationError,
    CorruptFileError,
    DegenerateInstanceError,
    DegenerateMoveError,
    InvalidTourError,
    MalformedInputError,
    NoFeasibleNodeError,
    ShapeMismatchError,
    SolverError,
    UnsupportedFormatError,
)
from .instance import (
    EUCLID_REAL,
    EUCLID_ROUNDED,
    Instance,
    Tour,
    dump_text,
    gap_percent,
    generate_random,
    load_instance,
    parse_dump,
    parse_tsplib,
    tour_cost,
)
from .neighbors import NeighborModel, build as build_neighbors
from .heuristic import HeuristicMatrix, inverse_distance, load as load_heuristic
from .pheromone import PheromoneState, compute_bounds, init as init_pheromone, refresh_bounds, update_best
from .construction import (
    SamplerParams,
    apply_relocation,
    choose_reference,
    construct,
    relocation_delta,
    select_next,
)
from .local_search import delta_2opt, two_opt_restricted
from .solver import (
    ClassicalAntSystem,
    RunResult,
    SolverConfig,
    classical_as_reference,
    nearest_neighbor_tour,
    seed_tour,
    solve,
)
from .rng import Stream, derive_state

__version__ = "0.1.0"
