"""Heuristic priors over candidate edges.

The sampler weighs candidate edges by tau^alpha * H^beta, where H comes
either from the classical inverse-distance rule or from a file exported by
an external trainer (HEUR v1 format). Values are stored sparsely, aligned
index-for-index with the candidate lists; off-candidate edges are never
consulted. A small floor keeps every stored value strictly positive so no
candidate is dead on arrival.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CorruptFileError, DegenerateInstanceError, ShapeMismatchError
from .instance import Instance
from .neighbors import NeighborModel

FLOOR_SCALE = 1e-6  # floor = FLOOR_SCALE * row maximum


@dataclass(frozen=True)
class HeuristicMatrix:
    """Nonnegative prior aligned with NeighborModel.cand; strictly positive."""

    values: np.ndarray

    def __post_init__(self):
        if (self.values <= 0).any():
            raise CorruptFileError("heuristic values must be strictly positive")


def inverse_distance(instance: Instance, nm: NeighborModel) -> HeuristicMatrix:
    """Classical prior: 1/d for every candidate edge."""
    n = instance.n
    values = np.empty((n, nm.k), dtype=np.float64)
    for i in range(n):
        d = instance.distance_row(i)[nm.cand[i]]
        if (d <= 0).any():
            raise DegenerateInstanceError(
                f"node {i} has a zero-length candidate edge (coincident points?)"
            )
        values[i] = 1.0 / d
    return HeuristicMatrix(values=values)


def load(path: str, nm: NeighborModel) -> HeuristicMatrix:
    """Load a HEUR v1 file and align it with the given neighbor model.

    Format: line 1 is `HEUR 1 <n> <k>`; then one line per node with k
    `<neighbor>:<value>` pairs. Pair order within a row is free - entries
    are remapped by neighbor index - but every candidate edge of `nm` must
    be present. Values are floored at FLOOR_SCALE times the row maximum.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("HEUR "):
        raise CorruptFileError("missing HEUR header")
    header = lines[0].split()
    if len(header) != 4 or header[1] != "1":
        raise CorruptFileError(f"bad HEUR header: {lines[0]!r}")
    n_file, k_file = int(header[2]), int(header[3])
    if n_file != nm.n or k_file != nm.k:
        raise ShapeMismatchError(
            f"file is {n_file}x{k_file}, neighbor model is {nm.n}x{nm.k}"
        )
    if len(lines) - 1 != n_file:
        raise CorruptFileError(f"expected {n_file} rows, found {len(lines) - 1}")
    values = np.empty((nm.n, nm.k), dtype=np.float64)
    for i, line in enumerate(lines[1:]):
        pairs = line.split()
        if len(pairs) != k_file:
            raise CorruptFileError(f"row {i}: expected {k_file} pairs, got {len(pairs)}")
        row: dict[int, float] = {}
        for pair in pairs:
            head, _, tail = pair.partition(":")
            try:
                j = int(head)
                v = float(tail)
            except ValueError as exc:
                raise CorruptFileError(f"row {i}: bad pair {pair!r}") from exc
            if j in row:
                raise CorruptFileError(f"row {i}: duplicate neighbor {j}")
            if not np.isfinite(v) or v < 0:
                raise CorruptFileError(f"row {i}: bad value {v!r} for neighbor {j}")
            row[j] = v
        for r, j in enumerate(nm.cand[i]):
            if int(j) not in row:
                raise CorruptFileError(f"row {i}: candidate edge to {int(j)} missing")
            values[i, r] = row[int(j)]
        row_max = values[i].max()
        if row_max <= 0:
            raise CorruptFileError(f"row {i}: all values zero")
        np.maximum(values[i], FLOOR_SCALE * row_max, out=values[i])
    return HeuristicMatrix(values=values)
