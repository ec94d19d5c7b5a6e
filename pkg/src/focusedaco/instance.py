"""TSP instances: parsing, generation, distances, and tour costs.

Coordinates are stored as float64 pairs; distances are computed on demand
so large instances never materialize an n x n matrix. Two edge metrics are
supported: exact euclidean (``euclid_real``, used for random benchmark
instances) and nearest-integer euclidean (``euclid_rounded``, the TSPLIB
EUC_2D convention, which makes tour costs integer-valued).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidTourError, MalformedInputError, UnsupportedFormatError
from .rng import derive_state

EUCLID_REAL = "euclid_real"
EUCLID_ROUNDED = "euclid_rounded"
_METRICS = (EUCLID_REAL, EUCLID_ROUNDED)


@dataclass(frozen=True)
class Instance:
    """One symmetric 2-D TSP instance. Immutable and safely shareable."""

    name: str
    coords: np.ndarray
    edge_metric: str = EUCLID_REAL

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        object.__setattr__(self, "coords", coords)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise MalformedInputError(f"coords must be (n, 2), got {coords.shape}")
        if coords.shape[0] < 3:
            raise MalformedInputError(f"need at least 3 nodes, got {coords.shape[0]}")
        if not np.all(np.isfinite(coords)):
            raise MalformedInputError("coordinates must be finite")
        if self.edge_metric not in _METRICS:
            raise ValueError(f"unknown edge metric {self.edge_metric!r}")

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def rounded(self) -> bool:
        return self.edge_metric == EUCLID_ROUNDED

    def distance(self, i: int, j: int) -> float:
        return kernels.dist(self.coords, self.rounded, i, j)

    def distance_row(self, i: int) -> np.ndarray:
        """Distances from node i to every node (vectorized)."""
        d = np.hypot(
            self.coords[:, 0] - self.coords[i, 0],
            self.coords[:, 1] - self.coords[i, 1],
        )
        if self.rounded:
            d = np.floor(d + 0.5)
        return d


@dataclass
class Tour:
    """A Hamiltonian cycle with O(1) successor/predecessor/position queries.

    ``cost`` is cached; mutating operations keep it and the position map in
    sync. Single-owner mutable: never share a Tour across workers.
    """

    order: np.ndarray
    position: np.ndarray = field(repr=False)
    cost: float

    @classmethod
    def from_order(cls, instance: Instance, order) -> "Tour":
        order = np.ascontiguousarray(order, dtype=np.int64)
        _check_permutation(instance.n, order)
        position = np.empty(instance.n, dtype=np.int64)
        position[order] = np.arange(instance.n, dtype=np.int64)
        cost = float(kernels.tour_cost(instance.coords, instance.rounded, order))
        return cls(order=order, position=position, cost=cost)

    @property
    def n(self) -> int:
        return self.order.shape[0]

    def succ(self, node: int) -> int:
        return int(self.order[(self.position[node] + 1) % self.n])

    def pred(self, node: int) -> int:
        return int(self.order[(self.position[node] - 1) % self.n])

    def has_edge(self, a: int, b: int) -> bool:
        """Undirected membership of edge {a, b} in the cycle."""
        return self.succ(a) == b or self.pred(a) == b

    def edges(self) -> list[tuple[int, int]]:
        rolled = np.roll(self.order, -1)
        return list(zip(self.order.tolist(), rolled.tolist()))

    def copy(self) -> "Tour":
        return Tour(self.order.copy(), self.position.copy(), self.cost)

    def check(self, instance: Instance) -> None:
        """Assert the structural invariants; raises InvalidTourError."""
        _check_permutation(instance.n, self.order)
        if not np.array_equal(self.position[self.order], np.arange(self.n)):
            raise InvalidTourError("position map inconsistent with order")
        actual = float(kernels.tour_cost(instance.coords, instance.rounded, self.order))
        tol = 0.0 if instance.rounded else 1e-9 * max(1.0, abs(actual))
        if abs(self.cost - actual) > tol:
            raise InvalidTourError(f"cached cost {self.cost!r} != recomputed {actual!r}")


def _check_permutation(n: int, order: np.ndarray) -> None:
    if order.shape != (n,):
        raise InvalidTourError(f"order has shape {order.shape}, expected ({n},)")
    seen = np.zeros(n, dtype=bool)
    if order.min() < 0 or order.max() >= n:
        raise InvalidTourError("order contains out-of-range nodes")
    seen[order] = True
    if not seen.all():
        raise InvalidTourError("order is not a permutation")


def tour_cost(instance: Instance, order) -> float:
    """Cyclic tour length of `order` under the instance metric."""
    order = np.ascontiguousarray(order, dtype=np.int64)
    _check_permutation(instance.n, order)
    return float(kernels.tour_cost(instance.coords, instance.rounded, order))


def gap_percent(cost: float, optimal: float) -> float:
    """Relative excess over the optimum, in percent."""
    if optimal <= 0:
        raise ValueError(f"optimal must be positive, got {optimal}")
    return (cost - optimal) / optimal * 100.0


def generate_random(n: int, seed: int, name: str | None = None) -> Instance:
    """n points i.i.d. uniform on the unit square, deterministic in seed.

    Coordinates come from the splitmix64 stream derived from (seed, 0, 0):
    node i uses draws 2i (x) and 2i+1 (y). See rng module docs for the
    exact recipe, which reproduces bit-for-bit in any language.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    state = derive_state(seed)
    coords = np.empty((n, 2), dtype=np.float64)
    for i in range(n):
        coords[i, 0] = kernels.rng_u01(state)
        coords[i, 1] = kernels.rng_u01(state)
    return Instance(
        name=name or f"rnd{n}-{seed}", coords=coords, edge_metric=EUCLID_REAL
    )


def parse_tsplib(text: str) -> Instance:
    """Parse a TSPLIB instance with EDGE_WEIGHT_TYPE EUC_2D.

    Nodes keep file order; 1-based indices map to 0-based. The resulting
    instance uses the rounded metric, matching the TSPLIB convention.
    """
    name = "tsplib"
    dimension = None
    weight_type = None
    lines = text.splitlines()
    i = 0
    coord_lines: list[str] = []
    in_coords = False
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line:
            continue
        if in_coords:
            if line.upper() == "EOF":
                break
            if ":" in line and not line[0].isdigit() and not line[0] == "-":
                break
            coord_lines.append(line)
            continue
        upper = line.upper()
        if upper.startswith("NODE_COORD_SECTION"):
            in_coords = True
            continue
        if upper == "EOF":
            break
        if ":" in line:
            key, _, value = line.partition(":")
            key = key.strip().upper()
            value = value.strip()
            if key == "NAME":
                name = value
            elif key == "DIMENSION":
                try:
                    dimension = int(value)
                except ValueError as exc:
                    raise MalformedInputError(f"bad DIMENSION: {value!r}") from exc
            elif key == "EDGE_WEIGHT_TYPE":
                weight_type = value.upper()
    if weight_type is None:
        raise UnsupportedFormatError("missing EDGE_WEIGHT_TYPE")
    if weight_type != "EUC_2D":
        raise UnsupportedFormatError(f"unsupported EDGE_WEIGHT_TYPE {weight_type}")
    if not coord_lines:
        raise MalformedInputError("missing NODE_COORD_SECTION")
    if dimension is None:
        raise MalformedInputError("missing DIMENSION")
    if dimension != len(coord_lines):
        raise MalformedInputError(
            f"DIMENSION {dimension} but {len(coord_lines)} coordinate lines"
        )
    coords = np.empty((dimension, 2), dtype=np.float64)
    for row, line in enumerate(coord_lines):
        parts = line.split()
        if len(parts) < 3:
            raise MalformedInputError(f"bad coordinate line: {line!r}")
        try:
            coords[row, 0] = float(parts[1])
            coords[row, 1] = float(parts[2])
        except ValueError as exc:
            raise MalformedInputError(f"bad coordinate line: {line!r}") from exc
    return Instance(name=name, coords=coords, edge_metric=EUCLID_ROUNDED)


def dump_text(instance: Instance) -> str:
    """Internal dump format: `TSP <n> <metric>` then `<x> <y>` per node.

    Full-precision floats so parse(dump(x)) round-trips exactly.
    """
    out = [f"TSP {instance.n} {instance.edge_metric}"]
    for x, y in instance.coords:
        out.append(f"{float(x)!r} {float(y)!r}")
    return "\n".join(out) + "\n"


def parse_dump(text: str, name: str = "dump") -> Instance:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("TSP "):
        raise MalformedInputError("dump must start with 'TSP <n> <metric>'")
    parts = lines[0].split()
    if len(parts) != 3:
        raise MalformedInputError(f"bad dump header: {lines[0]!r}")
    try:
        n = int(parts[1])
    except ValueError as exc:
        raise MalformedInputError(f"bad dump header: {lines[0]!r}") from exc
    metric = parts[2]
    if metric not in _METRICS:
        raise UnsupportedFormatError(f"unknown metric {metric!r}")
    if len(lines) - 1 != n:
        raise MalformedInputError(f"header says {n} nodes, found {len(lines) - 1}")
    coords = np.empty((n, 2), dtype=np.float64)
    for row, line in enumerate(lines[1:]):
        xy = line.split()
        if len(xy) != 2:
            raise MalformedInputError(f"bad coordinate line: {line!r}")
        coords[row, 0] = float(xy[0])
        coords[row, 1] = float(xy[1])
    return Instance(name=name, coords=coords, edge_metric=metric)


def load_instance(path: str) -> Instance:
    """Read an instance file, sniffing TSPLIB vs the internal dump format."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stem = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    if text.lstrip().startswith("TSP "):
        return parse_dump(text, name=stem)
    return parse_tsplib(text)
