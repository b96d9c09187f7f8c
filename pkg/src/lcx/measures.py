"""Finite-mass measure spaces, measurable sets, and scalar integration.

Two variants: a finite weighted atom set (null sets are the weight-zero
atoms) and an interval with Lebesgue measure carrying a dyadic hierarchy of
uniform partitions.  Measurable sets on the interval variant are finite
unions of half-open cells aligned to one partition level, which keeps all
set algebra exact.

"Measurable function" is realized as "evaluable at every atom or quadrature
node"; scalar integration is an exact weighted sum on atoms and a composite
midpoint rule with dyadic refinement and a Cauchy-style stopping rule on
intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapReachedError, NonFiniteValueError, SpaceMismatchError, SpecError

__all__ = [
    "DiscreteSpace",
    "IntervalSpace",
    "MeasurableSet",
    "ScalarFn",
    "measure_of",
    "integrate_scalar",
    "refine_partition",
    "QUAD_LEVEL_CAP",
]

QUAD_LEVEL_CAP = 24


@dataclass(frozen=True)
class DiscreteSpace:
    """Finite weighted atom set; atoms keep declaration order."""

    atoms: tuple[tuple[str, float], ...]

    def __post_init__(self):
        ids = [a for a, _ in self.atoms]
        if len(set(ids)) != len(ids):
            raise SpecError("measure.atoms", "atom ids must be unique")
        for aid, w in self.atoms:
            if not np.isfinite(w) or w < 0:
                raise SpecError("measure.atoms", f"atom {aid!r}: weights >= 0 and finite required")

    @property
    def variant(self) -> str:
        return "discrete"

    @property
    def total_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    def weights(self) -> np.ndarray:
        return np.asarray([w for _, w in self.atoms], dtype=float)

    def atom_ids(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.atoms)

    def all_indices(self) -> np.ndarray:
        return np.arange(len(self.atoms))

    def null_indices(self) -> tuple[int, ...]:
        return tuple(i for i, (_, w) in enumerate(self.atoms) if w == 0)

    def positive_indices(self) -> np.ndarray:
        """Atom indices off the null set, in declaration order."""
        return np.asarray([i for i, (_, w) in enumerate(self.atoms) if w > 0], dtype=int)


@dataclass(frozen=True)
class IntervalSpace:
    """[a, b) with Lebesgue measure and dyadic refinements of a base partition."""

    a: float
    b: float
    base_cells: int = 1

    def __post_init__(self):
        if not (self.b > self.a):
            raise SpecError("measure.interval", "b > a required")
        if self.base_cells < 1:
            raise SpecError("measure.interval", "base-partition-count >= 1 required")

    @property
    def variant(self) -> str:
        return "interval"

    @property
    def total_mass(self) -> float:
        return self.b - self.a

    def n_cells(self, level: int) -> int:
        return self.base_cells * (1 << level)

    def cell_width(self, level: int) -> float:
        return (self.b - self.a) / self.n_cells(level)

    def midpoints(self, level: int) -> np.ndarray:
        n = self.n_cells(level)
        return self.a + (np.arange(n) + 0.5) * self.cell_width(level)

    def cell_of(self, x: np.ndarray, level: int) -> np.ndarray:
        """Index of the half-open cell containing each point."""
        n = self.n_cells(level)
        idx = np.floor((np.asarray(x) - self.a) / self.cell_width(level)).astype(int)
        return np.clip(idx, 0, n - 1)


MeasureSpace = DiscreteSpace | IntervalSpace


@dataclass(frozen=True)
class MeasurableSet:
    """Atom subset, or a union of half-open cells at one partition level."""

    kind: str  # "atoms" | "cells"
    members: tuple[int, ...]
    level: int = 0

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(i) for i in self.members))))
        if self.kind not in ("atoms", "cells"):
            raise SpaceMismatchError(f"unknown measurable-set kind {self.kind!r}")
        if self.level < 0:
            raise SpaceMismatchError("negative refinement level")

    def is_empty(self) -> bool:
        return not self.members

    def at_level(self, level: int) -> "MeasurableSet":
        """Re-express a cell set at a finer (or equal) level; exact."""
        if self.kind != "cells":
            raise SpaceMismatchError("at_level applies to interval sets")
        if level < self.level:
            raise SpaceMismatchError("cannot coarsen a cell set")
        shift = level - self.level
        if shift == 0:
            return self
        members = []
        for i in self.members:
            base = i << shift
            members.extend(range(base, base + (1 << shift)))
        return MeasurableSet("cells", tuple(members), level)


def _check_compat(X: MeasureSpace, A: MeasurableSet):
    if isinstance(X, DiscreteSpace):
        if A.kind != "atoms":
            raise SpaceMismatchError("interval-style set used with a discrete space")
        if A.members and A.members[-1] >= len(X.atoms):
            raise SpaceMismatchError("set references atoms outside the space")
    else:
        if A.kind != "cells":
            raise SpaceMismatchError("atom-style set used with an interval space")
        if A.members and A.members[-1] >= X.n_cells(A.level):
            raise SpaceMismatchError("set references cells outside the partition")


def measure_of(X: MeasureSpace, A: MeasurableSet) -> float:
    """Sum of atom weights, or total length of the member cells."""
    _check_compat(X, A)
    if isinstance(X, DiscreteSpace):
        w = X.weights()
        total = 0.0
        for i in A.members:  # ascending index order
            total += float(w[i])
        return total
    return len(A.members) * X.cell_width(A.level)


def aligned_interval_set(X: IntervalSpace, lo: float, hi: float, level: int) -> MeasurableSet:
    """[lo, hi) as a cell set; endpoints must sit on level-``level`` boundaries."""
    w = X.cell_width(level)
    i0 = (lo - X.a) / w
    i1 = (hi - X.a) / w
    if abs(i0 - round(i0)) > 1e-9 or abs(i1 - round(i1)) > 1e-9:
        raise SpecError("set.bounds", f"[{lo}, {hi}) is not aligned to partition level {level}")
    return MeasurableSet("cells", tuple(range(int(round(i0)), int(round(i1)))), level)


@dataclass(frozen=True)
class ScalarFn:
    """Evaluable scalar map on points of X.

    ``fn`` maps an array of points (atom indices for the discrete variant,
    reals for the interval variant) to complex or real values.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    real: bool = False

    def eval(self, points: np.ndarray) -> np.ndarray:
        vals = np.asarray(self.fn(points))
        if not np.all(np.isfinite(vals)):
            raise NonFiniteValueError("scalar function evaluated to a non-finite value")
        return vals


@dataclass(frozen=True)
class PartitionDescriptor:
    """Uniform partition of an interval at one refinement level."""

    level: int
    n_cells: int
    width: float
    a: float
    b: float


def refine_partition(X: MeasureSpace, level: int) -> PartitionDescriptor:
    """Uniform partition with base_cells * 2**level cells, nested in coarser levels."""
    if not isinstance(X, IntervalSpace):
        raise SpaceMismatchError("refinePartition applies to interval spaces only")
    if level < 0:
        raise SpaceMismatchError("negative refinement level")
    return PartitionDescriptor(level, X.n_cells(level), X.cell_width(level), X.a, X.b)


def integrate_scalar(
    g: ScalarFn,
    X: MeasureSpace,
    tol: float,
    *,
    start_level: int = 0,
    level_cap: int = QUAD_LEVEL_CAP,
    rel: float = 0.0,
    trace: list | None = None,
):
    """Integral of g over X.

    Discrete: the exact weighted sum, accumulated in ascending atom order.
    Interval: composite midpoint values on dyadically refined partitions,
    stopping when successive levels differ by less than
    ``max(tol, rel * |finer value|)`` and returning the finer value.

    Raises CapReachedError (carrying the last two values) when the level cap
    is hit first.
    """
    if tol <= 0:
        raise SpecError("tol", "positive tolerance required")
    if isinstance(X, DiscreteSpace):
        vals = g.eval(X.all_indices())
        total = 0.0 + 0.0j
        for i, (_, w) in enumerate(X.atoms):  # ascending atom order
            total += w * complex(vals[i])
        return total.real if g.real else total

    prev: complex | None = None
    value: complex | None = None
    for level in range(start_level, level_cap + 1):
        prev = value
        value = complex(X.cell_width(level) * _node_sum(g, X, level))
        if prev is not None:
            delta = abs(value - prev)
            if trace is not None:
                trace.append({"level": level, "value": _jsonable(value, g.real), "delta": delta})
            if delta < max(tol, rel * abs(value)):
                return value.real if g.real else value
        elif trace is not None:
            trace.append({"level": level, "value": _jsonable(value, g.real), "delta": None})
    raise CapReachedError(
        f"quadrature refinement cap ({level_cap} levels) reached", last_two=(prev, value)
    )


def _jsonable(value: complex, real: bool):
    return value.real if real else [value.real, value.imag]


_NODE_CHUNK = 1 << 18


def _node_sum(g: ScalarFn, X: IntervalSpace, level: int) -> complex:
    """Sum of g over the level's midpoints; chunked at deep levels so the
    node arrays stay bounded in memory.  Chunk boundaries depend only on
    the level, keeping the accumulation order fixed."""
    n = X.n_cells(level)
    if n <= _NODE_CHUNK:
        return complex(np.sum(g.eval(X.midpoints(level))))
    width = X.cell_width(level)
    total = 0.0 + 0.0j
    for start in range(0, n, _NODE_CHUNK):
        stop = min(start + _NODE_CHUNK, n)
        nodes = X.a + (np.arange(start, stop) + 0.5) * width
        total += complex(np.sum(g.eval(nodes)))
    return total
