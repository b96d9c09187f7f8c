"""Simple functions: finitely many vector values on disjoint sets.

A simple function is stored as (measurable set, vector) pieces; its value
off the union of pieces is the zero vector, and its integral is the exact
weighted sum of piece vectors.  Set algebra (needed to subtract two simple
functions) happens on the common refinement of the piece partitions, which
is exact for both space variants.

Pieces are normalized on construction: empty sets are dropped, but pieces
with duplicate vectors are kept separate so constructions remain traceable
to the covering sets that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpaceMismatchError
from .measures import DiscreteSpace, MeasurableSet, MeasureSpace, measure_of
from .spaces import Vector

__all__ = [
    "SimpleFn",
    "integrate_simple",
    "eval_simple",
    "subtract_simple",
    "combine_simple",
]


@dataclass(frozen=True, eq=False)
class SimpleFn:
    """Finite list of (set, vector) pieces over pairwise disjoint sets."""

    v_space_id: str
    payload_len: int
    pieces: tuple[tuple[MeasurableSet, Vector], ...]

    def __post_init__(self):
        pieces = tuple((A, v) for A, v in self.pieces if not A.is_empty())
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "_cache", {})
        kinds = {A.kind for A, _ in pieces}
        if len(kinds) > 1:
            raise SpaceMismatchError("pieces mix atom-style and cell-style sets")
        for A, v in pieces:
            if v.space_id != self.v_space_id or v.payload.shape != (self.payload_len,):
                raise SpaceMismatchError("piece vector outside the declared value space")
        flat, ids = self._flat_members()
        if len(np.unique(flat)) != len(flat):
            raise SpaceMismatchError("simple-function pieces are not pairwise disjoint")

    def _flat_members(self) -> tuple[np.ndarray, np.ndarray]:
        """All member indices at the common level, with their piece ids."""
        if "flat" in self._cache:
            return self._cache["flat"]
        if not self.pieces:
            out = (np.zeros(0, dtype=int), np.zeros(0, dtype=int))
        else:
            lv = self.max_level()
            expanded = [
                A.members if A.kind == "atoms" else A.at_level(lv).members
                for A, _ in self.pieces
            ]
            counts = np.asarray([len(m) for m in expanded])
            total = int(counts.sum())
            flat = np.fromiter((i for m in expanded for i in m), dtype=int, count=total)
            ids = np.repeat(np.arange(len(expanded)), counts)
            out = (flat, ids)
        self._cache["flat"] = out
        return out

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    def max_level(self) -> int:
        return max((A.level for A, _ in self.pieces if A.kind == "cells"), default=0)

    def value_matrix(self) -> np.ndarray:
        if "vm" not in self._cache:
            if not self.pieces:
                vm = np.zeros((0, self.payload_len), dtype=np.complex128)
            else:
                vm = np.stack([v.payload for _, v in self.pieces])
            self._cache["vm"] = vm
        return self._cache["vm"]

    def piece_lookup(self, X: MeasureSpace):
        """Point -> piece-index map (-1 where uncovered), vectorized.

        Discrete: an array over atom indices.  Interval: an array over cells
        at the pieces' common refinement level, plus that level.
        """
        if "lookup" in self._cache:
            return self._cache["lookup"]
        flat, ids = self._flat_members()
        if isinstance(X, DiscreteSpace):
            lv = 0
            lookup = np.full(len(X.atoms), -1, dtype=int)
        else:
            lv = self.max_level()
            lookup = np.full(X.n_cells(lv), -1, dtype=int)
        lookup[flat] = ids
        self._cache["lookup"] = (lookup, lv)
        return lookup, lv

    def eval_batch(self, points: np.ndarray, X: MeasureSpace) -> np.ndarray:
        """Payload rows of the function at each point; zero where uncovered."""
        lookup, lv = self.piece_lookup(X)
        if isinstance(X, DiscreteSpace):
            idx = lookup[np.asarray(points, dtype=int)]
        else:
            idx = lookup[X.cell_of(np.asarray(points, dtype=float), lv)]
        out = np.zeros((len(idx), self.payload_len), dtype=np.complex128)
        covered = idx >= 0
        if np.any(covered):
            out[covered] = self.value_matrix()[idx[covered]]
        return out

    def to_jsonable(self) -> dict:
        return {
            "value_space": self.v_space_id,
            "pieces": [
                {
                    "set": {"kind": A.kind, "members": list(A.members), "level": A.level},
                    "vector": [[z.real, z.imag] for z in v.payload],
                }
                for A, v in self.pieces
            ],
        }


def integrate_simple(s: SimpleFn, X: MeasureSpace) -> Vector:
    """Sum of measure(A_j) * v_j, computed exactly in fixed order.

    On discrete spaces the sum is regrouped atomwise and accumulated over
    ascending atom indices, so it reproduces the plain weighted sum of the
    pointwise values bit for bit.
    """
    total = np.zeros(s.payload_len, dtype=np.complex128)
    if isinstance(X, DiscreteSpace):
        vals = s.eval_batch(X.all_indices(), X)
        for i, (_, w) in enumerate(X.atoms):  # ascending atom order
            total += w * vals[i]
        return Vector(s.v_space_id, total)
    for A, v in s.pieces:
        total += measure_of(X, A) * v.payload
    return Vector(s.v_space_id, total)


def eval_simple(s: SimpleFn, x, X: MeasureSpace) -> Vector:
    """v_j when x lies in A_j, else the zero vector."""
    row = s.eval_batch(np.asarray([x]), X)[0]
    return Vector(s.v_space_id, row)


def combine_simple(a: complex, s: SimpleFn, b: complex, t: SimpleFn, X: MeasureSpace) -> SimpleFn:
    """a*s + b*t on the common refinement of the two piece partitions."""
    if s.v_space_id != t.v_space_id or s.payload_len != t.payload_len:
        raise SpaceMismatchError("combining simple functions with different value spaces")
    ls, _ = s.piece_lookup(X)
    lt, _ = t.piece_lookup(X)
    if isinstance(X, DiscreteSpace):
        kind, level = "atoms", 0
        ns = len(X.atoms)
        ls_full, lt_full = ls, lt
    else:
        kind, level = "cells", max(s.max_level(), t.max_level())
        ns = X.n_cells(level)
        # expand both lookups to the common level
        ls_full = np.repeat(ls, ns // len(ls)) if len(ls) else np.full(ns, -1, dtype=int)
        lt_full = np.repeat(lt, ns // len(lt)) if len(lt) else np.full(ns, -1, dtype=int)
    sv = s.value_matrix()
    tv = t.value_matrix()
    labels = (ls_full + 1) * (t.n_pieces + 1) + (lt_full + 1)
    order = np.argsort(labels, kind="stable")
    bounds = np.nonzero(np.diff(labels[order]))[0] + 1
    pieces = []
    for members in np.split(order, bounds):
        lab = int(labels[members[0]])
        i = lab // (t.n_pieces + 1) - 1
        j = lab % (t.n_pieces + 1) - 1
        if i < 0 and j < 0:
            continue
        val = np.zeros(s.payload_len, dtype=np.complex128)
        if i >= 0:
            val = val + a * sv[i]
        if j >= 0:
            val = val + b * tv[j]
        pieces.append(
            (MeasurableSet(kind, tuple(int(m) for m in members), level), Vector(s.v_space_id, val))
        )
    return SimpleFn(s.v_space_id, s.payload_len, tuple(pieces))


def subtract_simple(s: SimpleFn, t: SimpleFn, X: MeasureSpace) -> SimpleFn:
    """Pointwise s - t as a simple function."""
    return combine_simple(1.0, s, -1.0, t, X)
