"""Greedy covering of a sampled image and the level-set machinery built on it.

The cover sweeps sample points in fixed order; a point's value becomes a new
center exactly when its seminorm distance to every existing center is at
least the radius, so all sampled values end up within strictly less than the
radius of some center and every center is an actual image value with a
recorded witness point.

Nearest-center queries go through a uniform hash grid over two projected
real coordinates whose sup-distance lower-bounds the seminorm distance
(see Seminorm.projection_coords); bucket candidates are verified with exact
seminorm evaluations, so pruning never changes results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import MeasurableSet
from .spaces import Seminorm

__all__ = ["CoverNet", "greedy_cover", "centers_within", "disjointify_members"]


@dataclass(frozen=True, eq=False)
class CoverNet:
    """Finite cover of the sampled image at a given radius."""

    seminorm_name: str
    radius: float
    center_values: np.ndarray  # (k, d) complex
    witness: tuple  # sample identifiers, one per center

    @property
    def n_centers(self) -> int:
        return len(self.witness)


class _HashGrid:
    """2-d uniform bucket grid for 'any point within < r' queries."""

    def __init__(self, cell: float):
        self.cell = cell
        self.buckets: dict[tuple[int, int], list[int]] = {}

    def _key(self, xy) -> tuple[int, int]:
        return (int(np.floor(xy[0] / self.cell)), int(np.floor(xy[1] / self.cell)))

    def insert(self, idx: int, xy):
        self.buckets.setdefault(self._key(xy), []).append(idx)

    def candidates(self, xy) -> list[int]:
        kx, ky = self._key(xy)
        out: list[int] = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                out.extend(self.buckets.get((kx + dx, ky + dy), ()))
        return out


def greedy_cover(values: np.ndarray, p: Seminorm, radius: float, witness: tuple) -> CoverNet:
    """Fixed-order greedy sweep; centers are rows of ``values``."""
    proj = p.projection_coords(values)
    grid = _HashGrid(radius)
    center_ids: list[int] = []
    for i in range(len(values)):
        cand = grid.candidates(proj[i])
        is_new = True
        if cand:
            rows = values[np.asarray(cand, dtype=int)]
            dists = p.eval_batch(rows - values[i])
            if np.any(dists < radius):
                is_new = False
        if is_new:
            grid.insert(i, proj[i])
            center_ids.append(i)
    ids = np.asarray(center_ids, dtype=int)
    return CoverNet(p.name, radius, values[ids], tuple(witness[i] for i in center_ids))


def centers_within(
    values: np.ndarray, centers: np.ndarray, p: Seminorm, delta: float
) -> list[list[int]]:
    """For each value row, all center indices at seminorm distance < delta.

    Candidate pairs come from the hash grid and are verified in one batched
    seminorm evaluation.
    """
    grid = _HashGrid(delta)
    cproj = p.projection_coords(centers)
    for j in range(len(centers)):
        grid.insert(j, cproj[j])
    proj = p.projection_coords(values)
    pair_pt: list[int] = []
    pair_ct: list[int] = []
    for i in range(len(values)):
        for j in grid.candidates(proj[i]):
            pair_pt.append(i)
            pair_ct.append(j)
    out: list[list[int]] = [[] for _ in range(len(values))]
    if pair_pt:
        pt = np.asarray(pair_pt, dtype=int)
        ct = np.asarray(pair_ct, dtype=int)
        dists = p.eval_batch(centers[ct] - values[pt])
        for i, j, d in zip(pair_pt, pair_ct, dists):
            if d < delta:
                out[i].append(j)
        for lst in out:
            lst.sort()
    return out


def disjointify_members(a_sets: list[MeasurableSet]) -> list[MeasurableSet]:
    """D_n = A_n minus the union of all earlier A_k; a pairwise disjoint
    sequence with the same union."""
    if not a_sets:
        return []
    kind = a_sets[0].kind
    level = max(A.level for A in a_sets) if kind == "cells" else 0
    seen: set[int] = set()
    out: list[MeasurableSet] = []
    for A in a_sets:
        members = A.members if kind == "atoms" else A.at_level(level).members
        keep = tuple(m for m in members if m not in seen)
        seen.update(members)
        out.append(MeasurableSet(kind, keep, level))
    return out
