"""Independent brute-force integration used to check the engine.

The oracle shares no code path with the engine beyond seminorm evaluation:
discrete spaces get the plain weighted sum in ascending atom order, and
intervals get a flat composite midpoint rule at 2**resolution nodes applied
coordinatewise.  No covers, no simple functions, no adaptive refinement.
"""

from __future__ import annotations

import numpy as np

from .integrands import IntegrandFn
from .measures import DiscreteSpace, MeasureSpace
from .spaces import Vector

__all__ = ["oracle_integrate"]

_CHUNK = 1 << 16


def oracle_integrate(f: IntegrandFn, X: MeasureSpace, resolution: int = 20) -> Vector:
    """Reference integral of f over X.

    Discrete: exact weighted sum over ascending atom indices (the same
    accumulation order the engine's exact sums use, so agreement on
    discrete spaces is bit-for-bit).  Interval: midpoint rule at
    2**resolution nodes, accumulated in fixed ascending chunks.
    """
    if isinstance(X, DiscreteSpace):
        vals = f.eval_batch(X.all_indices())
        total = np.zeros(f.space.payload_len, dtype=np.complex128)
        for i, (_, w) in enumerate(X.atoms):
            total += w * vals[i]
        return Vector(f.space.space_id, total)

    n = 1 << resolution
    width = (X.b - X.a) / n
    total = np.zeros(f.space.payload_len, dtype=np.complex128)
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        nodes = X.a + (np.arange(start, stop) + 0.5) * width
        total += np.sum(f.eval_batch(nodes), axis=0)
    return Vector(f.space.space_id, width * total)
