"""Catalog of evaluable integrands f: X -> V.

Integrands are referenced by catalog id plus parameters (no user-supplied
expressions), so every problem description stays declarative and the
evaluation surface stays small.  Evaluation is vectorized over sample
points: atom indices for discrete spaces, reals for interval spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NonFiniteValueError, SpecError
from .measures import DiscreteSpace, MeasurableSet, MeasureSpace
from .spaces import GridSpace, LinearMap, Space

__all__ = ["IntegrandFn", "build_integrand", "compose_integrand", "CATALOG"]


@dataclass(frozen=True, eq=False)
class IntegrandFn:
    """Evaluable map from points of X to payloads of a concrete space."""

    catalog: str
    space: Space
    fn: Callable[[np.ndarray], np.ndarray]
    params: dict = field(default_factory=dict)
    support: MeasurableSet | None = None

    def eval_batch(self, points: np.ndarray) -> np.ndarray:
        """(n, payload_len) complex matrix of values; all entries finite."""
        vals = self.fn(np.asarray(points))
        if vals.ndim != 2 or vals.shape[1] != self.space.payload_len:
            raise SpecError("integrand", f"{self.catalog!r} produced a wrong-shaped payload")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteValueError(f"integrand {self.catalog!r} evaluated to a non-finite value")
        if vals.dtype != np.complex128:
            out = np.zeros(vals.shape, dtype=np.complex128)
            out.real = vals
            return out
        return np.ascontiguousarray(vals)


def _parse_vector_payload(raw, dim: int, where: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.shape != (dim, 2):
        raise SpecError(where, f"expected {dim} [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def build_integrand(catalog: str, params: dict, space: Space, X: MeasureSpace) -> IntegrandFn:
    if catalog not in CATALOG:
        raise SpecError("integrand.catalog", f"unknown catalog id {catalog!r}")
    return CATALOG[catalog](params, space, X)


def _constant(params, space, X):
    v = _parse_vector_payload(params.get("value"), space.payload_len, "integrand.params.value")

    def fn(points):
        return np.tile(v, (len(points), 1))

    return IntegrandFn("constant", space, fn, params)


def _atom_table(params, space, X):
    if not isinstance(X, DiscreteSpace):
        raise SpecError("integrand.catalog", "atom-table requires a discrete measure space")
    values = params.get("values")
    if not isinstance(values, dict):
        raise SpecError("integrand.params.values", "mapping atom-id -> vector required")
    ids = X.atom_ids()
    missing = [a for a in ids if a not in values]
    if missing:
        raise SpecError("integrand.params.values", f"missing atoms: {missing}")
    table = np.stack(
        [_parse_vector_payload(values[a], space.payload_len, f"integrand.params.values[{a}]") for a in ids]
    )

    def fn(points):
        return table[np.asarray(points, dtype=int)]

    return IntegrandFn("atom-table", space, fn, params)


def _circle(params, space, X):
    if space.payload_len != 2:
        raise SpecError("integrand.catalog", "circle requires a 2-dimensional value space")

    def fn(points):
        x = np.asarray(points, dtype=float)
        return np.column_stack([np.cos(x), np.sin(x)])

    return IntegrandFn("circle", space, fn, params)


def _powers(params, space, X):
    d = space.payload_len
    exps = np.arange(1, d + 1)

    def fn(points):
        x = np.asarray(points, dtype=float)
        return x[:, None] ** exps[None, :]

    return IntegrandFn("powers", space, fn, params)


def _gauss_translate(params, space, X):
    if not isinstance(space, GridSpace):
        raise SpecError("integrand.catalog", "gauss-translate requires a grid value space")
    grid = space.grid()

    def fn(points):
        t = np.asarray(points, dtype=float)
        return np.exp(-((grid[None, :] - t[:, None]) ** 2))

    return IntegrandFn("gauss-translate", space, fn, params)


CATALOG = {
    "constant": _constant,
    "atom-table": _atom_table,
    "circle": _circle,
    "powers": _powers,
    "gauss-translate": _gauss_translate,
}


def compose_integrand(T: LinearMap, f: IntegrandFn) -> IntegrandFn:
    """T∘f as an integrand into T's target space."""

    def fn(points):
        return T.apply_batch(f.eval_batch(points))

    return IntegrandFn(f"{T.name}∘{f.catalog}", T.target, fn, {"base": f.catalog})
