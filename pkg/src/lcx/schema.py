"""Declarative problem descriptions: parsing and validation.

One JSON document describes an integration problem end to end: value space,
generating seminorm family, measure space, catalog integrand, a dual list
of functionals, and linear maps with continuity witnesses.  Scenario files
shipped with the package use the same schema plus provenance-tagged
expected results.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import Caps
from .errors import SpecError
from .integrands import IntegrandFn, build_integrand
from .measures import DiscreteSpace, IntervalSpace, MeasureSpace
from .spaces import (
    SCALAR_SPACE,
    CoordSpace,
    GridSpace,
    LinearMap,
    Seminorm,
    SeminormFamily,
    Space,
    scale_seminorm,
)

__all__ = ["Problem", "MapCheck", "parse_problem"]


@dataclass(frozen=True, eq=False)
class MapCheck:
    """A declared map together with the target family it must commute into."""

    map: LinearMap
    target_family: SeminormFamily


@dataclass(frozen=True, eq=False)
class Problem:
    name: str
    space: Space
    family: SeminormFamily
    measure: MeasureSpace
    integrand: IntegrandFn
    duals: tuple[LinearMap, ...]
    maps: tuple[MapCheck, ...]
    tol: float
    caps: Caps
    expected: dict | None
    raw: dict = field(repr=False, default_factory=dict)


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise SpecError(f"{where}.{key}", "required field missing")
    return doc[key]


def _parse_space(doc: dict, where: str) -> Space:
    kind = _require(doc, "kind", where)
    sid = _require(doc, "id", where)
    if kind == "coord":
        dim = _require(doc, "dim", where)
        if not isinstance(dim, int) or dim < 1:
            raise SpecError(f"{where}.dim", "positive integer required")
        return CoordSpace(sid, dim)
    if kind == "grid":
        half = _require(doc, "half_width", where)
        pts = _require(doc, "points", where)
        if not (isinstance(half, (int, float)) and half > 0):
            raise SpecError(f"{where}.half_width", "positive number required")
        if not isinstance(pts, int) or pts < 2:
            raise SpecError(f"{where}.points", "integer >= 2 required")
        return GridSpace(sid, float(half), pts)
    raise SpecError(f"{where}.kind", f"unknown space kind {kind!r}")


def _parse_complex_list(raw, where: str) -> tuple[complex, ...]:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise SpecError(where, "list of [re, im] pairs required") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SpecError(where, "list of [re, im] pairs required")
    return tuple(complex(r, i) for r, i in arr)


def _parse_seminorm(doc: dict, space: Space, where: str) -> Seminorm:
    kind = _require(doc, "kind", where)
    name = _require(doc, "name", where)
    if kind in ("sup", "l1"):
        indices = _require(doc, "indices", where)
        weights = _require(doc, "weights", where)
        if len(indices) != len(weights):
            raise SpecError(f"{where}.weights", "must match indices in length")
        if any((not isinstance(w, (int, float))) or w < 0 for w in weights):
            raise SpecError(f"{where}.weights", "weights >= 0 required")
        if any(not isinstance(i, int) or i < 0 or i >= space.payload_len for i in indices):
            raise SpecError(f"{where}.indices", "indices must address the space payload")
        return Seminorm(space.space_id, kind, tuple(indices), tuple(float(w) for w in weights), name=name)
    if kind == "functional":
        coeffs = _parse_complex_list(_require(doc, "coeffs", where), f"{where}.coeffs")
        if len(coeffs) != space.payload_len:
            raise SpecError(f"{where}.coeffs", "one coefficient per payload entry required")
        return Seminorm(space.space_id, "functional", coeffs=coeffs, name=name)
    raise SpecError(f"{where}.kind", f"unknown seminorm kind {kind!r}")


def _parse_measure(doc: dict, where: str) -> MeasureSpace:
    kind = _require(doc, "kind", where)
    if kind == "discrete":
        atoms = _require(doc, "atoms", where)
        if not isinstance(atoms, list) or not atoms:
            raise SpecError(f"{where}.atoms", "nonempty atom list required")
        parsed = []
        for i, a in enumerate(atoms):
            aid = _require(a, "id", f"{where}.atoms[{i}]")
            w = _require(a, "weight", f"{where}.atoms[{i}]")
            if not isinstance(w, (int, float)) or w < 0:
                raise SpecError(f"{where}.atoms[{i}].weight", "weights >= 0 required")
            parsed.append((str(aid), float(w)))
        return DiscreteSpace(tuple(parsed))
    if kind == "interval":
        a = _require(doc, "a", where)
        b = _require(doc, "b", where)
        base = doc.get("base_cells", 1)
        if not isinstance(base, int) or base < 1:
            raise SpecError(f"{where}.base_cells", "positive integer required")
        if not (isinstance(a, (int, float)) and isinstance(b, (int, float)) and b > a):
            raise SpecError(f"{where}.b", "b > a required")
        return IntervalSpace(float(a), float(b), base)
    raise SpecError(f"{where}.kind", f"unknown measure kind {kind!r}")


def _parse_functional(doc: dict, space: Space, where: str) -> LinearMap:
    name = _require(doc, "name", where)
    action = _require(doc, "action", where)
    if action == "integrate-weights":
        coeffs = _parse_complex_list(_require(doc, "coeffs", where), f"{where}.coeffs")
        if len(coeffs) != space.payload_len:
            raise SpecError(f"{where}.coeffs", "one coefficient per payload entry required")
        return LinearMap(name, space, SCALAR_SPACE, "integrate-weights", coeffs=coeffs)
    if action == "point-eval":
        if not isinstance(space, GridSpace):
            raise SpecError(f"{where}.action", "point-eval requires a grid space")
        point = _require(doc, "point", where)
        if not isinstance(point, (int, float)) or abs(point) > space.half_width:
            raise SpecError(f"{where}.point", "point must lie inside the grid domain")
        return LinearMap(name, space, SCALAR_SPACE, "point-eval", point=float(point))
    raise SpecError(f"{where}.action", f"unsupported functional action {action!r}")


def _parse_map(doc: dict, space: Space, family: SeminormFamily, where: str) -> MapCheck:
    name = _require(doc, "name", where)
    action = _require(doc, "action", where)
    target_space = _parse_space(_require(doc, "target", where), f"{where}.target")
    kwargs: dict = {}
    if action in ("projection", "grid-restrict"):
        indices = _require(doc, "indices", where)
        if any(not isinstance(i, int) or i < 0 or i >= space.payload_len for i in indices):
            raise SpecError(f"{where}.indices", "indices must address the source payload")
        if len(indices) != target_space.payload_len:
            raise SpecError(f"{where}.target", "target dimension must match selected indices")
        kwargs["indices"] = tuple(indices)
    elif action == "matrix":
        rows = _require(doc, "entries", where)
        mat = tuple(_parse_complex_list(r, f"{where}.entries") for r in rows)
        if len(mat) != target_space.payload_len or any(len(r) != space.payload_len for r in mat):
            raise SpecError(f"{where}.entries", "matrix shape must be target_dim x source_dim")
        kwargs["matrix"] = mat
    elif action == "point-eval":
        point = _require(doc, "point", where)
        kwargs["point"] = float(point)
    elif action == "integrate-weights":
        kwargs["coeffs"] = _parse_complex_list(_require(doc, "coeffs", where), f"{where}.coeffs")
    else:
        raise SpecError(f"{where}.action", f"unknown action {action!r}")

    t_norms = [
        _parse_seminorm(d, target_space, f"{where}.target_seminorms[{i}]")
        for i, d in enumerate(_require(doc, "target_seminorms", where))
    ]
    target_family = SeminormFamily(target_space.space_id, tuple(t_norms))

    by_name = {p.name: p for p in family.members}
    witness: dict[str, Seminorm] = {}
    for qname, spec in _require(doc, "witness", where).items():
        src = _require(spec, "source", f"{where}.witness[{qname}]")
        if src not in by_name:
            raise SpecError(f"{where}.witness[{qname}].source", f"unknown family seminorm {src!r}")
        w = by_name[src]
        scale = spec.get("scale", 1.0)
        if scale != 1.0:
            w = scale_seminorm(w, float(scale))
        witness[qname] = w
    missing = [q.name for q in t_norms if q.name not in witness]
    if missing:
        raise SpecError(f"{where}.witness", f"missing continuity witness for {missing}")
    T = LinearMap(name, space, target_space, action, witness=witness, **kwargs)
    return MapCheck(T, target_family)


def parse_problem(doc: dict, name_hint: str = "problem") -> Problem:
    """Validate and bind a problem document; SpecError names bad fields."""
    if not isinstance(doc, dict):
        raise SpecError("document", "JSON object required")
    name = doc.get("name", name_hint)
    space = _parse_space(_require(doc, "space", "document"), "space")
    norm_docs = _require(doc, "seminorms", "document")
    if not isinstance(norm_docs, list) or not norm_docs:
        raise SpecError("seminorms", "nonempty list required")
    members = tuple(
        _parse_seminorm(d, space, f"seminorms[{i}]") for i, d in enumerate(norm_docs)
    )
    names = [p.name for p in members]
    if len(set(names)) != len(names):
        raise SpecError("seminorms", "seminorm names must be unique")
    family = SeminormFamily(space.space_id, members)
    measure = _parse_measure(_require(doc, "measure", "document"), "measure")
    integrand_doc = _require(doc, "integrand", "document")
    integrand = build_integrand(
        _require(integrand_doc, "catalog", "integrand"),
        integrand_doc.get("params", {}),
        space,
        measure,
    )
    duals = tuple(
        _parse_functional(d, space, f"dual[{i}]") for i, d in enumerate(doc.get("dual", []))
    )
    maps = tuple(
        _parse_map(d, space, family, f"maps[{i}]") for i, d in enumerate(doc.get("maps", []))
    )
    tol = doc.get("tol", 1e-6)
    if not isinstance(tol, (int, float)) or tol <= 0:
        raise SpecError("tol", "positive tolerance required")
    caps_doc = doc.get("caps", {})
    max_iter = caps_doc.get("max_iter", 4096)
    quad_levels = caps_doc.get("quad_levels", 24)
    if not isinstance(max_iter, int) or max_iter < 1:
        raise SpecError("caps.max_iter", "positive integer required")
    if not isinstance(quad_levels, int) or quad_levels < 1:
        raise SpecError("caps.quad_levels", "positive integer required")
    return Problem(
        name=str(name),
        space=space,
        family=family,
        measure=measure,
        integrand=integrand,
        duals=duals,
        maps=maps,
        tol=float(tol),
        caps=Caps(max_iter, quad_levels),
        expected=doc.get("expected"),
        raw=doc,
    )
