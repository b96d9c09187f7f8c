"""Built-in scenario catalog and seeded random discrete problems.

Scenario files ship as package data in the same JSON schema the CLI
accepts; every expected value carries a provenance tag saying how it was
obtained (exact arithmetic or the brute-force oracle / a closed form).
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .errors import SpecError
from .measures import MeasurableSet
from .schema import Problem, parse_problem
from .simple import SimpleFn
from .spaces import Vector

__all__ = [
    "list_scenarios",
    "load_scenario",
    "scenario_names",
    "random_discrete_doc",
    "random_simple_pair",
]

_DATA_PACKAGE = "lcx.scenarios_data"


def scenario_names() -> list[str]:
    files = resources.files(_DATA_PACKAGE)
    return sorted(p.name.removesuffix(".json") for p in files.iterdir() if p.name.endswith(".json"))


def load_scenario(name: str) -> Problem:
    files = resources.files(_DATA_PACKAGE)
    path = files / f"{name}.json"
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise SpecError("scenario", f"no built-in scenario named {name!r}") from None
    return parse_problem(doc, name_hint=name)


def list_scenarios() -> list[dict]:
    """Catalog rows: name, description, and tagged expected results."""
    out = []
    for name in scenario_names():
        files = resources.files(_DATA_PACKAGE)
        doc = json.loads((files / f"{name}.json").read_text())
        out.append(
            {
                "name": name,
                "description": doc.get("description", ""),
                "expected": doc.get("expected"),
            }
        )
    return out


def random_discrete_doc(seed: int, max_atoms: int = 20, max_dim: int = 8, max_seminorms: int = 4) -> dict:
    """Seeded random discrete problem document (schema-identical to files).

    Atom values are continuous random complex numbers, so distinct atoms
    give distinct payloads in every coordinate with probability one; one
    atom gets weight zero to exercise null-set handling.
    """
    rng = np.random.default_rng(seed)
    n_atoms = int(rng.integers(2, max_atoms + 1))
    dim = int(rng.integers(1, max_dim + 1))
    # one slot is reserved for the final all-coordinate member below
    n_norms = int(rng.integers(1, max(2, max_seminorms)))

    atoms = []
    values = {}
    for i in range(n_atoms):
        aid = f"a{i}"
        weight = float(np.round(rng.uniform(0.05, 2.0), 6))
        if i == n_atoms - 1 and n_atoms > 2:
            weight = 0.0  # null atom
        atoms.append({"id": aid, "weight": weight})
        vec = rng.normal(size=(dim, 2))
        values[aid] = [[float(a), float(b)] for a, b in vec]

    seminorms = []
    for j in range(n_norms):
        kind = "sup" if rng.random() < 0.5 else "l1"
        k = int(rng.integers(1, dim + 1))
        indices = sorted(int(i) for i in rng.choice(dim, size=k, replace=False))
        weights = [float(np.round(rng.uniform(0.1, 2.0), 6)) for _ in indices]
        seminorms.append(
            {"name": f"p{j + 1}", "kind": kind, "indices": indices, "weights": weights}
        )
    # final member covers every coordinate so the family separates points
    seminorms.append(
        {"name": "ptop", "kind": "sup", "indices": list(range(dim)), "weights": [1.0] * dim}
    )

    coeffs = rng.normal(size=(dim, 2))
    doc = {
        "name": f"random-{seed}",
        "space": {"kind": "coord", "id": "V", "dim": dim},
        "seminorms": seminorms,
        "measure": {"kind": "discrete", "atoms": atoms},
        "integrand": {"catalog": "atom-table", "params": {"values": values}},
        "dual": [
            {
                "name": "alpha",
                "action": "integrate-weights",
                "coeffs": [[float(a), float(b)] for a, b in coeffs],
            }
        ],
        "maps": [],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
    }
    return doc


def _random_simple(space, n_points: int, rng) -> SimpleFn:
    n_pieces = int(rng.integers(1, 5))
    perm = rng.permutation(n_points)
    cut = int(rng.integers(0, n_points + 1))
    chosen = perm[:cut]
    groups = np.array_split(chosen, n_pieces)
    pieces = []
    for g in groups:
        if len(g) == 0:
            continue
        vec = rng.normal(size=(space.payload_len, 2))
        pieces.append(
            (
                MeasurableSet("atoms", tuple(int(i) for i in g)),
                Vector(space.space_id, vec[:, 0] + 1j * vec[:, 1]),
            )
        )
    return SimpleFn(space.space_id, space.payload_len, tuple(pieces))


def random_simple_pair(problem: Problem, rng) -> tuple[SimpleFn, SimpleFn]:
    """Two random simple functions over a problem's discrete measure space."""
    n = len(problem.measure.atoms)
    return (
        _random_simple(problem.space, n, rng),
        _random_simple(problem.space, n, rng),
    )
