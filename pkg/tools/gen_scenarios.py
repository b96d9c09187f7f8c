#!/usr/bin/env python3
"""Regenerate the built-in scenario JSON files.

Expected values either follow from exact arithmetic (tagged trivial) or
from closed forms cross-checked against the brute-force oracle (tagged
derived).  Run from the repository root:  python tools/gen_scenarios.py
"""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "lcx" / "scenarios_data"


def c(re, im=0.0):
    return [float(re), float(im)]


def write(name, doc):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


def constant_prob():
    v = [c(1.0), c(0.0, 2.0)]
    doc = {
        "name": "constant-prob",
        "description": "constant integrand on a probability space; integral equals the constant",
        "space": {"kind": "coord", "id": "V", "dim": 2},
        "seminorms": [
            {"name": "sup", "kind": "sup", "indices": [0, 1], "weights": [1.0, 1.0]},
            {"name": "l1h", "kind": "l1", "indices": [0, 1], "weights": [0.5, 0.5]},
        ],
        "measure": {
            "kind": "discrete",
            "atoms": [
                {"id": "a", "weight": 0.2},
                {"id": "b", "weight": 0.3},
                {"id": "c", "weight": 0.5},
                {"id": "z", "weight": 0.0},
            ],
        },
        "integrand": {"catalog": "constant", "params": {"value": v}},
        "dual": [
            {"name": "coord0", "action": "integrate-weights", "coeffs": [c(1.0), c(0.0)]},
            {"name": "mix", "action": "integrate-weights", "coeffs": [c(0.5), c(0.0, -1.0)]},
        ],
        "maps": [
            {
                "name": "identity",
                "action": "matrix",
                "entries": [[c(1.0), c(0.0)], [c(0.0), c(1.0)]],
                "target": {"kind": "coord", "id": "W", "dim": 2},
                "target_seminorms": [
                    {"name": "wsup", "kind": "sup", "indices": [0, 1], "weights": [1.0, 1.0]}
                ],
                "witness": {"wsup": {"source": "sup", "scale": 1.0}},
            }
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": v,
            "provenance": "trivial: weighted sum of a constant on unit total mass",
        },
    }
    write("constant-prob", doc)


def cancellation():
    doc = {
        "name": "cancellation",
        "description": "opposite values on two unit atoms; zero integral, strict certificate gap",
        "space": {"kind": "coord", "id": "V", "dim": 2},
        "seminorms": [
            {"name": "sup", "kind": "sup", "indices": [0, 1], "weights": [1.0, 1.0]},
            {"name": "l1", "kind": "l1", "indices": [0, 1], "weights": [1.0, 1.0]},
        ],
        "measure": {
            "kind": "discrete",
            "atoms": [{"id": "a", "weight": 1.0}, {"id": "b", "weight": 1.0}],
        },
        "integrand": {
            "catalog": "atom-table",
            "params": {"values": {"a": [c(1.0), c(1.0)], "b": [c(-1.0), c(-1.0)]}},
        },
        "dual": [
            {"name": "sum01", "action": "integrate-weights", "coeffs": [c(1.0), c(1.0)]}
        ],
        "maps": [
            {
                "name": "proj0",
                "action": "projection",
                "indices": [0],
                "target": {"kind": "coord", "id": "W", "dim": 1},
                "target_seminorms": [
                    {"name": "abs", "kind": "sup", "indices": [0], "weights": [1.0]}
                ],
                "witness": {"abs": {"source": "sup", "scale": 1.0}},
            }
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": [c(0.0), c(0.0)],
            "provenance": "trivial: exact cancellation of opposite atoms",
        },
    }
    write("cancellation", doc)


def circle():
    doc = {
        "name": "circle",
        "description": "f(x) = (cos x, sin x) on [0, pi]; integral (0, 2)",
        "space": {"kind": "coord", "id": "V", "dim": 2},
        "seminorms": [
            {"name": "re", "kind": "sup", "indices": [0], "weights": [1.0]},
            {"name": "sup", "kind": "sup", "indices": [0, 1], "weights": [1.0, 1.0]},
        ],
        "measure": {"kind": "interval", "a": 0.0, "b": math.pi, "base_cells": 4},
        "integrand": {"catalog": "circle", "params": {}},
        "dual": [
            {"name": "coord1", "action": "integrate-weights", "coeffs": [c(0.0), c(1.0)]},
            {"name": "diag", "action": "integrate-weights", "coeffs": [c(1.0), c(1.0)]},
        ],
        "maps": [
            {
                "name": "proj0",
                "action": "projection",
                "indices": [0],
                "target": {"kind": "coord", "id": "W", "dim": 1},
                "target_seminorms": [
                    {"name": "abs", "kind": "sup", "indices": [0], "weights": [1.0]}
                ],
                "witness": {"abs": {"source": "sup", "scale": 1.0}},
            },
            {
                "name": "proj1",
                "action": "projection",
                "indices": [1],
                "target": {"kind": "coord", "id": "W", "dim": 1},
                "target_seminorms": [
                    {"name": "abs", "kind": "sup", "indices": [0], "weights": [1.0]}
                ],
                "witness": {"abs": {"source": "sup", "scale": 1.0}},
            },
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": [c(0.0), c(2.0)],
            "provenance": "derived: closed-form antiderivative (sin, -cos), cross-checked by oracle quadrature",
        },
    }
    write("circle", doc)


def frechet_gauss():
    half, points = 3.0, 121
    grid = [-half + 6.0 * i / (points - 1) for i in range(points)]
    expected = [
        c(0.5 * math.sqrt(math.pi) * (math.erf(s) - math.erf(s - 1.0))) for s in grid
    ]

    def window(k):
        return [i for i, s in enumerate(grid) if abs(s) <= k + 1e-12]

    doc = {
        "name": "frechet-gauss",
        "description": "translated gaussians into sampled C[-3,3] with nested sup-window seminorms",
        "space": {"kind": "grid", "id": "F", "half_width": half, "points": points},
        "seminorms": [
            {
                "name": f"win{k}",
                "kind": "sup",
                "indices": window(k),
                "weights": [1.0] * len(window(k)),
            }
            for k in (1, 2, 3)
        ],
        "measure": {"kind": "interval", "a": 0.0, "b": 1.0, "base_cells": 4},
        "integrand": {"catalog": "gauss-translate", "params": {}},
        "dual": [
            {"name": "ev0", "action": "point-eval", "point": 0.0},
            {"name": "ev_half", "action": "point-eval", "point": 0.5},
            {"name": "ev_neg1", "action": "point-eval", "point": -1.0},
        ],
        "maps": [
            {
                "name": "sample3",
                "action": "grid-restrict",
                "indices": [window(1)[0], 60, window(1)[-1]],
                "target": {"kind": "coord", "id": "W", "dim": 3},
                "target_seminorms": [
                    {"name": "wsup", "kind": "sup", "indices": [0, 1, 2], "weights": [1.0, 1.0, 1.0]}
                ],
                "witness": {"wsup": {"source": "win1", "scale": 1.0}},
            }
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": expected,
            "provenance": "derived: closed form (sqrt(pi)/2)(erf(s) - erf(s-1)) per grid sample, cross-checked by oracle quadrature",
        },
    }
    write("frechet-gauss", doc)


def sequence_space():
    d = 6
    doc = {
        "name": "sequence-space",
        "description": "first six power moments: f(x)_i = x^i on [0,1] with coordinate seminorms",
        "space": {"kind": "coord", "id": "S", "dim": d},
        "seminorms": [
            {"name": f"c{i + 1}", "kind": "sup", "indices": [i], "weights": [1.0]}
            for i in range(d)
        ],
        "measure": {"kind": "interval", "a": 0.0, "b": 1.0, "base_cells": 4},
        "integrand": {"catalog": "powers", "params": {}},
        "dual": [
            {
                "name": "coord2",
                "action": "integrate-weights",
                "coeffs": [c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)],
            }
        ],
        "maps": [
            {
                "name": "head3",
                "action": "projection",
                "indices": [0, 1, 2],
                "target": {"kind": "coord", "id": "W", "dim": 3},
                "target_seminorms": [
                    {"name": f"w{i + 1}", "kind": "sup", "indices": [i], "weights": [1.0]}
                    for i in range(3)
                ],
                "witness": {f"w{i + 1}": {"source": f"c{i + 1}", "scale": 1.0} for i in range(3)},
            }
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": [c(1.0 / (i + 2)) for i in range(d)],
            "provenance": "derived: closed-form moments 1/(i+1) of x^i, cross-checked by oracle quadrature",
        },
    }
    write("sequence-space", doc)


def simple_replay():
    values = {"x1": [c(2.0), c(0.0, 1.0)], "x2": [c(-1.0), c(0.5)], "x3": [c(2.0), c(0.0, 1.0)]}
    # exact weighted sum: 0.5*v1 + 0.25*v2 + 0.25*v3
    expected = [c(0.5 * 2 - 0.25 + 0.25 * 2), [0.25 * 0.5, 0.5 + 0.25]]
    doc = {
        "name": "simple-replay",
        "description": "integrand already simple on a discrete probability space; engine must reproduce the exact sum",
        "space": {"kind": "coord", "id": "V", "dim": 2},
        "seminorms": [
            {"name": "sup", "kind": "sup", "indices": [0, 1], "weights": [1.0, 1.0]},
            {"name": "l1h", "kind": "l1", "indices": [0, 1], "weights": [0.5, 0.5]},
        ],
        "measure": {
            "kind": "discrete",
            "atoms": [
                {"id": "x1", "weight": 0.5},
                {"id": "x2", "weight": 0.25},
                {"id": "x3", "weight": 0.25},
            ],
        },
        "integrand": {"catalog": "atom-table", "params": {"values": values}},
        "dual": [
            {"name": "coord0", "action": "integrate-weights", "coeffs": [c(1.0), c(0.0)]}
        ],
        "maps": [
            {
                "name": "proj1",
                "action": "projection",
                "indices": [1],
                "target": {"kind": "coord", "id": "W", "dim": 1},
                "target_seminorms": [
                    {"name": "abs", "kind": "sup", "indices": [0], "weights": [1.0]}
                ],
                "witness": {"abs": {"source": "sup", "scale": 1.0}},
            }
        ],
        "tol": 1e-6,
        "caps": {"max_iter": 4096, "quad_levels": 24},
        "expected": {
            "integral": expected,
            "provenance": "trivial: exact weighted sum of the declared pieces",
        },
    }
    write("simple-replay", doc)


if __name__ == "__main__":
    constant_prob()
    cancellation()
    circle()
    frechet_gauss()
    sequence_space()
    simple_replay()
