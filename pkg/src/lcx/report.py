"""Report assembly, canonical JSON serialization, atomic file output.

Reports are plain dicts with a fixed key order; serialization uses the
shortest-roundtrip float representation, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile

from .engine import IntegralResult
from .errors import CapReachedError
from .measures import measure_of
from .schema import Problem
from .spaces import Vector

__all__ = ["build_report", "canonical_json", "atomic_write_text", "render_text"]


def vector_jsonable(v: Vector) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v.payload]


def _sanitize(obj):
    """Coerce numpy scalars to plain Python and replace non-finite floats
    (not representable in strict JSON) with None, recursively."""
    import numpy as np

    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    if isinstance(obj, float):
        import math

        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def build_report(
    problem: Problem,
    result: IntegralResult,
    *,
    certify_report: dict,
    functional_report: dict,
    map_reports: list[dict],
    verify_block: dict | None = None,
    seed: int | None = None,
    include_trace: bool = False,
) -> dict:
    report = {
        "name": problem.name,
        "tol": problem.tol,
        "caps": {"max_iter": problem.caps.max_iter, "quad_levels": problem.caps.quad_levels},
        "seed": seed,
        "integral": vector_jsonable(result.integral),
        "certificates": [c.to_jsonable() for c in result.certificates],
        "cauchy_trace": result.cauchy_trace,
        "steps": result.steps,
        "status": result.status,
        "convergence_basis": result.convergence_basis,
        "hypothesis_used": result.hypothesis_used,
        "predicates": {
            "integrally_bounded": result.integrally_bounded,
            "ib_values": result.ib_values,
            "ib_established": result.ib_established,
            "essentially_bounded": result.essentially_bounded,
            "essential_sups": result.ess_sups,
        },
        "convex_combination": result.convex_check,
        "convex_combination_chain": result.convex_checks,
        "certify": certify_report,
        "functional_commutation": functional_report,
        "operator_commutation": map_reports,
    }
    if verify_block is not None:
        report["verify"] = verify_block
    if include_trace:
        report["trace"] = {
            "chain": [
                {
                    "chain_index": k + 1,
                    "eps": result.chain_epsilons[k],
                    "met": result.chain_met[k],
                    "n": step.n,
                    "level": step.level,
                    "n_centers": step.cover.n_centers,
                    "d_measures": [measure_of(problem.measure, D) for D in step.d_sets],
                    "residual": step.residual * result.chain_epsilons[k],
                    # full piece dump only at sizes a reader can use
                    "approximant": (
                        step.approximant.to_jsonable()
                        if step.approximant.n_pieces <= 256
                        else {"omitted_pieces": step.approximant.n_pieces}
                    ),
                }
                for k, step in enumerate(result.chain_finals)
            ],
            "rhs_refinement": _rhs_refinement_rows(problem, result),
        }
    return report


def _rhs_refinement_rows(problem: Problem, result: IntegralResult) -> dict:
    """Per-seminorm quadrature refinement rows (level, value, delta) for the
    certificate right-hand sides; exact single-row entries on atom spaces."""
    from .measures import DiscreteSpace, ScalarFn, integrate_scalar

    X = problem.measure
    rows: dict[str, list] = {}
    for p in problem.family.members:
        g = ScalarFn(lambda pts, p=p: p.eval_batch(problem.integrand.eval_batch(pts)), real=True)
        if isinstance(X, DiscreteSpace):
            rows[p.name] = [
                {"level": 0, "value": float(integrate_scalar(g, X, 1.0)), "delta": 0.0}
            ]
            continue
        trace: list = []
        try:
            integrate_scalar(
                g,
                X,
                max(problem.tol / 16.0, 1e-13),
                level_cap=problem.caps.quad_levels,
                trace=trace,
            )
        except CapReachedError:
            pass  # rows collected so far still describe the refinement
        rows[p.name] = trace
    return rows


def canonical_json(report: dict) -> str:
    return json.dumps(_sanitize(report), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def atomic_write_text(path: str, text: str):
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_text(report: dict) -> str:
    lines = [f"problem: {report['name']}", f"status: {report['status']} ({report['convergence_basis']})"]
    integral = report["integral"]
    if len(integral) <= 8:
        lines.append("integral: " + ", ".join(f"{re:+.9g}{im:+.9g}i" for re, im in integral))
    else:
        lines.append(f"integral: <{len(integral)} components>")
    lines.append("certificates (p(integral) <= integral of p(f) + tol):")
    for c in report["certificates"]:
        flag = "PASS" if c["pass"] else "FAIL"
        lines.append(f"  {c['seminorm']}: lhs={c['lhs']:.9g} rhs={c['rhs']:.9g} {flag}")
    fc = report["functional_commutation"]
    if fc["rows"]:
        lines.append("functional commutation:")
        for row in fc["rows"]:
            flag = "PASS" if row["pass"] else "FAIL"
            lines.append(f"  {row['functional']}: gap={row['gap']:.3e} {flag}")
    for mr in report["operator_commutation"]:
        flag = "PASS" if mr["pass"] else "FAIL"
        gaps = ", ".join(f"{r['seminorm']}={r['gap']:.3e}" for r in mr["rows"])
        lines.append(f"operator {mr['map']}: {gaps} {flag}")
    if "verify" in report:
        vb = report["verify"]
        lines.append(
            "oracle deltas: "
            + ", ".join(f"{k}={v:.3e}" for k, v in vb["deltas"].items())
            + (" PASS" if vb["pass"] else " FAIL")
        )
    lines.append(f"hypothesis used: {report['hypothesis_used']}")
    return "\n".join(lines) + "\n"
