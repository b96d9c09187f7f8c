"""Batch front door: parse a problem JSON, run the engine, emit reports.

Subcommands:
  run    <spec> [flags]   integrate, certify, write a report
  verify <spec> [flags]   run plus the independent oracle comparison
  suite  <name> [flags]   built-in scenario suite or the property suite

Exit codes: 0 converged and certified, 1 malformed problem description,
2 caps reached before convergence, 3 certificate or commutation failure.
The report directory defaults to the working directory; the LCX_REPORT_DIR
environment variable overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .engine import (
    bochner_integrate,
    certify,
    functional_commutation_check,
    integrate_seminorm_simple,
    pushforward_check,
)
from .errors import LcxError, SpecError
from .oracle import oracle_integrate
from .report import atomic_write_text, build_report, canonical_json, render_text
from .scenarios import load_scenario, random_discrete_doc, random_simple_pair, scenario_names
from .schema import Problem, parse_problem
from .simple import integrate_simple, subtract_simple
from .spaces import eval_seminorm

EXIT_OK, EXIT_SPEC, EXIT_CAP, EXIT_CERT = 0, 1, 2, 3


def _load_problem(spec: str) -> Problem:
    path = Path(spec)
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise SpecError("document", f"invalid JSON: {err}") from None
        return parse_problem(doc, name_hint=path.stem)
    name = path.stem
    if name in scenario_names():
        return load_scenario(name)
    raise SpecError("spec-path", f"no such file and no built-in scenario named {name!r}")


def _report_dir(flag_value: str | None) -> str:
    return os.environ.get("LCX_REPORT_DIR") or flag_value or "."


def run_problem(
    problem: Problem,
    *,
    with_verify: bool,
    seed: int | None,
    include_trace: bool,
    resolution: int | None = None,
) -> tuple[dict, int]:
    """Integrate, check, and assemble the report; returns (report, exit_code)."""
    if resolution is None:
        # wide sampled-function payloads make 2^20-node sweeps needlessly
        # expensive; 2^16 already has midpoint error far below tolerance
        resolution = 20 if problem.space.payload_len <= 8 else 16
    f, X, family = problem.integrand, problem.measure, problem.family
    tol, caps = problem.tol, problem.caps
    result = bochner_integrate(f, X, family, tol, caps)
    cert = certify(result, f, X, family, tol, caps)
    func = functional_commutation_check(list(problem.duals), f, X, result.integral, tol, caps)
    maps = [
        pushforward_check(
            mc.map, f, X, family, mc.target_family, tol, caps, source_result=result
        )
        for mc in problem.maps
    ]

    verify_block = None
    if with_verify:
        ref = oracle_integrate(f, X, resolution)
        deltas = {p.name: eval_seminorm(p, result.integral.sub(ref)) for p in family.members}
        verify_block = {
            "oracle_resolution": resolution,
            "oracle_integral": [[z.real, z.imag] for z in ref.payload],
            "deltas": deltas,
            "pass": all(d <= tol for d in deltas.values()),
        }
        if problem.expected and "integral" in problem.expected:
            exp = np.asarray(problem.expected["integral"], dtype=float)
            expected_vec = exp[:, 0] + 1j * exp[:, 1]
            gap = float(np.max(np.abs(result.integral.payload - expected_vec)))
            verify_block["expected_gap"] = gap
            verify_block["expected_provenance"] = problem.expected.get("provenance", "")
            verify_block["pass"] = verify_block["pass"] and gap <= max(tol, 1e-6)

    report = build_report(
        problem,
        result,
        certify_report=cert,
        functional_report=func,
        map_reports=maps,
        verify_block=verify_block,
        seed=seed,
        include_trace=include_trace,
    )

    if result.status != "converged":
        code = EXIT_CAP
    elif not (
        cert["pass"]
        and func["pass"]
        and all(m["pass"] for m in maps)
        and (verify_block is None or verify_block["pass"])
    ):
        code = EXIT_CERT
    else:
        code = EXIT_OK
    return report, code


def _apply_overrides(problem: Problem, args) -> Problem:
    doc = dict(problem.raw)
    if args.tol is not None:
        doc["tol"] = args.tol
    caps = dict(doc.get("caps", {}))
    if args.max_iter is not None:
        caps["max_iter"] = args.max_iter
    if args.quad_levels is not None:
        caps["quad_levels"] = args.quad_levels
    if caps:
        doc["caps"] = caps
    return parse_problem(doc, name_hint=problem.name)


def _emit(report: dict, args, problem: Problem) -> None:
    out_dir = _report_dir(args.report_dir)
    path = os.path.join(out_dir, f"{problem.name}.report.json")
    atomic_write_text(path, canonical_json(report))
    if args.format == "json":
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(render_text(report))
        sys.stdout.write(f"report: {path}\n")


def _cmd_run(args, force_verify: bool = False) -> int:
    try:
        problem = _apply_overrides(_load_problem(args.spec), args)
    except SpecError as err:
        sys.stderr.write(f"spec error -- {err}\n")
        return EXIT_SPEC
    report, code = run_problem(
        problem,
        with_verify=force_verify or args.verify,
        seed=args.seed,
        include_trace=args.trace,
        resolution=args.resolution,
    )
    _emit(report, args, problem)
    return code


def _cmd_suite(args) -> int:
    if args.name == "scenarios":
        overall = EXIT_OK
        for name in scenario_names():
            ns = argparse.Namespace(**vars(args), spec=name)
            code = _cmd_run(ns, force_verify=True)
            print(f"scenario {name}: {'PASS' if code == EXIT_OK else f'FAIL (exit {code})'}")
            overall = overall if code == EXIT_OK else EXIT_SPEC
        return overall
    if args.name == "properties":
        return _property_suite(args.cases, args.seed if args.seed is not None else 0)
    sys.stderr.write(f"unknown suite {args.name!r} (choose 'scenarios' or 'properties')\n")
    return EXIT_SPEC


def _property_suite(cases: int, seed: int) -> int:
    """Seeded randomized checks on discrete problems: engine equals the
    oracle exactly, certificates hold, and the simple-function estimate
    q(int s - int t) <= int q(s - t) holds on random pairs."""
    failures = 0
    for i in range(cases):
        case_seed = seed * 1_000_003 + i
        problem = parse_problem(random_discrete_doc(case_seed))
        f, X, family = problem.integrand, problem.measure, problem.family
        result = bochner_integrate(f, X, family, problem.tol, problem.caps)
        ref = oracle_integrate(f, X)
        exact = all(
            eval_seminorm(p, result.integral.sub(ref)) == 0.0 for p in family.members
        )
        certs = result.certificates_pass() and result.status == "converged"
        s, t = random_simple_pair(problem, np.random.default_rng(case_seed))
        diff = subtract_simple(s, t, X)
        cauchy = all(
            eval_seminorm(q, integrate_simple(s, X).sub(integrate_simple(t, X)))
            <= integrate_seminorm_simple(q, diff, X) + 1e-10
            for q in [family.chain(k) for k in range(1, len(family) + 1)]
        )
        ok = exact and certs and cauchy
        if not ok:
            failures += 1
            print(f"case seed={case_seed}: exact={exact} certificates={certs} cauchy={cauchy}")
    print(f"properties: {cases - failures}/{cases} cases passed")
    return EXIT_OK if failures == 0 else EXIT_SPEC


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=None, help="convergence tolerance override")
    p.add_argument("--max-iter", type=int, default=None, help="approximation index cap")
    p.add_argument("--quad-levels", type=int, default=None, help="quadrature refinement cap")
    p.add_argument("--trace", action="store_true", help="include the step trace in the report")
    p.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--report-dir", default=None, help="report directory (LCX_REPORT_DIR overrides)")
    p.add_argument("--resolution", type=int, default=None, help="oracle midpoint resolution (2^r nodes)")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lcx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate a problem spec and write a report")
    p_run.add_argument("spec", help="path to a problem JSON, or a built-in scenario name")
    p_run.add_argument("--verify", action="store_true", help="also compare against the oracle")
    _add_common(p_run)

    p_verify = sub.add_parser("verify", help="run with the oracle comparison forced on")
    p_verify.add_argument("spec")
    p_verify.add_argument("--verify", action="store_true", help=argparse.SUPPRESS)
    _add_common(p_verify)

    p_suite = sub.add_parser("suite", help="run the scenario or property suite")
    p_suite.add_argument("name", help="'scenarios' or 'properties'")
    p_suite.add_argument("--cases", type=int, default=100, help="property-case count")
    p_suite.add_argument("--verify", action="store_true", help=argparse.SUPPRESS)
    _add_common(p_suite)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_run(args, force_verify=True)
        return _cmd_suite(args)
    except SpecError as err:
        sys.stderr.write(f"spec error -- {err}\n")
        return EXIT_SPEC
    except LcxError as err:
        sys.stderr.write(f"error -- {err}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
