import math

import numpy as np
import pytest

from lcx.engine import (
    Caps,
    approximate,
    bochner_integrate,
    build_approximant,
    certify,
    convex_combination_check,
    functional_commutation_check,
    integrate_seminorm_simple,
    is_essentially_bounded,
    is_integrally_bounded,
    pushforward_check,
)
from lcx.errors import CapReachedError
from lcx.integrands import build_integrand
from lcx.measures import DiscreteSpace, IntervalSpace, MeasurableSet
from lcx.oracle import oracle_integrate
from lcx.scenarios import random_discrete_doc, random_simple_pair
from lcx.schema import parse_problem
from lcx.simple import SimpleFn, integrate_simple, subtract_simple
from lcx.spaces import (
    CoordSpace,
    LinearMap,
    SCALAR_SPACE,
    Seminorm,
    SeminormFamily,
    Vector,
    eval_seminorm,
)

SUP2 = Seminorm("V", "sup", (0, 1), (1.0, 1.0), name="sup")
FAM2 = SeminormFamily("V", (SUP2,))


def _constant_problem():
    X = DiscreteSpace((("a", 0.2), ("b", 0.3), ("c", 0.5)))
    space = CoordSpace("V", 2)
    f = build_integrand("constant", {"value": [[1.0, 0.0], [0.0, 2.0]]}, space, X)
    return f, X, space


def _cancellation_problem():
    X = DiscreteSpace((("a", 1.0), ("b", 1.0)))
    space = CoordSpace("V", 2)
    f = build_integrand(
        "atom-table",
        {"values": {"a": [[1.0, 0.0], [1.0, 0.0]], "b": [[-1.0, 0.0], [-1.0, 0.0]]}},
        space,
        X,
    )
    return f, X, space


class TestPredicates:
    def test_constant_integrally_bounded(self):
        f, X, _ = _constant_problem()
        ok, values, established = is_integrally_bounded(f, X, FAM2)
        assert ok and all(established.values())
        assert values["sup"] == pytest.approx(2.0)  # p(v) * mass 1

    def test_zero_function(self):
        X = DiscreteSpace((("a", 1.0),))
        space = CoordSpace("V", 2)
        f = build_integrand("constant", {"value": [[0.0, 0.0], [0.0, 0.0]]}, space, X)
        ok, values, _ = is_integrally_bounded(f, X, FAM2)
        assert ok and values["sup"] == 0.0

    def test_circle_sup_value_against_closed_form(self):
        # integral of max(|cos|,|sin|) over [0, pi] is 2*sqrt(2)
        X = IntervalSpace(0.0, math.pi, 4)
        space = CoordSpace("V", 2)
        f = build_integrand("circle", {}, space, X)
        ok, values, _ = is_integrally_bounded(f, X, FAM2, tol=1e-6)
        assert ok
        assert values["sup"] == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-6)

    def test_essential_boundedness_ignores_null_atoms(self):
        X = DiscreteSpace((("a", 1.0), ("z", 0.0)))
        space = CoordSpace("V", 1)
        f = build_integrand(
            "atom-table", {"values": {"a": [[1.0, 0.0]], "z": [[1e12, 0.0]]}}, space, X
        )
        fam = SeminormFamily("V", (Seminorm("V", "sup", (0,), (1.0,), name="abs"),))
        ok, sups = is_essentially_bounded(f, X, fam)
        assert ok and sups["abs"] == 1.0


class TestBuildApproximant:
    def test_simple_integrand_small_residual(self):
        # three atoms, values already well separated; once every value is a
        # center the residual is exactly zero
        X = DiscreteSpace((("a", 1.0), ("b", 1.0), ("c", 1.0)))
        space = CoordSpace("V", 1)
        f = build_integrand(
            "atom-table",
            {"values": {"a": [[1.0, 0.0]], "b": [[2.0, 0.0]], "c": [[3.0, 0.0]]}},
            space,
            X,
        )
        p = Seminorm("V", "sup", (0,), (1.0,), name="abs")
        step = build_approximant(f, X, p, 4)
        assert step.residual < X.total_mass / 4
        assert step.d_pairwise_disjoint and step.union_preserved and step.bound_factor_ok

    def test_zero_integrand_empty_pieces(self):
        X = DiscreteSpace((("a", 1.0), ("b", 2.0)))
        space = CoordSpace("V", 2)
        f = build_integrand("constant", {"value": [[0.0, 0.0], [0.0, 0.0]]}, space, X)
        step = build_approximant(f, X, SUP2, 3)
        assert step.approximant.n_pieces == 0 and step.residual == 0.0

    def test_residual_sequence_eventually_below_any_eps(self):
        rng = np.random.default_rng(30)
        X = DiscreteSpace(tuple((f"a{i}", 1.0) for i in range(6)))
        space = CoordSpace("V", 2)
        values = {
            f"a{i}": [[float(a), float(b)] for a, b in rng.normal(size=(2, 2))] for i in range(6)
        }
        f = build_integrand("atom-table", {"values": values}, space, X)
        residuals = [build_approximant(f, X, SUP2, n).residual for n in range(1, 40)]
        for eps in (1.0, 0.1, 0.01):
            assert min(residuals) < eps
        assert residuals[-1] == 0.0  # finite image: eventually exact

    def test_bound_factor_at_every_sample(self):
        rng = np.random.default_rng(31)
        X = DiscreteSpace(tuple((f"a{i}", float(rng.uniform(0.1, 1))) for i in range(8)))
        space = CoordSpace("V", 2)
        values = {
            f"a{i}": [[float(a), float(b)] for a, b in rng.normal(size=(2, 2))] for i in range(8)
        }
        f = build_integrand("atom-table", {"values": values}, space, X)
        for n in (1, 2, 4, 8, 16):
            step = build_approximant(f, X, SUP2, n)
            vals = f.eval_batch(X.positive_indices())
            sv = step.approximant.eval_batch(X.positive_indices(), X)
            assert np.all(SUP2.eval_batch(sv) <= 2.0 * SUP2.eval_batch(vals) + 1e-9)


class TestApproximate:
    def test_simple_integrand_exact_zero_residual(self):
        f, X, _ = _cancellation_problem()
        out = approximate(f, X, SUP2, 1e-9)
        assert out.met and out.final.residual == 0.0

    def test_huge_eps_met_immediately(self):
        f, X, _ = _constant_problem()
        # integral of sup(f) is 2.0; any eps above that admits s = 0
        out = approximate(f, X, SUP2, 5.0)
        assert out.met and out.final.residual * 5.0 < 5.0

    def test_halving_eps_never_increases_residual(self):
        f, X, _ = _constant_problem()
        prev = None
        for eps in (1.0, 0.5, 0.25, 0.125):
            out = approximate(f, X, SUP2, eps)
            res = out.final.residual * eps
            if prev is not None:
                assert res <= prev + 1e-15
            prev = res

    @pytest.mark.parametrize("eps", [1.0, 0.1, 0.01])
    def test_terminates_below_eps_on_bounded_discrete(self, eps):
        rng = np.random.default_rng(33)
        X = DiscreteSpace(tuple((f"a{i}", float(rng.uniform(0.1, 1.0))) for i in range(12)))
        space = CoordSpace("V", 3)
        values = {
            f"a{i}": [[float(a), float(b)] for a, b in rng.normal(size=(3, 2))] for i in range(12)
        }
        f = build_integrand("atom-table", {"values": values}, space, X)
        p = Seminorm("V", "sup", (0, 1, 2), (1.0, 1.0, 1.0), name="sup3")
        out = approximate(f, X, p, eps)
        assert out.met and out.final.residual * eps < eps

    def test_cap_raises_with_best_outcome(self):
        rng = np.random.default_rng(32)
        X = DiscreteSpace(tuple((f"a{i}", 1.0) for i in range(6)))
        space = CoordSpace("V", 1)
        values = {f"a{i}": [[float(rng.normal()), 0.0]] for i in range(6)}
        f = build_integrand("atom-table", {"values": values}, space, X)
        p = Seminorm("V", "sup", (0,), (1.0,), name="abs")
        with pytest.raises(CapReachedError) as err:
            approximate(f, X, p, 1e-9, caps=Caps(max_iter=2))
        assert err.value.best is not None and not err.value.best.met


class TestBochnerIntegrate:
    def test_constant_on_probability_space(self):
        f, X, _ = _constant_problem()
        res = bochner_integrate(f, X, FAM2)
        assert res.status == "converged"
        assert np.array_equal(res.integral.payload, np.asarray([1.0, 2.0j]))
        cert = res.certificates[0]
        assert cert.lhs == pytest.approx(cert.rhs, abs=1e-12) and cert.passed

    def test_cancellation_strict_certificate_gap(self):
        f, X, _ = _cancellation_problem()
        res = bochner_integrate(f, X, FAM2)
        assert res.integral.is_zero()
        cert = res.certificates[0]
        assert cert.lhs == 0.0 and cert.rhs == pytest.approx(2.0) and cert.passed

    def test_circle_closed_form(self):
        X = IntervalSpace(0.0, math.pi, 4)
        space = CoordSpace("V", 2)
        f = build_integrand("circle", {}, space, X)
        res = bochner_integrate(f, X, FAM2, tol=1e-6)
        assert res.status == "converged"
        assert abs(res.integral.payload[0]) < 1e-6
        assert abs(res.integral.payload[1] - 2.0) < 1e-6

    def test_oracle_equivalence_exact_on_discrete(self):
        for seed in range(10):
            problem = parse_problem(random_discrete_doc(seed))
            res = bochner_integrate(
                problem.integrand, problem.measure, problem.family, problem.tol, problem.caps
            )
            ref = oracle_integrate(problem.integrand, problem.measure)
            assert res.status == "converged"
            for p in problem.family.members:
                assert eval_seminorm(p, res.integral.sub(ref)) == 0.0

    def test_cauchy_trace_rows(self):
        f, X, _ = _constant_problem()
        fam = SeminormFamily("V", (Seminorm("V", "sup", (0,), (1.0,), name="p1"), SUP2))
        res = bochner_integrate(f, X, fam)
        assert len(res.cauchy_trace) == 2
        row = res.cauchy_trace[0]
        assert row["cauchy_ok"] and row["increment"] < 1e-6

    def test_null_set_independence(self):
        space = CoordSpace("V", 2)
        base = {"a": [[1.0, 0.5], [0.0, 2.0]], "z": [[0.0, 0.0], [0.0, 0.0]]}
        wild = {"a": [[1.0, 0.5], [0.0, 2.0]], "z": [[9e9, -4e6], [123.0, 5e8]]}
        X = DiscreteSpace((("a", 1.0), ("z", 0.0)))
        r1 = bochner_integrate(build_integrand("atom-table", {"values": base}, space, X), X, FAM2)
        r2 = bochner_integrate(build_integrand("atom-table", {"values": wild}, space, X), X, FAM2)
        assert np.array_equal(r1.integral.payload, r2.integral.payload)
        for c1, c2 in zip(r1.certificates, r2.certificates):
            assert c1.lhs == c2.lhs and c1.rhs == c2.rhs


class TestCertify:
    def test_constant_equality_within_tol(self):
        f, X, _ = _constant_problem()
        res = bochner_integrate(f, X, FAM2)
        rep = certify(res, f, X, FAM2)
        assert rep["pass"] and all(r["pass"] for r in rep["rows"])

    def test_cancellation_strict_inequality_passes(self):
        f, X, _ = _cancellation_problem()
        res = bochner_integrate(f, X, FAM2)
        rep = certify(res, f, X, FAM2)
        assert rep["pass"]
        assert rep["rows"][0]["lhs"] < rep["rows"][0]["rhs"]

    @pytest.mark.parametrize("seed", range(15))
    def test_randomized_scenarios(self, seed):
        problem = parse_problem(random_discrete_doc(1000 + seed, max_atoms=10, max_seminorms=3))
        res = bochner_integrate(
            problem.integrand, problem.measure, problem.family, problem.tol, problem.caps
        )
        rep = certify(res, problem.integrand, problem.measure, problem.family, problem.tol)
        assert rep["pass"]


class TestPushforward:
    def test_identity_map(self):
        f, X, space = _constant_problem()
        T = LinearMap(
            "id", space, CoordSpace("W", 2), "matrix",
            matrix=((1.0, 0.0), (0.0, 1.0)),
            witness={"wsup": SUP2},
        )
        fam_w = SeminormFamily("W", (Seminorm("W", "sup", (0, 1), (1.0, 1.0), name="wsup"),))
        rep = pushforward_check(T, f, X, FAM2, fam_w)
        assert rep["pass"] and all(r["gap"] < 1e-6 for r in rep["rows"])

    def test_projection_on_cancellation(self):
        f, X, space = _cancellation_problem()
        T = LinearMap(
            "pi0", space, CoordSpace("W", 1), "projection", indices=(0,),
            witness={"abs": SUP2},
        )
        fam_w = SeminormFamily("W", (Seminorm("W", "sup", (0,), (1.0,), name="abs"),))
        rep = pushforward_check(T, f, X, FAM2, fam_w)
        assert rep["pass"]

    def test_missing_witness_rejected(self):
        from lcx.errors import SpaceMismatchError

        f, X, space = _constant_problem()
        T = LinearMap("pi0", space, CoordSpace("W", 1), "projection", indices=(0,))
        fam_w = SeminormFamily("W", (Seminorm("W", "sup", (0,), (1.0,), name="abs"),))
        with pytest.raises(SpaceMismatchError):
            pushforward_check(T, f, X, FAM2, fam_w)


class TestFunctionalCommutation:
    def test_weighted_functional_on_constant(self):
        f, X, space = _constant_problem()
        res = bochner_integrate(f, X, FAM2)
        alpha = LinearMap("a", space, SCALAR_SPACE, "integrate-weights", coeffs=(1.0, -2.0j))
        rep = functional_commutation_check([alpha], f, X, res.integral)
        assert rep["pass"] and rep["rows"][0]["gap"] < 1e-9


class TestConvexCombination:
    def test_two_half_pieces(self):
        X = DiscreteSpace((("a", 0.5), ("b", 0.5)))
        s = SimpleFn(
            "V", 1,
            (
                (MeasurableSet("atoms", (0,)), Vector("V", [1.0])),
                (MeasurableSet("atoms", (1,)), Vector("V", [2.0])),
            ),
        )
        rep = convex_combination_check(s, X)
        assert rep["applicable"] and rep["pass"] and rep["coefficient_sum"] == 1.0

    def test_single_piece_covering_x(self):
        X = DiscreteSpace((("a", 1.0),))
        s = SimpleFn("V", 1, ((MeasurableSet("atoms", (0,)), Vector("V", [3.0])),))
        rep = convex_combination_check(s, X)
        assert rep["applicable"] and rep["pass"] and rep["coefficient_sum"] == 1.0

    def test_non_probability_mass_inapplicable(self):
        X = DiscreteSpace((("a", 2.0),))
        s = SimpleFn("V", 1, ((MeasurableSet("atoms", (0,)), Vector("V", [1.0])),))
        rep = convex_combination_check(s, X)
        assert not rep["applicable"]

    def test_uncovered_mass_inapplicable(self):
        X = DiscreteSpace((("a", 0.5), ("b", 0.5)))
        s = SimpleFn("V", 1, ((MeasurableSet("atoms", (0,)), Vector("V", [1.0])),))
        rep = convex_combination_check(s, X)
        assert not rep["applicable"] and "uncovered" in rep["reason"]

    def test_engine_steps_on_probability_space(self):
        f, X, _ = _constant_problem()
        res = bochner_integrate(f, X, FAM2)
        for check in res.convex_checks:
            assert check["applicable"] and check["pass"]


class TestCauchyEstimate:
    @pytest.mark.parametrize("seed", range(20))
    def test_random_simple_pairs(self, seed):
        problem = parse_problem(random_discrete_doc(2000 + seed))
        X, fam = problem.measure, problem.family
        s, t = random_simple_pair(problem, np.random.default_rng(seed))
        diff = subtract_simple(s, t, X)
        for k in range(1, len(fam) + 1):
            q = fam.chain(k)
            lhs = eval_seminorm(q, integrate_simple(s, X).sub(integrate_simple(t, X)))
            rhs = integrate_seminorm_simple(q, diff, X)
            assert lhs <= rhs + 1e-10
