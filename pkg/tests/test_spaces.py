import numpy as np
import pytest

from lcx.errors import NonFiniteValueError, SpaceMismatchError
from lcx.spaces import (
    CoordSpace,
    GridSpace,
    LinearMap,
    SCALAR_SPACE,
    Seminorm,
    SeminormFamily,
    Vector,
    apply_linear,
    eval_seminorm,
    max_seminorm,
    scale_seminorm,
)

from conftest import random_seminorm, random_vector


class TestEvalSeminorm:
    def test_sup_of_moduli(self, sup2):
        v = Vector("V", [3.0, -4.0j])
        assert eval_seminorm(sup2, v) == 4.0

    def test_zero_vector(self, sup2, l1_2):
        z = Vector("V", [0.0, 0.0])
        assert eval_seminorm(sup2, z) == 0.0
        assert eval_seminorm(l1_2, z) == 0.0

    def test_absolute_homogeneity_doubling(self, dim2):
        rng = np.random.default_rng(1)
        for i in range(20):
            p = random_seminorm(dim2, rng)
            v = random_vector(dim2, rng)
            c = eval_seminorm(p, v)
            assert eval_seminorm(p, v.scale(2.0)) == pytest.approx(2.0 * c, rel=1e-12)

    def test_space_mismatch(self, sup2):
        with pytest.raises(SpaceMismatchError):
            eval_seminorm(sup2, Vector("W", [1.0, 2.0]))


class TestSeminormAxioms:
    @pytest.mark.parametrize("seed", range(8))
    def test_homogeneity_and_subadditivity(self, dim2, seed):
        rng = np.random.default_rng(seed)
        p = random_seminorm(dim2, rng)
        q = max_seminorm(p, random_seminorm(dim2, rng, name="q"))
        for norm in (p, q):
            for _ in range(25):
                u, v = random_vector(dim2, rng), random_vector(dim2, rng)
                lam = complex(*rng.normal(size=2))
                pu, pv = eval_seminorm(norm, u), eval_seminorm(norm, v)
                assert pu >= 0.0
                assert eval_seminorm(norm, u.scale(lam)) == pytest.approx(abs(lam) * pu, rel=1e-12, abs=1e-300)
                assert eval_seminorm(norm, u.add(v)) <= pu + pv + 1e-12 * (pu + pv)


class TestMaxSeminorm:
    def test_coordinate_example(self):
        p = Seminorm("V", "sup", (0,), (1.0,), name="p")
        q = Seminorm("V", "sup", (1,), (1.0,), name="q")
        r = max_seminorm(p, q)
        assert eval_seminorm(r, Vector("V", [1.0, 3.0])) == 3.0

    def test_idempotence_on_random_vectors(self, dim2, sup2):
        rng = np.random.default_rng(2)
        r = max_seminorm(sup2, sup2)
        for _ in range(100):
            v = random_vector(dim2, rng)
            assert eval_seminorm(r, v) == eval_seminorm(sup2, v)

    def test_dominates_both(self, dim2):
        rng = np.random.default_rng(3)
        p = random_seminorm(dim2, rng, "p")
        q = random_seminorm(dim2, rng, "q")
        r = max_seminorm(p, q)
        for _ in range(50):
            v = random_vector(dim2, rng)
            rv = eval_seminorm(r, v)
            assert rv >= eval_seminorm(p, v) and rv >= eval_seminorm(q, v)

    def test_space_mismatch(self, sup2):
        other = Seminorm("W", "sup", (0,), (1.0,), name="w")
        with pytest.raises(SpaceMismatchError):
            max_seminorm(sup2, other)


class TestScaleSeminorm:
    def test_doubling(self, dim2):
        rng = np.random.default_rng(4)
        p = random_seminorm(dim2, rng)
        for _ in range(20):
            v = random_vector(dim2, rng)
            assert eval_seminorm(scale_seminorm(p, 2.0), v) == pytest.approx(
                2.0 * eval_seminorm(p, v), rel=1e-12
            )

    def test_identity(self, dim2, sup2):
        rng = np.random.default_rng(5)
        for _ in range(20):
            v = random_vector(dim2, rng)
            assert eval_seminorm(scale_seminorm(sup2, 1.0), v) == eval_seminorm(sup2, v)

    def test_inverse_round_trip(self, dim2):
        rng = np.random.default_rng(6)
        p = random_seminorm(dim2, rng)
        back = scale_seminorm(scale_seminorm(p, 3.7), 1.0 / 3.7)
        for _ in range(20):
            v = random_vector(dim2, rng)
            assert eval_seminorm(back, v) == pytest.approx(eval_seminorm(p, v), rel=1e-12)

    def test_rejects_nonpositive(self, sup2):
        with pytest.raises(SpaceMismatchError):
            scale_seminorm(sup2, 0.0)
        with pytest.raises(SpaceMismatchError):
            scale_seminorm(sup2, -1.0)


class TestFamily:
    def test_chain_monotone(self, dim2):
        rng = np.random.default_rng(7)
        members = tuple(random_seminorm(dim2, rng, f"p{i}") for i in range(4))
        fam = SeminormFamily("V", members)
        for _ in range(50):
            v = random_vector(dim2, rng)
            vals = [eval_seminorm(fam.chain(k), v) for k in range(1, 5)]
            assert all(vals[i] <= vals[i + 1] + 1e-15 for i in range(3))

    def test_hausdorff_separation(self, family2, dim2):
        assert family2.separates_points()
        rng = np.random.default_rng(8)
        top = family2.chain_top()
        for _ in range(50):
            v = random_vector(dim2, rng)
            if eval_seminorm(top, v) == 0.0:
                assert v.is_zero()
            else:
                assert not v.is_zero()

    def test_uncovered_coordinate_detected(self):
        fam = SeminormFamily("V", (Seminorm("V", "sup", (1,), (1.0,), name="p"),))
        assert not fam.separates_points()


class TestVector:
    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteValueError):
            Vector("V", [1.0, float("nan")])
        with pytest.raises(NonFiniteValueError):
            Vector("V", [complex(1.0, float("inf")), 0.0])

    def test_payload_shape_enforced(self, dim2):
        with pytest.raises(SpaceMismatchError):
            Vector.of(dim2, [1.0, 2.0, 3.0])

    def test_immutable_payload(self, dim2):
        v = Vector.of(dim2, [1.0, 2.0])
        with pytest.raises(ValueError):
            v.payload[0] = 5.0


class TestLinearMap:
    def test_projection_example(self, dim2):
        T = LinearMap("pi1", dim2, CoordSpace("W", 1), "projection", indices=(0,))
        out = apply_linear(T, Vector.of(dim2, [5.0, 7.0]))
        assert out.payload[0] == 5.0 and out.space_id == "W"

    def test_maps_zero_to_zero(self, dim2):
        T = LinearMap(
            "M", dim2, CoordSpace("W", 2), "matrix",
            matrix=((1.0, 2.0), (3.0, 4.0j)),
        )
        assert apply_linear(T, Vector.of(dim2, [0.0, 0.0])).is_zero()

    def test_additivity_on_random_vectors(self, dim2):
        rng = np.random.default_rng(9)
        T = LinearMap(
            "M", dim2, CoordSpace("W", 2), "matrix",
            matrix=((1.0, 2.0j), (0.5, -1.0)),
        )
        for _ in range(30):
            u, v = random_vector(dim2, rng), random_vector(dim2, rng)
            lhs = apply_linear(T, u.add(v)).payload
            rhs = apply_linear(T, u).payload + apply_linear(T, v).payload
            assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-14)

    def test_point_eval_interpolates(self):
        g = GridSpace("F", 1.0, 3)  # grid -1, 0, 1
        T = LinearMap("ev", g, SCALAR_SPACE, "point-eval", point=0.5)
        v = Vector.of(g, [0.0, 2.0, 4.0])
        assert T.as_scalar(v) == pytest.approx(3.0)

    def test_grid_restrict(self):
        g = GridSpace("F", 1.0, 5)
        T = LinearMap("r", g, CoordSpace("W", 2), "grid-restrict", indices=(0, 4))
        out = apply_linear(T, Vector.of(g, [1, 2, 3, 4, 5]))
        assert list(out.payload) == [1, 5]

    def test_integrate_weights_functional(self, dim2):
        alpha = LinearMap("a", dim2, SCALAR_SPACE, "integrate-weights", coeffs=(1.0, 1.0j))
        assert alpha.as_scalar(Vector.of(dim2, [2.0, 3.0])) == 2.0 + 3.0j

    def test_source_space_enforced(self, dim2):
        T = LinearMap("pi1", dim2, CoordSpace("W", 1), "projection", indices=(0,))
        with pytest.raises(SpaceMismatchError):
            apply_linear(T, Vector("U", [1.0, 2.0]))

    def test_witness_domination(self, dim2, sup2):
        rng = np.random.default_rng(10)
        w_abs = Seminorm("W", "sup", (0,), (1.0,), name="abs")
        T = LinearMap(
            "pi0", dim2, CoordSpace("W", 1), "projection", indices=(0,),
            witness={"abs": sup2},
        )
        for _ in range(50):
            v = random_vector(dim2, rng)
            assert eval_seminorm(w_abs, apply_linear(T, v)) <= eval_seminorm(T.witness["abs"], v) + 1e-15
