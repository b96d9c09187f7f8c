import numpy as np
import pytest

from lcx.engine import build_level_sets, cover_image, disjointify
from lcx.integrands import build_integrand
from lcx.measures import DiscreteSpace, MeasurableSet, measure_of
from lcx.spaces import CoordSpace, Seminorm


def _line_space(points):
    """Discrete space with unit weights whose integrand is f(x) = x in C^1."""
    X = DiscreteSpace(tuple((f"a{i}", 1.0) for i in range(len(points))))
    space = CoordSpace("V", 1)
    values = {f"a{i}": [[float(p), 0.0]] for i, p in enumerate(points)}
    f = build_integrand("atom-table", {"values": values}, space, X)
    return X, space, f


ABS = Seminorm("V", "sup", (0,), (1.0,), name="abs")


class TestCoverImage:
    def test_constant_integrand_single_center(self):
        X = DiscreteSpace((("a", 1.0), ("b", 1.0), ("c", 2.0)))
        space = CoordSpace("V", 2)
        f = build_integrand("constant", {"value": [[1.0, 0.0], [0.0, 1.0]]}, space, X)
        p = Seminorm("V", "sup", (0, 1), (1.0, 1.0), name="sup")
        net = cover_image(f, X, p, 4)
        assert net.n_centers == 1

    def test_greedy_order_on_three_points(self):
        # sweep order (0, 0.5, 1) at radius 1: 0 enters, 0.5 is within
        # distance 0.5 < 1 of it, 1.0 is at distance exactly 1 so it enters
        X, space, f = _line_space([0.0, 0.5, 1.0])
        net = cover_image(f, X, ABS, 1)
        assert [c[0].real for c in net.center_values] == [0.0, 1.0]
        # exhaustive: every sampled value within < 1 of some center
        for v in [0.0, 0.5, 1.0]:
            assert min(abs(v - c[0].real) for c in net.center_values) < 1.0

    def test_all_samples_covered_strictly(self):
        rng = np.random.default_rng(21)
        X, space, f = _line_space(list(rng.normal(size=12)))
        for n in (1, 2, 5):
            net = cover_image(f, X, ABS, n)
            vals = f.eval_batch(X.positive_indices())
            for v in vals:
                dists = np.abs(net.center_values[:, 0] - v[0])
                assert dists.min() < 1.0 / n

    def test_doubling_n_never_decreases_centers(self):
        rng = np.random.default_rng(22)
        X, space, f = _line_space(list(rng.normal(size=15)))
        for n in (1, 2, 4, 8):
            assert cover_image(f, X, ABS, 2 * n).n_centers >= cover_image(f, X, ABS, n).n_centers

    def test_centers_are_image_values_with_witnesses(self):
        rng = np.random.default_rng(23)
        pts = list(rng.normal(size=9))
        X, space, f = _line_space(pts)
        net = cover_image(f, X, ABS, 3)
        vals = f.eval_batch(np.asarray(net.witness))
        assert np.array_equal(vals, net.center_values)

    def test_null_atoms_not_sampled(self):
        X = DiscreteSpace((("a", 1.0), ("z", 0.0)))
        space = CoordSpace("V", 1)
        values = {"a": [[0.0, 0.0]], "z": [[100.0, 0.0]]}
        f = build_integrand("atom-table", {"values": values}, space, X)
        net = cover_image(f, X, ABS, 10)
        assert net.n_centers == 1 and net.center_values[0, 0] == 0.0


class TestBuildLevelSets:
    def test_two_atom_example(self):
        X, space, f = _line_space([0.05, 1.0])
        centers = np.asarray([[1.0 + 0.0j]])
        a_sets = build_level_sets(f, X, centers, ABS, 0.1)
        assert a_sets[0].members == (1,)

    def test_delta_above_sup_gives_empty_sets(self):
        X, space, f = _line_space([0.3, -0.8, 0.5])
        centers = np.asarray([[0.3 + 0.0j], [-0.8 + 0.0j]])
        a_sets = build_level_sets(f, X, centers, ABS, 5.0)
        assert all(A.is_empty() for A in a_sets)

    def test_constant_at_center_fills_x_p(self):
        X = DiscreteSpace((("a", 1.0), ("b", 2.0), ("z", 0.0)))
        space = CoordSpace("V", 1)
        values = {k: [[3.0, 0.0]] for k in ("a", "b", "z")}
        f = build_integrand("atom-table", {"values": values}, space, X)
        a_sets = build_level_sets(f, X, np.asarray([[3.0 + 0.0j]]), ABS, 0.5)
        assert a_sets[0].members == (0, 1)  # null atom excluded


class TestDisjointify:
    def test_definition_example(self):
        A1 = MeasurableSet("atoms", (0, 1))
        A2 = MeasurableSet("atoms", (1, 2))
        D = disjointify([A1, A2])
        assert D[0].members == (0, 1) and D[1].members == (2,)

    def test_already_disjoint_unchanged(self):
        A1 = MeasurableSet("atoms", (0,))
        A2 = MeasurableSet("atoms", (2, 3))
        D = disjointify([A1, A2])
        assert [d.members for d in D] == [(0,), (2, 3)]

    def test_union_preserved_exactly(self, three_atoms):
        rng = np.random.default_rng(24)
        for _ in range(25):
            a_sets = [
                MeasurableSet(
                    "atoms",
                    tuple(int(i) for i in rng.choice(3, size=rng.integers(0, 4), replace=False)),
                )
                for _ in range(4)
            ]
            d_sets = disjointify(a_sets)
            union_a = set().union(*(A.members for A in a_sets))
            union_d = set().union(*(D.members for D in d_sets))
            assert union_a == union_d
            flat = [m for D in d_sets for m in D.members]
            assert len(flat) == len(set(flat))
            total_a = measure_of(three_atoms, MeasurableSet("atoms", tuple(union_a)))
            total_d = sum(measure_of(three_atoms, D) for D in d_sets)
            assert total_d == pytest.approx(total_a, abs=1e-15)

    def test_cells_aligned_across_levels(self):
        A1 = MeasurableSet("cells", (0,), 0)  # splits into (0, 1) at level 1
        A2 = MeasurableSet("cells", (1, 2), 1)
        D = disjointify([A1, A2])
        assert D[0].members == (0, 1) and D[1].members == (2,)
