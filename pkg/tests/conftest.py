import pytest

from lcx.measures import DiscreteSpace, IntervalSpace
from lcx.spaces import CoordSpace, Seminorm, SeminormFamily, Vector


@pytest.fixture
def dim2():
    return CoordSpace("V", 2)


@pytest.fixture
def sup2():
    return Seminorm("V", "sup", (0, 1), (1.0, 1.0), name="sup")


@pytest.fixture
def l1_2():
    return Seminorm("V", "l1", (0, 1), (1.0, 1.0), name="l1")


@pytest.fixture
def family2(sup2, l1_2):
    return SeminormFamily("V", (sup2, l1_2))


@pytest.fixture
def three_atoms():
    return DiscreteSpace((("a", 0.5), ("b", 0.25), ("c", 0.25)))


@pytest.fixture
def unit_interval():
    return IntervalSpace(0.0, 1.0, 4)


def random_vector(space, rng) -> Vector:
    raw = rng.normal(size=(space.payload_len, 2))
    return Vector(space.space_id, raw[:, 0] + 1j * raw[:, 1])


def random_seminorm(space, rng, name="p") -> Seminorm:
    kind = rng.choice(["sup", "l1", "functional"])
    if kind == "functional":
        c = rng.normal(size=(space.payload_len, 2))
        return Seminorm(space.space_id, "functional", coeffs=tuple(c[:, 0] + 1j * c[:, 1]), name=name)
    k = int(rng.integers(1, space.payload_len + 1))
    idx = tuple(sorted(int(i) for i in rng.choice(space.payload_len, size=k, replace=False)))
    wts = tuple(float(w) for w in rng.uniform(0.1, 2.0, size=k))
    return Seminorm(space.space_id, str(kind), idx, wts, name=name)
