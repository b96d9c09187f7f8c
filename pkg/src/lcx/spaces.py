"""Concrete locally convex spaces: vectors, seminorm families, linear maps.

Two kinds of space are representable: finite coordinate spaces over the
complex scalars, and spaces of sampled continuous functions on a symmetric
interval [-K, K] (uniform grid, linear interpolation between samples).
Topologies are carried by finite generating families of seminorms; the
directed structure of the family is realized by the chain of running
pointwise maxima q_n = max(p_1, ..., p_n).

All values are immutable after construction and every operation is pure.
Reductions run over fixed ascending index order so results are reproducible
bit-for-bit across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteValueError, SpaceMismatchError

__all__ = [
    "CoordSpace",
    "GridSpace",
    "SCALAR_SPACE",
    "Vector",
    "Seminorm",
    "SeminormFamily",
    "LinearMap",
    "eval_seminorm",
    "max_seminorm",
    "scale_seminorm",
    "apply_linear",
]


@dataclass(frozen=True)
class CoordSpace:
    """Finite coordinate space C^dim."""

    space_id: str
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise SpaceMismatchError(f"space {self.space_id!r}: dim must be >= 1")

    @property
    def payload_len(self) -> int:
        return self.dim


@dataclass(frozen=True)
class GridSpace:
    """Sampled functions on [-half_width, half_width].

    Payloads hold complex samples at ``num_points`` uniformly spaced grid
    points (endpoints included); values between grid points are defined by
    linear interpolation.
    """

    space_id: str
    half_width: float
    num_points: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise SpaceMismatchError(f"space {self.space_id!r}: half_width must be > 0")
        if self.num_points < 2:
            raise SpaceMismatchError(f"space {self.space_id!r}: num_points must be >= 2")

    @property
    def payload_len(self) -> int:
        return self.num_points

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / (self.num_points - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.num_points)


Space = CoordSpace | GridSpace

#: One-dimensional coordinate space standing in for the scalar field.
SCALAR_SPACE = CoordSpace("C", 1)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Vector:
    """A point of a concrete space: complex payload owned by ``space_id``."""

    space_id: str
    payload: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "payload", _freeze(np.atleast_1d(self.payload)))
        if not np.all(np.isfinite(self.payload)):
            raise NonFiniteValueError(f"vector in {self.space_id!r} has non-finite entries")

    @staticmethod
    def of(space: Space, payload) -> "Vector":
        v = Vector(space.space_id, np.asarray(payload))
        if v.payload.shape != (space.payload_len,):
            raise SpaceMismatchError(
                f"payload length {v.payload.shape} does not match space "
                f"{space.space_id!r} (expected {space.payload_len})"
            )
        return v

    def add(self, other: "Vector") -> "Vector":
        self._same_space(other)
        return Vector(self.space_id, self.payload + other.payload)

    def sub(self, other: "Vector") -> "Vector":
        self._same_space(other)
        return Vector(self.space_id, self.payload - other.payload)

    def scale(self, factor: complex) -> "Vector":
        return Vector(self.space_id, factor * self.payload)

    def is_zero(self) -> bool:
        return bool(np.all(self.payload == 0))

    def _same_space(self, other: "Vector"):
        if self.space_id != other.space_id or self.payload.shape != other.payload.shape:
            raise SpaceMismatchError(
                f"vectors live in different spaces: {self.space_id!r} vs {other.space_id!r}"
            )


def zero_vector(space: Space) -> Vector:
    return Vector(space.space_id, np.zeros(space.payload_len, dtype=np.complex128))


@dataclass(frozen=True)
class Seminorm:
    """A continuous seminorm on one concrete space.

    Kinds:
      * ``sup``        -- max over an index subset of weight * |entry|
      * ``l1``         -- sum over an index subset of weight * |entry|
      * ``functional`` -- absolute value of a fixed linear functional
      * ``max``        -- pointwise maximum of child seminorms (directedness)

    Weights are nonnegative with at least one positive entry; indices are
    stored sorted ascending so reductions are order-fixed.
    """

    space_id: str
    kind: str
    indices: tuple[int, ...] = ()
    weights: tuple[float, ...] = ()
    coeffs: tuple[complex, ...] = ()
    children: tuple["Seminorm", ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.kind in ("sup", "l1"):
            if len(self.indices) != len(self.weights) or not self.indices:
                raise SpaceMismatchError(f"seminorm {self.name!r}: indices/weights mismatch")
            order = np.argsort(np.asarray(self.indices, dtype=int), kind="stable")
            idx = tuple(int(self.indices[i]) for i in order)
            wts = tuple(float(self.weights[i]) for i in order)
            object.__setattr__(self, "indices", idx)
            object.__setattr__(self, "weights", wts)
            if any(w < 0 or not np.isfinite(w) for w in self.weights):
                raise SpaceMismatchError(f"seminorm {self.name!r}: weights must be finite and >= 0")
            if not any(w > 0 for w in self.weights):
                raise SpaceMismatchError(f"seminorm {self.name!r}: needs a positive weight")
        elif self.kind == "functional":
            if not self.coeffs:
                raise SpaceMismatchError(f"seminorm {self.name!r}: functional needs coefficients")
            object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        elif self.kind == "max":
            if not self.children:
                raise SpaceMismatchError(f"seminorm {self.name!r}: max needs children")
            if any(c.space_id != self.space_id for c in self.children):
                raise SpaceMismatchError(f"seminorm {self.name!r}: children on different spaces")
        else:
            raise SpaceMismatchError(f"seminorm {self.name!r}: unknown kind {self.kind!r}")

    def eval_batch(self, payloads: np.ndarray) -> np.ndarray:
        """Evaluate on a (n, d) stack of payloads; returns (n,) nonnegative reals."""
        payloads = np.atleast_2d(payloads)
        if self.kind == "sup":
            idx = np.asarray(self.indices, dtype=int)
            w = np.asarray(self.weights)
            return np.max(np.abs(payloads[:, idx]) * w, axis=1)
        if self.kind == "l1":
            idx = np.asarray(self.indices, dtype=int)
            w = np.asarray(self.weights)
            return np.sum(np.abs(payloads[:, idx]) * w, axis=1)
        if self.kind == "functional":
            a = np.asarray(self.coeffs, dtype=np.complex128)
            return np.abs(payloads @ a)
        # max: fixed child order
        vals = self.children[0].eval_batch(payloads)
        for child in self.children[1:]:
            vals = np.maximum(vals, child.eval_batch(payloads))
        return vals

    def __call__(self, v: Vector) -> float:
        return eval_seminorm(self, v)

    def scaled(self, factor: float) -> "Seminorm":
        return scale_seminorm(self, factor)

    def projection_coords(self, payloads: np.ndarray) -> np.ndarray:
        """Two real coordinates per payload whose sup-distance lower-bounds
        the seminorm distance; used by proximity grids for exact pruning."""
        payloads = np.atleast_2d(payloads)
        if self.kind in ("sup", "l1"):
            j = int(np.argmax(np.asarray(self.weights)))
            col = payloads[:, self.indices[j]] * self.weights[j]
            return np.column_stack([col.real, col.imag])
        if self.kind == "functional":
            t = payloads @ np.asarray(self.coeffs, dtype=np.complex128)
            return np.column_stack([t.real, t.imag])
        return self.children[0].projection_coords(payloads)


def eval_seminorm(p: Seminorm, v: Vector) -> float:
    """p(v) >= 0; exact on the stored representation."""
    if p.space_id != v.space_id:
        raise SpaceMismatchError(f"seminorm on {p.space_id!r} applied to vector in {v.space_id!r}")
    return float(p.eval_batch(v.payload[None, :])[0])


def max_seminorm(p: Seminorm, q: Seminorm) -> Seminorm:
    """Pointwise maximum; dominates both arguments in the unit-ball order."""
    if p.space_id != q.space_id:
        raise SpaceMismatchError("max of seminorms on different spaces")
    name = f"max({p.name},{q.name})" if p.name and q.name else ""
    return Seminorm(p.space_id, "max", children=(p, q), name=name)


def scale_seminorm(p: Seminorm, factor: float) -> Seminorm:
    """factor * p for factor > 0; turns a residual-below-1 guarantee at the
    scaled seminorm into a residual-below-1/factor guarantee at p."""
    if not (factor > 0) or not np.isfinite(factor):
        raise SpaceMismatchError("scale factor must be positive and finite")
    if p.kind in ("sup", "l1"):
        return Seminorm(
            p.space_id, p.kind, p.indices, tuple(w * factor for w in p.weights), name=p.name
        )
    if p.kind == "functional":
        return Seminorm(p.space_id, "functional", coeffs=tuple(c * factor for c in p.coeffs), name=p.name)
    return Seminorm(
        p.space_id, "max", children=tuple(scale_seminorm(c, factor) for c in p.children), name=p.name
    )


@dataclass(frozen=True)
class SeminormFamily:
    """Ordered finite generating family p_1..p_m with its cofinal max-chain."""

    space_id: str
    members: tuple[Seminorm, ...]

    def __post_init__(self):
        if not self.members:
            raise SpaceMismatchError("seminorm family must be nonempty")
        if any(p.space_id != self.space_id for p in self.members):
            raise SpaceMismatchError("family members on different spaces")

    def __len__(self) -> int:
        return len(self.members)

    def chain(self, n: int) -> Seminorm:
        """q_n = pointwise max of p_1..p_n (1-based); monotone in n."""
        if not 1 <= n <= len(self.members):
            raise SpaceMismatchError(f"chain index {n} out of range 1..{len(self.members)}")
        if n == 1:
            return self.members[0]
        return Seminorm(
            self.space_id, "max", children=self.members[:n], name=f"q{n}"
        )

    def chain_top(self) -> Seminorm:
        return self.chain(len(self.members))

    def separates_points(self) -> bool:
        """True when the family provably separates payload entries: every
        index is covered by a positive sup/l1 weight.  Functional members
        are ignored (they cannot establish coverage on their own)."""
        covered: set[int] = set()
        dim = 0

        def visit(p: Seminorm):
            nonlocal dim
            if p.kind in ("sup", "l1"):
                dim = max(dim, max(p.indices) + 1)
                covered.update(i for i, w in zip(p.indices, p.weights) if w > 0)
            elif p.kind == "max":
                for c in p.children:
                    visit(c)

        for p in self.members:
            visit(p)
        return dim > 0 and covered.issuperset(range(dim))


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Continuous linear map between concrete spaces.

    ``action`` selects the rule; the relevant parameter fields are set per
    kind.  ``witness`` names, for each target seminorm, a source seminorm
    dominating it: q(T(v)) <= witness[q.name](v) for all representable v.
    Keeping the witness as data makes the pushforward argument checkable.
    """

    name: str
    source: Space
    target: Space
    action: str
    indices: tuple[int, ...] = ()
    matrix: tuple[tuple[complex, ...], ...] = ()
    point: float = 0.0
    coeffs: tuple[complex, ...] = ()
    witness: dict[str, Seminorm] = field(default_factory=dict)

    _ACTIONS = ("projection", "grid-restrict", "point-eval", "matrix", "integrate-weights")

    def __post_init__(self):
        if self.action not in self._ACTIONS:
            raise SpaceMismatchError(f"map {self.name!r}: unknown action {self.action!r}")

    def apply_batch(self, payloads: np.ndarray) -> np.ndarray:
        """Apply to a (n, d_source) stack; returns (n, d_target)."""
        payloads = np.atleast_2d(payloads)
        if payloads.shape[1] != self.source.payload_len:
            raise SpaceMismatchError(f"map {self.name!r}: payload not in source space")
        if self.action in ("projection", "grid-restrict"):
            return payloads[:, np.asarray(self.indices, dtype=int)]
        if self.action == "matrix":
            m = np.asarray(self.matrix, dtype=np.complex128)
            return payloads @ m.T
        if self.action == "point-eval":
            grid = self.source.grid()
            x = float(self.point)
            if not (-self.source.half_width <= x <= self.source.half_width):
                raise SpaceMismatchError(f"map {self.name!r}: point outside the grid domain")
            j = min(int((x - grid[0]) / self.source.step), self.source.num_points - 2)
            t = (x - grid[j]) / self.source.step
            vals = (1.0 - t) * payloads[:, j] + t * payloads[:, j + 1]
            return vals[:, None]
        # integrate-weights
        a = np.asarray(self.coeffs, dtype=np.complex128)
        return (payloads @ a)[:, None]

    def is_functional(self) -> bool:
        return isinstance(self.target, CoordSpace) and self.target.dim == 1

    def as_scalar(self, v: Vector) -> complex:
        out = apply_linear(self, v)
        if not self.is_functional():
            raise SpaceMismatchError(f"map {self.name!r} is not scalar-valued")
        return complex(out.payload[0])


def apply_linear(T: LinearMap, v: Vector) -> Vector:
    """T(v); additive and homogeneous on representable vectors."""
    if v.space_id != T.source.space_id:
        raise SpaceMismatchError(
            f"map {T.name!r} expects vectors in {T.source.space_id!r}, got {v.space_id!r}"
        )
    return Vector(T.target.space_id, T.apply_batch(v.payload[None, :])[0])
