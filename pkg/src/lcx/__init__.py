"""Certified vector-valued integration in concrete locally convex spaces.

The engine builds explicit simple-function approximants of an integrand
f: X -> V, integrates them, and certifies per-seminorm that
p(integral of f) <= integral of p(f), alongside functional- and
operator-commutation checks and an independent brute-force oracle.
"""

from .engine import (
    ApproxOutcome,
    ApproxStep,
    Caps,
    Certificate,
    IntegralResult,
    approximate,
    bochner_integrate,
    build_approximant,
    build_level_sets,
    certify,
    convex_combination_check,
    cover_image,
    disjointify,
    functional_commutation_check,
    is_essentially_bounded,
    is_integrally_bounded,
    pushforward_check,
)
from .errors import (
    CapReachedError,
    ConstructionError,
    LcxError,
    NonFiniteValueError,
    SpaceMismatchError,
    SpecError,
)
from .integrands import IntegrandFn, build_integrand, compose_integrand
from .measures import (
    DiscreteSpace,
    IntervalSpace,
    MeasurableSet,
    ScalarFn,
    integrate_scalar,
    measure_of,
    refine_partition,
)
from .oracle import oracle_integrate
from .scenarios import list_scenarios, load_scenario, scenario_names
from .schema import Problem, parse_problem
from .simple import SimpleFn, combine_simple, eval_simple, integrate_simple, subtract_simple
from .spaces import (
    SCALAR_SPACE,
    CoordSpace,
    GridSpace,
    LinearMap,
    Seminorm,
    SeminormFamily,
    Vector,
    apply_linear,
    eval_seminorm,
    max_seminorm,
    scale_seminorm,
)

__version__ = "0.1.0"
