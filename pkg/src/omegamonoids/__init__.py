"""Exact computations with omega-monoids: increasingly enumerable additive submonoids of the reals."""

from .classify import (
    Classification,
    ScaledNumericalSemigroup,
    TemperedMonoid,
    classify,
    commensurable_pair,
    verify_classification,
)
from .errors import (
    BoundTooLargeForBudget,
    CeilingExceeded,
    IncomparableKinds,
    InsufficientElements,
    InvalidProportions,
    MonoidError,
    NotClosed,
    NotCoprime,
    NotNormalized,
)
from .exact import PHI, LogLin, QuadSurd, compare, floor, log2, parse, sqrt, to_decimal
from .monoid import (
    DECIMAL,
    QUARTERS,
    ElementList,
    FiniteGenerators,
    Footprint,
    GoldenFractal,
    Harmonic,
    Logarithmic,
    Period,
    Pythagorean,
    RadixFractal,
    enumerate_monoid,
    footprint,
    golden_fractal,
    granularity,
    minimal_generating_set,
    periods,
    product_compatible_check,
    radix_fractal,
    subdivide,
)
from .numsgp import GenusCountReport, NumericalSemigroup, from_generators, gcd_normalize, genus_count
from .temperament import (
    WELL_TEMPERED,
    EdoMap,
    Scale,
    edo_scale,
    export_scl,
    floor_relation_check,
    harmonic_floor,
    harmonic_semigroup,
    parse_scl,
    pythagorean_scale,
)

__version__ = "0.1.0"
