"""Decide whether a finitely generated omega-monoid is a scaled numerical semigroup.

A finite generating set that is commensurable (all pairwise ratios rational)
generates ``lam * S`` for a numerical semigroup ``S``; otherwise the monoid
is tempered, i.e. consecutive elements get arbitrarily close.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Union

from .exact import (
    ExactReal,
    LogLin,
    QuadSurd,
    compare,
    div,
    exact,
    from_json,
    proportion,
    scalar_mul,
    sub,
    to_json,
)
from .errors import IncomparableKinds
from .monoid import FiniteGenerators, enumerate_monoid, footprint
from .numsgp import NumericalSemigroup, from_generators


@dataclass(frozen=True)
class ScaledNumericalSemigroup:
    lam: ExactReal
    semigroup: NumericalSemigroup

    def to_json(self) -> dict:
        return {"kind": "scaled", "lambda": to_json(self.lam), "semigroup": self.semigroup.to_json()}


@dataclass(frozen=True)
class TemperedMonoid:
    witness: tuple  # two generators with an irrational ratio

    def to_json(self) -> dict:
        return {"kind": "tempered", "witness": [to_json(x) for x in self.witness]}


Classification = Union[ScaledNumericalSemigroup, TemperedMonoid]


def classification_from_json(obj: dict) -> Classification:
    if obj["kind"] == "scaled":
        return ScaledNumericalSemigroup(from_json(obj["lambda"]), NumericalSemigroup.from_json(obj["semigroup"]))
    if obj["kind"] == "tempered":
        x, y = obj["witness"]
        return TemperedMonoid((from_json(x), from_json(y)))
    raise ValueError(f"unknown classification kind {obj['kind']!r}")


def commensurable_pair(x, y) -> bool:
    """Whether ``x / y`` is rational. Total: never raises for positive inputs."""
    x, y = exact(x), exact(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return True
    if isinstance(x, Fraction) or isinstance(y, Fraction):
        # an irrational over a rational, or the reverse
        return False
    if isinstance(x, QuadSurd) and isinstance(y, QuadSurd):
        return x.d == y.d and x.a * y.b == y.a * x.b
    if isinstance(x, LogLin) and isinstance(y, LogLin):
        return proportion(x, y) is not None
    # surd against log combination: linearly independent over the rationals
    return False


def classify(gens: Sequence) -> Classification:
    """Classify the monoid generated by ``gens``."""
    gens = [exact(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    if any(compare(g, 0) <= 0 for g in gens):
        raise ValueError("generators must be positive")
    gens.sort()
    g1 = gens[0]
    for g in gens[1:]:
        if not commensurable_pair(g, g1):
            return TemperedMonoid((g1, g))
    ratios = [div(g, g1) for g in gens]  # all rational now
    # scaling by lcm(denominators)/g1 makes every generator an integer
    scale = reduce(lambda a, b: a * b // math.gcd(a, b), (r.denominator for r in ratios), 1)
    ints = [int(r * scale) for r in ratios]
    d = reduce(math.gcd, ints)
    semigroup = from_generators([n // d for n in ints])
    return ScaledNumericalSemigroup(scalar_mul(Fraction(d, scale), g1), semigroup)


def _largest_multiple(bound, lam) -> int:
    """Largest ``n`` with ``n * lam <= bound``, using exact comparisons only."""
    n = max(0, int(float(bound) / float(lam)))
    while n > 0 and compare(scalar_mul(n, lam), bound) > 0:
        n -= 1
    while compare(scalar_mul(n + 1, lam), bound) <= 0:
        n += 1
    return n


def verify_classification(gens: Sequence, c: Classification, bound) -> bool:
    """Cross-check a classification against an explicit enumeration up to ``bound``.

    For the tempered case this is only a finite-prefix sanity signal.
    """
    bound = exact(bound)
    el = enumerate_monoid(FiniteGenerators(tuple(gens)), bound)
    if isinstance(c, ScaledNumericalSemigroup):
        top = _largest_multiple(bound, c.lam)
        expected = tuple(scalar_mul(n, c.lam) for n in c.semigroup.elements(top))
        return el.elements == expected
    x, y = c.witness
    if commensurable_pair(x, y):
        return False
    try:
        fp = [v for v in footprint(el).values if v != 0]
    except IncomparableKinds:
        fp = None  # a/a1 is not representable; only the gap test below applies
    if fp is not None and not any(not commensurable_pair(u, v) for i, u in enumerate(fp) for v in fp[i + 1 :]):
        return False
    half = div(bound, 2)
    low, high = None, None
    for a, b in zip(el.elements, el.elements[1:]):
        gap = sub(b, a)
        if compare(b, half) <= 0:
            low = gap if low is None or compare(gap, low) > 0 else low
        elif compare(a, half) >= 0:
            high = gap if high is None or compare(gap, high) > 0 else high
    return low is not None and high is not None and compare(high, low) < 0
