"""Omega-monoids: descriptors, bounded enumeration and structural queries.

An omega-monoid is an additive submonoid of the reals whose elements can be
listed as ``0 = a0 < a1 < a2 < ...``. Every query here works on a finite
prefix: :func:`enumerate_monoid` returns all elements up to an inclusive
bound, and the other functions operate on that :class:`ElementList`.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from sympy import integer_nthroot

from .errors import (
    BoundTooLargeForBudget,
    InsufficientElements,
    InvalidProportions,
    NotNormalized,
)
from .exact import (
    PHI,
    ExactReal,
    LogLin,
    add,
    compare,
    div,
    exact,
    floor,
    frac,
    from_json,
    log2,
    mul,
    sub,
    to_decimal,
    to_json,
)

logger = logging.getLogger(__name__)

DEFAULT_ELEMENT_CAP = 10**7


# --------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class FiniteGenerators:
    """Monoid generated by finitely many positive exact reals."""

    gens: tuple

    def __post_init__(self):
        gens = [exact(g) for g in self.gens]
        if not gens:
            raise ValueError("at least one generator is required")
        if any(compare(g, 0) <= 0 for g in gens):
            raise ValueError("generators must be positive")
        gens = sorted(set(gens))  # raises IncomparableKinds on mixed irrationals
        object.__setattr__(self, "gens", tuple(gens))


@dataclass(frozen=True)
class Logarithmic:
    """``L = {log2(n) : n >= 1}``."""


@dataclass(frozen=True)
class Pythagorean:
    """``P = {i + j*log2(3) : i, j >= 0}``."""


@dataclass(frozen=True)
class GoldenFractal:
    """Fractal tempered monoid whose first period is ``{1, phi}``."""


@dataclass(frozen=True)
class RadixFractal:
    """``{0} | {n + k/r**(n+offset) : n >= 1, 0 <= k < r**(n+offset)}``.

    ``RadixFractal(2, 1)`` is the quarters monoid Q and ``RadixFractal(10, 0)``
    the decimal monoid D.
    """

    radix: int
    offset: int = 0

    def __post_init__(self):
        if self.radix < 2 or self.offset < 0:
            raise ValueError("radix must be >= 2 and offset >= 0")


@dataclass(frozen=True)
class Harmonic:
    """Integer monoid ``{floor(d*log2(i) + theta) : i >= 1}`` (see :mod:`.temperament`)."""

    d: int = 12
    theta: Fraction = Fraction(3, 5)


MonoidDescriptor = Union[FiniteGenerators, Logarithmic, Pythagorean, GoldenFractal, RadixFractal, Harmonic]

QUARTERS = RadixFractal(2, 1)
DECIMAL = RadixFractal(10, 0)


# ------------------------------------------------------------- result types


@dataclass(frozen=True)
class ElementList:
    """All elements of a monoid that are ``<= bound``, strictly increasing from 0."""

    bound: ExactReal
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def to_json(self) -> dict:
        return {"bound": to_json(self.bound), "elements": [to_json(x) for x in self.elements]}

    @classmethod
    def from_json(cls, obj: dict) -> "ElementList":
        return cls(from_json(obj["bound"]), tuple(from_json(x) for x in obj["elements"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_csv(self, digits: int = 6) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "exact", "decimal"])
        for i, x in enumerate(self.elements):
            w.writerow([i, str(x), to_decimal(x, digits)])
        return buf.getvalue()


@dataclass(frozen=True)
class Footprint:
    values: tuple
    truncation_bound: ExactReal


@dataclass(frozen=True)
class Period:
    index: int
    members: tuple = field(default=())

    def __len__(self):
        return len(self.members)


# ---------------------------------------------------------------- enumeration


def _check_cap(count: int, cap: int):
    if count > cap:
        raise BoundTooLargeForBudget(f"enumeration needs {count} elements, cap is {cap}")


def enumerate_monoid(desc: MonoidDescriptor, bound, cap: int | None = None) -> ElementList:
    """Every element of the monoid described by ``desc`` that is ``<= bound``."""
    bound = exact(bound)
    cap = DEFAULT_ELEMENT_CAP if cap is None else cap
    if compare(bound, 0) <= 0:
        raise ValueError("bound must be positive")
    if isinstance(desc, FiniteGenerators):
        elems = _enumerate_generated(desc.gens, bound, cap)
    elif isinstance(desc, Logarithmic):
        elems = _enumerate_logarithmic(bound, cap)
    elif isinstance(desc, Pythagorean):
        elems = _enumerate_pythagorean(bound, cap)
    elif isinstance(desc, GoldenFractal):
        elems = _enumerate_periodic(_golden_period, bound, cap, lambda k: 2**k)
    elif isinstance(desc, RadixFractal):
        r, c = desc.radix, desc.offset
        elems = _enumerate_periodic(
            lambda k: _radix_period(r, c, k), bound, cap, lambda k: r ** (k + c)
        )
    elif isinstance(desc, Harmonic):
        from .temperament import EdoMap, harmonic_semigroup

        result = harmonic_semigroup(EdoMap(desc.d, desc.theta))
        result.raise_if_open()
        top = floor(bound)
        _check_cap(top + 1 - result.semigroup.genus, cap)
        elems = [Fraction(x) for x in result.semigroup.elements(top)]
    else:
        raise TypeError(f"unknown monoid descriptor {desc!r}")
    return ElementList(bound, tuple(elems))


def _enumerate_generated(gens, bound, cap) -> list:
    # best-first over a min-heap of sums; each value enters the heap once
    zero = Fraction(0)
    heap, seen, out = [zero], {zero}, []
    while heap:
        x = heapq.heappop(heap)
        out.append(x)
        _check_cap(len(out), cap)
        for g in gens:
            y = add(x, g)
            if y not in seen and compare(y, bound) <= 0:
                seen.add(y)
                heapq.heappush(heap, y)
    return out


def _largest_power_index(bound) -> int:
    """Largest ``n`` with ``log2(n) <= bound``."""
    if isinstance(bound, Fraction):
        n, _ = integer_nthroot(2**bound.numerator, bound.denominator)
        return int(n)
    n = max(1, int(2 ** float(bound)))
    while compare(log2(n), bound) > 0:
        n -= 1
    while compare(log2(n + 1), bound) <= 0:
        n += 1
    return n


def _enumerate_logarithmic(bound, cap) -> list:
    if compare(bound, log2(cap)) > 0:
        raise BoundTooLargeForBudget(f"2**{bound} elements exceed the cap {cap}")
    n_max = _largest_power_index(bound)
    _check_cap(n_max, cap)
    spf = list(range(n_max + 1))
    for p in range(2, int(n_max**0.5) + 1):
        if spf[p] == p:
            for q in range(p * p, n_max + 1, p):
                if spf[q] == q:
                    spf[q] = p
    values = [None, Fraction(0)]
    prime_logs: dict[int, ExactReal] = {}
    for n in range(2, n_max + 1):
        p = spf[n]
        if p not in prime_logs:
            prime_logs[p] = log2(p)
        values.append(add(values[n // p], prime_logs[p]))
    return values[1:]


def _enumerate_pythagorean(bound, cap) -> list:
    out = []
    j = 0
    while True:
        base = LogLin._raw(Fraction(0), ((3, Fraction(j)),)) if j else Fraction(0)
        slack = sub(bound, base)
        if compare(slack, 0) < 0:
            break
        top = floor(slack)
        _check_cap(len(out) + top + 1, cap)
        out.extend(add(base, i) for i in range(top + 1))
        j += 1
    out.sort()
    return out


def _enumerate_periodic(period_fn, bound, cap, period_size) -> list:
    last = floor(bound)
    _check_cap(1 + sum(period_size(k) for k in range(1, last + 1)), cap)
    out = [Fraction(0)]
    for k in range(1, last + 1):
        out.extend(x for x in period_fn(k) if compare(x, bound) <= 0)
    return out


# ------------------------------------------------------------ fractal periods


def subdivide(cuts: Sequence, ratios: Sequence) -> list:
    """Split every piece of ``[0, 1)`` delimited by ``cuts`` in the given proportions.

    >>> subdivide([0], [Fraction(1, 2), Fraction(1, 2)])
    [Fraction(0, 1), Fraction(1, 2)]
    """
    ratios = [exact(r) for r in ratios]
    if len(ratios) < 2 or any(compare(r, 0) <= 0 for r in ratios):
        raise InvalidProportions("need at least two positive proportions")
    total = Fraction(0)
    for r in ratios:
        total = add(total, r)
    if total != 1:
        raise InvalidProportions(f"proportions sum to {total}, not 1")
    cuts = [exact(c) for c in cuts]
    if not cuts or cuts[0] != 0:
        raise ValueError("cuts must start at 0")
    offsets = [Fraction(0)]
    for r in ratios[:-1]:
        offsets.append(add(offsets[-1], r))
    ends = cuts[1:] + [Fraction(1)]
    out = []
    for start, end in zip(cuts, ends):
        length = sub(end, start)
        out.extend(add(start, mul(length, o)) for o in offsets)
    return out


GOLDEN_CUT = sub(PHI, 1)  # 1/phi
GOLDEN_RATIOS = (GOLDEN_CUT, sub(2, PHI))

_golden_cuts = [[Fraction(0)]]


def _golden_refinement(k: int) -> list:
    while len(_golden_cuts) <= k:
        _golden_cuts.append(subdivide(_golden_cuts[-1], GOLDEN_RATIOS))
    return _golden_cuts[k]


def _golden_period(k: int) -> list:
    return [add(k, c) for c in _golden_refinement(k)]


def _radix_period(r: int, offset: int, n: int) -> list:
    den = r ** (n + offset)
    return [n + Fraction(k, den) for k in range(den)]


def golden_fractal(n_periods: int) -> ElementList:
    """Golden fractal monoid through period ``n_periods`` (bound ``n_periods + 1``)."""
    if n_periods < 1:
        raise ValueError("n_periods must be positive")
    return enumerate_monoid(GoldenFractal(), n_periods + 1)


def radix_fractal(r: int, offset: int, n_periods: int) -> ElementList:
    """Radix fractal monoid with period exponent ``n + offset``, through period ``n_periods``."""
    if n_periods < 1:
        raise ValueError("n_periods must be positive")
    return enumerate_monoid(RadixFractal(r, offset), n_periods + 1)


# ----------------------------------------------------------------- structure


def minimal_generating_set(el: ElementList) -> list:
    """Nonzero elements of ``el`` that are not a sum of two nonzero elements.

    Exact for every generator up to ``el.bound``: both summands of a
    decomposition are smaller than the element, so they are in the list.
    """
    elems = el.elements
    members = set(elems)
    out = []
    for i in range(1, len(elems)):
        g = elems[i]
        if not any(sub(g, x) in members for x in elems[1:i]):
            out.append(g)
    return out


def footprint(el: ElementList) -> Footprint:
    """Fractional parts of ``a / a1`` over the listed elements."""
    if len(el) < 2:
        raise InsufficientElements("footprint needs a nonzero element")
    a1 = el.elements[1]
    values = {frac(div(a, a1)) for a in el.elements}
    return Footprint(tuple(sorted(values)), el.bound)


def periods(el: ElementList, upto: int) -> list:
    """Periods ``1..upto`` of a normalized monoid: the elements in ``[i, i+1)``."""
    if len(el) < 2 or el.elements[1] != 1:
        raise NotNormalized(f"smallest nonzero element is {el.elements[1] if len(el) > 1 else None}, not 1")
    if upto < 1:
        raise ValueError("upto must be positive")
    if compare(el.bound, upto + 1) < 0:
        raise InsufficientElements(f"bound {el.bound} does not cover period {upto}")
    buckets: dict[int, list] = {i: [] for i in range(1, upto + 1)}
    for x in el.elements[1:]:
        k = floor(x)
        if k > upto:
            break
        buckets[k].append(x)
    return [Period(i, tuple(buckets[i])) for i in range(1, upto + 1)]


def granularity(el: ElementList) -> int:
    return len(periods(el, 1)[0])


def product_compatible_check(el: ElementList, n: int) -> bool:
    """Whether ``t[ab-1] == t[a-1] + t[b-1]`` for all ``1 <= a, b <= n``."""
    if len(el) < n * n:
        raise InsufficientElements(f"need {n * n} elements, have {len(el)}")
    t = el.elements
    for a in range(2, n + 1):
        for b in range(a, n + 1):
            if t[a * b - 1] != add(t[a - 1], t[b - 1]):
                logger.debug("product compatibility fails at a=%d b=%d", a, b)
                return False
    return True
