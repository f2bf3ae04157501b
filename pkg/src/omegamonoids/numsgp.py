"""Numerical semigroups and the semigroup tree.

A numerical semigroup is a cofinite additive submonoid of the nonnegative
integers. It is stored by its gap set; everything else is derived and cached.
"""

from __future__ import annotations

import csv
import heapq
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator

from .errors import CeilingExceeded, NotCoprime

__all__ = [
    "NumericalSemigroup",
    "GenusCountReport",
    "from_generators",
    "gcd_normalize",
    "genus_count",
    "DEFAULT_GENUS_CEILING",
]

DEFAULT_GENUS_CEILING = 35


class NumericalSemigroup:
    """A numerical semigroup given by its (finite) set of gaps."""

    def __init__(self, gaps: Iterable[int]):
        gaps = frozenset(gaps)
        if any(not isinstance(g, int) or g <= 0 for g in gaps):
            raise ValueError("gaps must be positive integers")
        self._gaps = gaps
        self.conductor = max(gaps) + 1 if gaps else 0
        nongaps = [x for x in range(1, self.conductor) if x not in gaps]
        for i, x in enumerate(nongaps):
            for y in nongaps[i:]:
                if x + y in gaps:
                    raise ValueError(f"not closed under addition: {x} + {y} = {x + y} is a gap")

    @property
    def gaps(self) -> tuple:
        return tuple(sorted(self._gaps))

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and x >= 0 and x not in self._gaps

    def __eq__(self, other):
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self._gaps == other._gaps

    def __hash__(self):
        return hash(self._gaps)

    def __repr__(self):
        return f"NumericalSemigroup(<{', '.join(map(str, self.minimal_generators))}>)"

    def elements(self, bound: int) -> Iterator[int]:
        """Elements ``<= bound`` in increasing order."""
        return (x for x in range(bound + 1) if x not in self._gaps)

    @property
    def genus(self) -> int:
        return len(self._gaps)

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @cached_property
    def multiplicity(self) -> int:
        m = 1
        while m in self._gaps:
            m += 1
        return m

    def apery(self, n: int | None = None) -> tuple:
        """Smallest element in each residue class modulo ``n`` (default: multiplicity)."""
        n = self.multiplicity if n is None else n
        if n <= 0 or n not in self:
            raise ValueError(f"{n} is not a nonzero element")
        out = []
        for r in range(n):
            x = r
            while x in self._gaps:
                x += n
            out.append(x)
        return tuple(out)

    @cached_property
    def minimal_generators(self) -> tuple:
        m, c = self.multiplicity, self.conductor
        small = [x for x in range(m, c + m + 1) if x not in self._gaps]
        gens = []
        for i, x in enumerate(small):
            if not any((x - y) in self for y in small[:i] if x - y >= m):
                gens.append(x)
        return tuple(gens)

    def invariants(self) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "genus": self.genus,
            "frobenius": self.frobenius,
            "apery": self.apery(),
        }

    def to_json(self) -> dict:
        return {"gaps": list(self.gaps), "generators": list(self.minimal_generators)}

    @classmethod
    def from_json(cls, obj: dict) -> "NumericalSemigroup":
        s = cls(int(g) for g in obj["gaps"])
        if "generators" in obj and list(s.minimal_generators) != [int(g) for g in obj["generators"]]:
            raise ValueError("generators do not match the gap set")
        return s


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """Smallest numerical semigroup containing ``gens``.

    Runs a shortest-path search over residues modulo the smallest generator,
    which yields the Apéry set and from it every gap.
    """
    gens = sorted(set(gens))
    if not gens or any(not isinstance(g, int) or g <= 0 for g in gens):
        raise ValueError("generators must be a nonempty list of positive integers")
    d = reduce(math.gcd, gens)
    if d != 1:
        raise NotCoprime(d)
    m = gens[0]
    dist = [None] * m
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        w, r = heapq.heappop(heap)
        if w > dist[r]:
            continue
        for g in gens[1:]:
            nw = w + g
            nr = nw % m
            if dist[nr] is None or nw < dist[nr]:
                dist[nr] = nw
                heapq.heappush(heap, (nw, nr))
    gaps = [x for r in range(1, m) for x in range(r, dist[r], m)]
    return NumericalSemigroup(gaps)


def gcd_normalize(gens: Iterable[int]) -> tuple[int, NumericalSemigroup]:
    """Split the monoid generated by ``gens`` as ``d * S``."""
    gens = list(gens)
    if not gens or any(g <= 0 for g in gens):
        raise ValueError("generators must be a nonempty list of positive integers")
    d = reduce(math.gcd, gens)
    return d, from_generators(g // d for g in gens)


# --------------------------------------------------------------- genus tree


@dataclass(frozen=True)
class GenusCountReport:
    """Number of numerical semigroups of each genus ``0..g_max``.

    ``elapsed_ms[g]`` is the time spent producing level ``g`` of the tree,
    summed over workers.
    """

    counts: tuple
    elapsed_ms: tuple

    @property
    def g_max(self) -> int:
        return len(self.counts) - 1

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.counts, self.counts[1:]))

    def to_csv(self, timing: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g", "n_g", "elapsed_ms"] if timing else ["g", "n_g"])
        for g, n in enumerate(self.counts):
            w.writerow([g, n, f"{self.elapsed_ms[g]:.3f}"] if timing else [g, n])
        return buf.getvalue()


# A tree node is (elements bitmask, reversed bitmask, multiplicity, generators
# greater than the Frobenius number). Bit x of the mask is set iff x is in S;
# bit (W-1-x) of the reversed mask likewise, so decompositions of x can be
# read off with a single shift and AND.


def _root(width: int):
    full = (1 << width) - 1
    return (full, full, 1, (1,))


def _children(node, width: int):
    s, rev, m, gens = node
    w1 = width - 1
    for idx, a in enumerate(gens):
        s2 = s ^ (1 << a)
        r2 = rev ^ (1 << (w1 - a))
        # only a + z with z <= new multiplicity can become a new generator
        if a == m:
            m2, cands = m + 1, (a + m, a + m + 1)
        else:
            m2, cands = m, (a + m,)
        new = list(gens[idx + 1 :])
        for x in cands:
            if not (s2 & (r2 >> (w1 - x)) & ((1 << x) - 2)):
                new.append(x)
        yield (s2, r2, m2, tuple(new))


def _expand(nodes, depth: int, width: int) -> tuple[list, list]:
    """Count descendants of ``nodes`` over ``depth`` further levels.

    Returns per-level counts and elapsed milliseconds (levels 1..depth).
    """
    counts, elapsed = [], []
    level = list(nodes)
    for step in range(1, depth + 1):
        t0 = time.perf_counter()
        if step == depth:
            counts.append(sum(len(node[3]) for node in level))
            level = []
        else:
            level = [child for node in level for child in _children(node, width)]
            counts.append(len(level))
        elapsed.append((time.perf_counter() - t0) * 1000)
    return counts, elapsed


def _expand_chunk(args):
    nodes, depth, width = args
    return _expand(nodes, depth, width)


def genus_count(g_max: int, workers: int = 1, ceiling: int = DEFAULT_GENUS_CEILING) -> GenusCountReport:
    """Count numerical semigroups of genus ``0..g_max`` by walking the semigroup tree.

    The children of ``S`` are ``S - {a}`` for each minimal generator ``a``
    larger than the Frobenius number; every semigroup of genus ``g + 1``
    appears exactly once as a child of a semigroup of genus ``g``.
    """
    if g_max < 0:
        raise ValueError("g_max must be nonnegative")
    if g_max > ceiling:
        raise CeilingExceeded(f"g_max {g_max} exceeds the ceiling {ceiling}")
    # generators of genus <= g_max - 1 semigroups are below 3*g_max
    width = 3 * g_max + 8
    counts, elapsed = [1], [0.0]
    if g_max == 0:
        return GenusCountReport(tuple(counts), tuple(elapsed))

    if workers <= 1:
        c, e = _expand([_root(width)], g_max, width)
        return GenusCountReport(tuple(counts + c), tuple(elapsed + e))

    # grow the tree serially until there is enough work to share out
    level, depth = [_root(width)], 0
    while depth < g_max - 1 and len(level) < 8 * workers:
        t0 = time.perf_counter()
        level = [child for node in level for child in _children(node, width)]
        depth += 1
        counts.append(len(level))
        elapsed.append((time.perf_counter() - t0) * 1000)
    remaining = g_max - depth
    chunks = [level[i::workers] for i in range(workers)]
    totals_c = [0] * remaining
    totals_e = [0.0] * remaining
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for c, e in pool.map(_expand_chunk, [(ch, remaining, width) for ch in chunks if ch]):
            for i in range(remaining):
                totals_c[i] += c[i]
                totals_e[i] += e[i]
    return GenusCountReport(tuple(counts + totals_c), tuple(elapsed + totals_e))
