"""Equal temperaments, harmonic semigroups, Pythagorean scales and Scala files."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InsufficientElements, NotClosed
from .exact import (
    ExactReal,
    LogLin,
    add,
    compare,
    floor,
    log2,
    scalar_mul,
    sub,
    to_decimal,
)
from .monoid import ElementList
from .numsgp import NumericalSemigroup


@dataclass(frozen=True)
class EdoMap:
    """Map harmonic ``i`` to ``floor(d*log2(i) + theta)`` steps of ``d``-EDO."""

    d: int = 12
    theta: Fraction = Fraction(0)

    def __post_init__(self):
        theta = Fraction(self.theta)
        if self.d < 1:
            raise ValueError("d must be positive")
        if not 0 <= theta < 1:
            raise ValueError("theta must lie in [0, 1)")
        object.__setattr__(self, "theta", theta)


WELL_TEMPERED = EdoMap(12, Fraction(3, 5))


def harmonic_floor(edo: EdoMap, i: int) -> int:
    if i < 1:
        raise ValueError("harmonic index must be positive")
    return floor(add(scalar_mul(edo.d, log2(i)), edo.theta))


def cofinite_index(d: int) -> int:
    """Smallest ``i`` with ``d*log2((i+1)/i) < 1``, i.e. ``(i+1)**d < 2*i**d``.

    From there on consecutive harmonics are less than one step apart, so every
    integer above ``harmonic_floor(i)`` is hit.
    """
    def ok(i):
        return (i + 1) ** d < 2 * i**d

    i = max(1, int(d / math.log(2)) - 1)  # seed only; the integer test decides
    while i > 1 and ok(i - 1):
        i -= 1
    while not ok(i):
        i += 1
    return i


@dataclass(frozen=True)
class HarmonicSemigroup:
    """The set ``{harmonic_floor(i)}`` and whether it is closed under addition."""

    edo: EdoMap
    values: tuple  # the distinct floors up to the cofiniteness index
    closed: bool
    semigroup: NumericalSemigroup | None = None
    witness: tuple | None = None

    def raise_if_open(self):
        if not self.closed:
            raise NotClosed(self.witness)


def harmonic_semigroup(edo: EdoMap) -> HarmonicSemigroup:
    i0 = cofinite_index(edo.d)
    values = sorted({harmonic_floor(edo, i) for i in range(1, i0 + 1)})
    top = values[-1]
    members = set(values)
    gaps = [x for x in range(1, top) if x not in members]
    gapset = set(gaps)
    small = [x for x in values if x]
    for k, x in enumerate(small):
        for y in small[k:]:
            if x + y in gapset:
                return HarmonicSemigroup(edo, tuple(values), False, None, (x, y))
    return HarmonicSemigroup(edo, tuple(values), True, NumericalSemigroup(gaps))


def floor_relation_check(scale: int, theta, source: ElementList, target: NumericalSemigroup, n: int) -> bool:
    """Whether ``floor(scale*x + theta)`` over the first ``n`` source elements is ``target``.

    The floors of ``x_0 <= ... <= x_{n-1}`` are compared as a set with the
    elements of ``target`` up to ``floor(scale*x_{n-1} + theta)``; repeated
    floors are expected because the source gets denser than one step.
    """
    if n < 1 or len(source) < n:
        raise InsufficientElements(f"need {n} source elements, have {len(source)}")
    theta = Fraction(theta)
    image = sorted({floor(add(scalar_mul(scale, x), theta)) for x in source.elements[:n]})
    return image == list(target.elements(image[-1]))


def harmonic_table(edo: EdoMap, n: int) -> str:
    """CSV with columns i, frequency ratio, exact pitch (steps), floor value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "ratio", "pitch", "floor"])
    for i in range(1, n + 1):
        pitch = scalar_mul(edo.d, log2(i))
        w.writerow([i, f"{i}:1", str(pitch), harmonic_floor(edo, i)])
    return buf.getvalue()


# -------------------------------------------------------------------- scales


@dataclass(frozen=True)
class Scale:
    """Octave-fraction pitches ``0 = p_0 < ... < p_k = 1`` with labels.

    With ``ratios=True`` pitches whose frequency ratio ``2**p`` is rational
    are exported as ``a/b``; otherwise everything is written in cents.
    """

    name: str
    pitches: tuple
    labels: tuple
    ratios: bool = True
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        p = self.pitches
        if not p or p[0] != 0 or p[-1] != 1:
            raise ValueError("a scale starts at 0 and ends at the octave 1")
        if any(compare(a, b) >= 0 for a, b in zip(p, p[1:])):
            raise ValueError("pitches must be strictly increasing")
        if len(self.labels) != len(p):
            raise ValueError("one label per pitch")


def edo_scale(d: int) -> Scale:
    pitches = tuple(Fraction(k, d) for k in range(d + 1))
    return Scale(f"{d}-tone equal temperament", pitches, tuple(f"{k}\\{d}" for k in range(d + 1)), ratios=False)


def pythagorean_scale(n_fifths: int) -> Scale:
    """Pitch classes ``frac(j*log2(3/2))`` for ``j = 0..n_fifths``, plus the octave.

    Labels are ``3^j/2^k`` with ``k = floor(j*log2(3))``.
    """
    if not 0 <= n_fifths <= 64:
        raise ValueError("n_fifths must be in 0..64")
    entries = []
    for j in range(n_fifths + 1):
        x = LogLin._raw(Fraction(0), ((3, Fraction(j)),)) if j else Fraction(0)
        k = floor(x)
        entries.append((sub(x, k), f"3^{j}/2^{k}"))
    entries.sort(key=lambda e: e[0])
    entries.append((Fraction(1), "2/1"))
    pitches, labels = zip(*entries)
    fourth = sub(2, log2(3))
    return Scale(
        f"Pythagorean tuning, {n_fifths} fifths",
        pitches,
        labels,
        metadata={"fourth_override": {"label": "3^-1/2^-2", "pitch": str(fourth)}},
    )


def _ratio_of(pitch: ExactReal) -> Fraction | None:
    """``2**pitch`` when it is rational (integer log coordinates), else ``None``."""
    if isinstance(pitch, Fraction):
        return Fraction(2) ** int(pitch) if pitch.denominator == 1 else None
    if isinstance(pitch, LogLin) and pitch.q0.denominator == 1 and all(c.denominator == 1 for _, c in pitch.terms):
        r = Fraction(2) ** int(pitch.q0)
        for p, c in pitch.terms:
            r *= Fraction(p) ** int(c)
        return r
    return None


def scl_lines(scale: Scale) -> list[str]:
    lines = [scale.name, str(len(scale.pitches) - 1)]
    for pitch in scale.pitches[1:]:
        r = _ratio_of(pitch) if scale.ratios else None
        if r is not None:
            lines.append(f"{r.numerator}/{r.denominator}")
        else:
            lines.append(to_decimal(scalar_mul(1200, pitch), 6))
    return lines


def export_scl(scale: Scale, path) -> Path:
    """Write ``scale`` as a Scala ``.scl`` file (atomically)."""
    path = Path(path)
    data = "\n".join(scl_lines(scale)) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def parse_scl(path) -> tuple[str, list[float]]:
    """Read a Scala file; returns the description and pitches in cents."""
    lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if not ln.startswith("!")]
    description, count = lines[0], int(lines[1].split()[0])
    cents = []
    for ln in lines[2 : 2 + count]:
        token = ln.split()[0]
        if "." in token:
            cents.append(float(token))
        else:
            r = Fraction(token)
            cents.append(1200 * math.log2(r))
    return description, cents
