"""From harmonics to equal temperament: the harmonic semigroup and Scala files.

Writes ``edo12.scl`` and ``pythagorean12.scl`` into the current directory.
"""

from fractions import Fraction

from omegamonoids import (
    WELL_TEMPERED,
    EdoMap,
    GoldenFractal,
    Logarithmic,
    edo_scale,
    enumerate_monoid,
    export_scl,
    floor_relation_check,
    harmonic_floor,
    harmonic_semigroup,
    pythagorean_scale,
)
from omegamonoids.temperament import harmonic_table

print(harmonic_table(WELL_TEMPERED, 16))

# theta = 1/2 is rounding to nearest; it disagrees with theta = 3/5 at the 13th harmonic
print("13th harmonic:", harmonic_floor(EdoMap(12, Fraction(1, 2)), 13), "vs", harmonic_floor(WELL_TEMPERED, 13))

h = harmonic_semigroup(WELL_TEMPERED).semigroup
print("H: genus", h.genus, "multiplicity", h.multiplicity, "generators", h.minimal_generators)

lg = enumerate_monoid(Logarithmic(), 7)
gf = enumerate_monoid(GoldenFractal(), 6)
print("floor(12 L + 3/5) is H:", floor_relation_check(12, Fraction(3, 5), lg, h, 100))
print("floor(12 F) is H:      ", floor_relation_check(12, 0, gf, h, 64))

other = harmonic_semigroup(EdoMap(12, 0))
print("without the offset:", "closed" if other.closed else "not closed", other.semigroup.minimal_generators if other.closed else other.witness)

scale = pythagorean_scale(12)
for label, pitch in zip(scale.labels, scale.pitches):
    print(f"  {label:>12s}  {pitch}")
print(export_scl(edo_scale(12), "edo12.scl"), export_scl(scale, "pythagorean12.scl"))
