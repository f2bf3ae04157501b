"""Deciding whether a finite generating set gives a scaled numerical semigroup or a tempered monoid."""

from fractions import Fraction

from omegamonoids import PHI, ScaledNumericalSemigroup, classify, log2, verify_classification
from omegamonoids.exact import scalar_mul

cases = {
    "3/2, 5/2, 7/2": [Fraction(3, 2), Fraction(5, 2), Fraction(7, 2)],
    "2phi, 3phi": [scalar_mul(2, PHI), scalar_mul(3, PHI)],
    "log2 9, log2 27": [log2(9), log2(27)],
    "1, log2 3": [1, log2(3)],
    "1, phi": [1, PHI],
}

for label, gens in cases.items():
    c = classify(gens)
    if isinstance(c, ScaledNumericalSemigroup):
        gs = ",".join(map(str, c.semigroup.minimal_generators))
        verdict = f"{c.lam} * <{gs}>"
    else:
        verdict = f"tempered (witness {c.witness[0]} vs {c.witness[1]})"
    checked = verify_classification(gens, c, 12)
    print(f"{label:16s} -> {verdict}   [prefix check to 12: {checked}]")
