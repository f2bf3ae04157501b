"""Numerical semigroups: invariants, Apéry sets and counting by genus.

Run with ``python demos/numerical_semigroups.py``.
"""

from omegamonoids import from_generators, gcd_normalize, genus_count

s = from_generators([4, 5])
print("<4,5>")
print("  gaps       ", s.gaps)
print("  genus      ", s.genus, " multiplicity", s.multiplicity, " frobenius", s.frobenius)
print("  apery(4)   ", s.apery())
print("  generators ", s.minimal_generators)

# A monoid whose generators share a factor is a scaled copy of a numerical semigroup.
d, t = gcd_normalize([6, 10, 15 * 2])
print(f"\n<6,10,30> = {d} * <{', '.join(map(str, t.minimal_generators))}>")

report = genus_count(20)
print("\nnumber of numerical semigroups by genus")
for g, n in enumerate(report.counts):
    print(f"  g={g:2d}  {n}")
print("nondecreasing so far:", report.is_monotone())
