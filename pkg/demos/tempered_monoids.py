"""Tempered monoids: the Pythagorean, logarithmic, quarters, decimal and golden families.

Everything is exact. Decimals are only produced for display.
"""

from omegamonoids import (
    DECIMAL,
    QUARTERS,
    GoldenFractal,
    Logarithmic,
    Pythagorean,
    enumerate_monoid,
    footprint,
    granularity,
    minimal_generating_set,
    periods,
    product_compatible_check,
    to_decimal,
)


def show(name, el, digits=4):
    print(f"{name} up to {el.bound}: {len(el)} elements")
    print("   ", " ".join(to_decimal(x, digits) for x in list(el)[:16]), "...")


show("P", enumerate_monoid(Pythagorean(), 5))
show("L", enumerate_monoid(Logarithmic(), 5))

gf = enumerate_monoid(GoldenFractal(), 6)
show("F", gf)
print("    period sizes:", [len(p) for p in periods(gf, 5)])

q = enumerate_monoid(QUARTERS, 3)
print("\nQ granularity", granularity(q))
print("G(Q) below 3:", ", ".join(map(str, minimal_generating_set(q))))
print("D period sizes:", [len(p) for p in periods(enumerate_monoid(DECIMAL, 4), 3)])

p = enumerate_monoid(Pythagorean(), 6)
print("\nfootprint of P up to 6 (first few):", ", ".join(str(v) for v in footprint(p).values[:6]))

# Only the logarithmic monoid turns products of indices into sums of elements.
print("\nproduct compatible, L (N=30):", product_compatible_check(enumerate_monoid(Logarithmic(), 10), 30))
print("product compatible, F (N=5): ", product_compatible_check(gf, 5))
