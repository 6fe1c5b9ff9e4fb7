"""
Interval unions and density enclosures
======================================

Sets are stored as unions of integer intervals, so a block of length
``10**40`` costs the same as a block of length one.
"""

from fractions import Fraction

from approxstruct import (gen_factorial_blocks, gen_squarefree, log_density_at, normalize,
                          partial_sum_r, r_density_at)

# overlapping and adjacent pieces merge into a canonical form
A = normalize([(3, 7), (5, 12), (13, 20), (40, 50)])
print(A)

# x**(-1/2) summed over [4, 9]: the enclosure brackets the brute sum
enc = partial_sum_r(normalize([(4, 9)]), 4, 9, Fraction(1, 2), exact_threshold=1)
print("analytic enclosure", enc.as_floats(), "brute", sum(x ** -0.5 for x in range(4, 10)))

###############################################################################
# Densities at explicit horizons
# ------------------------------
# r = 1 is a plain count, so the square-free estimate is an exact rational.

sf = gen_squarefree(10 ** 6)
print("d_1(10^6) =", r_density_at(sf, 10 ** 6, 1).value.lo)
for r in (Fraction(1, 3), Fraction(1, 2)):
    print(f"d_{r}(10^6) in", r_density_at(sf, 10 ** 6, r).value.as_floats())
print("log density", log_density_at(sf, 10 ** 6).value.as_floats())

# huge endpoints are no problem: factorial blocks up to 10**200
F = gen_factorial_blocks(10 ** 200)
print(len(F.intervals), "blocks, d_1 at the top:",
      float(r_density_at(F, F.max, 1).value.lo))
