"""
Progressions of squares
=======================

Blocks ``[n**2 + 1, (n + delta)**2)`` have square-root image containing
every integer, so arithmetic progressions lift to squares approximated
within ``(2 + eps) sqrt(x)``.  For small delta no square is approximated
within ``(2 - eps) sqrt(x)``.
"""

from fractions import Fraction

from approxstruct import (IntegerSet, find_power_ap, gen_mth_power_blocks, r_density_at,
                          verify_no_power_approx)

dense = gen_mth_power_blocks(2, Fraction(9, 10), 10 ** 6)
for l in (3, 4, 5):
    cert = find_power_ap(dense, l, 2, Fraction(1, 2))
    print(f"l={l}: ({cert.a} + {cert.d} n)^2 ->", [(t.g, t.x) for t in cert.terms])

thin = gen_mth_power_blocks(2, Fraction(1, 5), 10 ** 6)
print("delta = 1/5:", verify_no_power_approx(thin, 2, Fraction(1, 2), 10 ** 6))
print("planted {8}:", verify_no_power_approx(IntegerSet.from_elements([8]), 2, Fraction(1, 2), 16))

# the 1/2-density of the thin set settles near delta
big = gen_mth_power_blocks(2, Fraction(1, 5), 10 ** 8)
print("d_1/2(10^8) in", r_density_at(big, 10 ** 8, Fraction(1, 2)).value.as_floats())
