"""
Approximate geometric progressions
==================================

Blocks ``[2**n + 1, 2**(n + 2/5)]`` fill every dyadic range a little, so
their ``ceil(log2)`` image is a full run of integers.  Any arithmetic
progression there lifts to powers of two, each within a factor 2 of an
element of the set.
"""

from fractions import Fraction

from approxstruct import find_geometric, gen_pow2_blocks, log_image, verify_no_pow2_approx
from approxstruct.search import pow2_side_condition

A = gen_pow2_blocks(Fraction(2, 5), 2 ** 200)
print("log image:", log_image(A))

cert = find_geometric(A, 5, min_a=20, min_d=7)
print(f"progression 2^({cert.a} + {cert.d} n), n < {cert.l}")
for t in cert.terms:
    print(f"  g = 2^{t.g.bit_length() - 1}, witness x = {t.x}, x <= g < 2x: {t.x <= t.g < 2 * t.x}")
print("re-validated exactly:", cert.validate(A))

###############################################################################
# No single power of two is close in the stronger sense
# ------------------------------------------------------
# With eps = 1/2 a power 2**k would need an element in (2**k / 1.5, 2**k].

print("side condition (2 - eps) 2^delta < 2:", pow2_side_condition(Fraction(2, 5), Fraction(1, 2)))
print(verify_no_pow2_approx(A, Fraction(1, 2), 2 ** 64))
