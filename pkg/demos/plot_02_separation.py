"""
Separating r-Banach densities
=============================

Blocks ``[a_n**2, (a_n + 1)**2]`` with ``a_{n+1} = a_n**2`` are long in
the usual sense and tiny after taking square roots.  A window of length
``2 a_n + 1`` sitting on a block is full for s = 1 and nearly empty for
r = 1/2.
"""

from fractions import Fraction

from approxstruct import banach_sup_estimate, gen_squared_seq
from approxstruct.density import default_candidates
from approxstruct.families import squared_seq_terms

terms = squared_seq_terms(2, 7)
A = gen_squared_seq(2, Fraction(1, 2), 1, terms[-1] ** 2 + 2 * terms[-1] + 1)
cands = default_candidates(A)

for a in terms[2:]:
    n = 2 * a + 1
    s_est, k = banach_sup_estimate(A, n, 1, cands)
    r_est, _ = banach_sup_estimate(A, n, Fraction(1, 2), cands)
    print(f"n = 2*2^{a.bit_length() - 1}+1: "
          f"BD_1 >= {float(s_est.value.lo):.4f} (k = a^2: {k == a * a}), "
          f"BD_1/2 window <= {float(r_est.value.hi):.3g}")
