"""
Square-free numbers
===================

Positive density, an approximate geometric progression straight away,
and no exact one with ratio at least 2 in a brute-force range.
"""

from approxstruct import find_exact_3term_geometric, find_geometric, gen_squarefree, r_density_at

sf = gen_squarefree(10 ** 6)
print("count density at 10^6:", r_density_at(sf, 10 ** 6, 1).value.lo)

cert = find_geometric(sf, 4)
print("approximate progression:", [(t.g, t.x) for t in cert.terms])
print("exact ratio >= 2 progression up to 10^4:", find_exact_3term_geometric(sf, 10 ** 4))
