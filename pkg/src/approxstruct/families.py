"""Generators for the example sets, truncated at an explicit bound.

Every family takes rational parameters so that block endpoints are exact
integers (integer roots and rational powers).  ``remark26-blocks`` is a
construction chosen here: upper density one and logarithmic density zero,
for which no formula is given in the source material.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from ._exact import floor_shifted_power, iroot
from .errors import SetSpecError
from .intset import IntegerSet
from .transforms import ceil_root

SIEVE_CAP = 10 ** 8


def _clip(blocks, bound):
    return [(lo, min(hi, bound)) for lo, hi in blocks if lo <= hi and lo <= bound]


def gen_factorial_blocks(bound: int) -> IntegerSet:
    """Union of ``[n!, 2 n!]`` for n >= 1."""
    blocks, f, n = [], 1, 1
    while f <= bound:
        blocks.append((f, 2 * f))
        n += 1
        f *= n
    return IntegerSet.from_intervals(_clip(blocks, bound), "factorial-blocks")


def gen_squared_seq(a1: int, r, s, bound: int) -> IntegerSet:
    """Blocks ``[a_n**(1/(rs)), (a_n**(1/s) + 1)**(1/r)]`` with ``a_{n+1} = a_n**2``.

    Real endpoints are rounded inward to integers (ceil of the left end,
    certified floor of the right end).
    """
    r, s = Fraction(r), Fraction(s)
    if a1 < 2:
        raise ValueError("a1 must be at least 2")
    if not (0 < r < s <= 1):
        raise ValueError("need 0 < r < s <= 1")
    e_lo = 1 / (r * s)
    blocks, a = [], a1
    while True:
        lo = ceil_root(a ** e_lo.numerator, 1, e_lo.denominator)
        if lo > bound:
            break
        hi = floor_shifted_power(a, 1 / s, 1, 1 / r)
        blocks.append((lo, hi))
        a = a * a
    return IntegerSet.from_intervals(_clip(blocks, bound), "squared-seq")


def squared_seq_terms(a1: int, count: int) -> list[int]:
    """``a_1, a_1**2, a_1**4, ...`` (count terms)."""
    out = [a1]
    while len(out) < count:
        out.append(out[-1] ** 2)
    return out


def gen_pow2_blocks(delta, bound: int) -> IntegerSet:
    """Blocks ``[2**n + 1, floor(2**(n + delta))]`` for n >= 1."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    p, q = delta.numerator, delta.denominator
    blocks, n = [], 1
    while 2 ** n + 1 <= bound:
        blocks.append((2 ** n + 1, iroot(1 << (n * q + p), q)))
        n += 1
    return IntegerSet.from_intervals(_clip(blocks, bound), "pow2-blocks")


def sparse_block_starts(j: int, bound: int) -> list[int]:
    """``u_0 = 2, u_{i+1} = (j u_i)**3 + 1`` up to ``bound``."""
    out, u = [], 2
    while u <= bound:
        out.append(u)
        u = (j * u) ** 3 + 1
    return out


def gen_sparse_blocks(j: int, bound: int) -> IntegerSet:
    """Blocks ``[u_i, j u_i]`` with the smallest admissible growth of ``u_i``."""
    if j < 2:
        raise ValueError("j must be at least 2")
    blocks = [(u, j * u) for u in sparse_block_starts(j, bound)]
    return IntegerSet.from_intervals(_clip(blocks, bound), "sparse-blocks")


def gen_mth_power_blocks(m: int, delta, bound: int) -> IntegerSet:
    """Blocks ``[n**m + 1, (n + delta)**m)`` for n >= 1 (right end open)."""
    delta = Fraction(delta)
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    blocks, n = [], 1
    while n ** m + 1 <= bound:
        blocks.append((n ** m + 1, math.ceil((n + delta) ** m) - 1))
        n += 1
    return IntegerSet.from_intervals(_clip(blocks, bound), "mth-power-blocks")


def squarefree_mask(bound: int) -> np.ndarray:
    """Boolean array ``mask[x]`` for ``0 <= x <= bound`` marking square-free x >= 1."""
    if bound > SIEVE_CAP:
        raise ValueError(f"sieve bound {bound} exceeds cap {SIEVE_CAP}")
    mask = np.ones(bound + 1, dtype=bool)
    mask[0] = False
    p = 2
    while p * p <= bound:
        mask[p * p::p * p] = False
        p += 1
    return mask


def gen_squarefree(bound: int) -> IntegerSet:
    if bound < 1:
        return IntegerSet(provenance="squarefree")
    return IntegerSet.from_mask(squarefree_mask(bound)[1:], offset=1, provenance="squarefree")


def gen_remark26_blocks(bound: int) -> IntegerSet:
    """Blocks ``[2**(2**n), n * 2**(2**n)]`` for n >= 1.

    The block ending at ``n * 2**(2**n)`` covers at least a ``(n-1)/n``
    share of ``[1, n * 2**(2**n)]`` while the reciprocal mass of block n is
    about ``ln n``, negligible against ``ln(2**(2**n))``.
    """
    blocks, n = [], 1
    while 2 ** (2 ** n) <= bound:
        base = 2 ** (2 ** n)
        blocks.append((base, n * base))
        n += 1
    return IntegerSet.from_intervals(_clip(blocks, bound), "remark26-blocks")


def gen_periodic(modulus: int, residues, bound: int) -> IntegerSet:
    """``{1 <= x <= bound : x mod modulus in residues}``; density ``len(residues)/modulus``."""
    res = {int(r) % modulus for r in residues}
    mask = np.zeros(bound + 1, dtype=bool)
    for r in res:
        mask[r::modulus] = True
    mask[0] = False
    return IntegerSet.from_mask(mask[1:], offset=1, provenance=f"periodic-{modulus}")


# name -> (generator taking (params, bound), required params)
def _rat(params, key):
    try:
        return Fraction(str(params[key]))
    except KeyError:
        raise SetSpecError(f"missing family parameter {key!r}") from None
    except (ValueError, ZeroDivisionError):
        raise SetSpecError(f"parameter {key!r} is not a rational: {params[key]!r}") from None


def _int(params, key):
    v = _rat(params, key)
    if v.denominator != 1:
        raise SetSpecError(f"parameter {key!r} must be an integer")
    return int(v)


FAMILIES: dict[str, Callable[[dict, int], IntegerSet]] = {
    "factorial-blocks": lambda p, b: gen_factorial_blocks(b),
    "squared-seq": lambda p, b: gen_squared_seq(_int(p, "a1"), _rat(p, "r"), _rat(p, "s"), b),
    "pow2-blocks": lambda p, b: gen_pow2_blocks(_rat(p, "delta"), b),
    "sparse-blocks": lambda p, b: gen_sparse_blocks(_int(p, "j"), b),
    "mth-power-blocks": lambda p, b: gen_mth_power_blocks(_int(p, "m"), _rat(p, "delta"), b),
    "squarefree": lambda p, b: gen_squarefree(b),
    "remark26-blocks": lambda p, b: gen_remark26_blocks(b),
}


def generate(name: str, params: dict, bound: int) -> IntegerSet:
    """Build a family member by name; raises SetSpecError on bad input."""
    try:
        gen = FAMILIES[name]
    except KeyError:
        raise SetSpecError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None
    try:
        return gen(params or {}, int(bound))
    except ValueError as exc:
        if isinstance(exc, SetSpecError):
            raise
        raise SetSpecError(str(exc)) from exc
