"""Exact and certified arithmetic on big integers.

Real quantities are carried as fixed-point integers: a pair ``(lo, hi)`` at
``bits`` fractional bits encloses the value in ``[lo / 2**bits, hi / 2**bits]``.
``lo == hi`` means the value is exactly representable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from mpmath import iv

from .errors import UndecidedComparison

DEFAULT_PRECISION = 128
PRECISION_CAP = 4096


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if k < 1:
        raise ValueError("root degree must be positive")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from above: start at a power of two >= the root
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@lru_cache(maxsize=1 << 16)
def root_bounds(x: int, p: int, q: int, bits: int) -> tuple[int, int]:
    """Fixed-point enclosure of ``x ** (p/q)`` for a nonnegative integer x."""
    scaled = x ** p << (q * bits)
    lo = iroot(scaled, q)
    if lo ** q == scaled:
        return lo, lo
    return lo, lo + 1


def frac_floor(value: Fraction, bits: int) -> int:
    return math.floor(value * (1 << bits))


def frac_ceil(value: Fraction, bits: int) -> int:
    return math.ceil(value * (1 << bits))


def _mpf_to_fraction(mpf_tuple) -> Fraction:
    sign, man, exp, _ = mpf_tuple
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


@lru_cache(maxsize=1 << 16)
def log_bounds(num: int, den: int, bits: int) -> tuple[int, int]:
    """Fixed-point enclosure of ``ln(num / den)`` for positive integers."""
    if num <= 0 or den <= 0:
        raise ValueError("log of a non-positive ratio")
    if num == den:
        return 0, 0
    # interval evaluation, then outward to the fixed-point grid with one
    # extra unit of slack against library rounding
    saved = iv.prec
    iv.prec = bits + 64
    try:
        enc = iv.log(iv.mpf(num) / iv.mpf(den))
        a, b = enc._mpi_
    finally:
        iv.prec = saved
    lo = frac_floor(_mpf_to_fraction(a), bits) - 1
    hi = frac_ceil(_mpf_to_fraction(b), bits) + 1
    return lo, hi


def _floor_power_of_dyadic(s: int, bits: int, P: int, Q: int) -> int:
    """floor((s / 2**bits) ** (P/Q)) with bits divisible by Q."""
    return iroot(s ** P, Q) >> (bits // Q * P)


def floor_shifted_power(x: int, e1: Fraction, t: int, e2: Fraction,
                        precision: int = DEFAULT_PRECISION,
                        cap: int = PRECISION_CAP) -> int:
    """Certified ``floor((x**e1 + t) ** e2)`` for positive rationals e1, e2.

    Precision doubles from ``precision`` until both ends of the enclosure
    floor to the same integer; past ``cap`` bits the comparison is reported
    undecided.
    """
    e1, e2 = Fraction(e1), Fraction(e2)
    p1, q1 = e1.numerator, e1.denominator
    P, Q = e2.numerator, e2.denominator
    bits = precision
    while bits <= cap:
        b = bits - bits % Q + Q  # multiple of Q
        klo, khi = root_bounds(x, p1, q1, b)
        shift = t << b
        ylo = _floor_power_of_dyadic(klo + shift, b, P, Q)
        if klo == khi:
            return ylo
        yhi = _floor_power_of_dyadic(khi + shift, b, P, Q)
        if ylo == yhi:
            return ylo
        bits *= 2
    raise UndecidedComparison(
        f"floor(({x}^{e1} + {t})^{e2}) undecided at {cap} bits")
