"""Exact images of interval unions under ``x -> ceil(log2 x)`` and ``x -> ceil(x**(p/q))``.

Both maps are nondecreasing and move by at most one between consecutive
integers, so the image of an interval ``[u, v]`` is the full integer
interval between the images of its endpoints.  Images are therefore
computed per interval, never per element.
"""
from __future__ import annotations

from fractions import Fraction

from ._exact import iroot
from .intset import IntegerSet


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


def ceil_root(x: int, p: int, q: int) -> int:
    """Smallest y with ``y**q >= x**p``, i.e. ``ceil(x**(p/q))``."""
    if x < 1:
        raise ValueError("ceil_root needs x >= 1")
    if not (0 < p <= q):
        raise ValueError(f"exponent {p}/{q} outside (0, 1]")
    target = x ** p
    y = iroot(target, q)
    return y if y ** q == target else y + 1


def _reduced(p: int, q: int) -> tuple[int, int]:
    r = Fraction(p, q)
    return r.numerator, r.denominator


def log_image(A: IntegerSet) -> IntegerSet:
    """``{ceil(log2 x) : x in A}``; may contain 0 when 1 is in A."""
    tag = f"log({A.provenance})" if A.provenance else None
    return IntegerSet.from_intervals(
        ((ceil_log2(u), ceil_log2(v)) for u, v in A.intervals), tag, min_value=0)


def power_image(A: IntegerSet, p: int, q: int) -> IntegerSet:
    """``{ceil(x**(p/q)) : x in A}`` for ``0 < p/q <= 1``."""
    p, q = _reduced(p, q)
    tag = f"({A.provenance})^({p}/{q})" if A.provenance else None
    return IntegerSet.from_intervals(
        ((ceil_root(u, p, q), ceil_root(v, p, q)) for u, v in A.intervals), tag)
