"""Progression search and (c, r)-approximation certificates.

A number ``g`` is a (c, r)-approximation of ``x`` when ``x <= g < x + c*x**r``.
All such comparisons here are exact: with ``r = p/q`` and ``g > x`` the test
``g - x < c*x**(p/q)`` is decided as ``((g - x)/c)**q < x**p`` over the
rationals.

Since ``x + c*x**r`` is increasing in x, the only element of A worth
testing as a witness for ``g`` is the largest one not exceeding ``g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ._exact import root_bounds
from .errors import CertificationFailed, ElementCapExceeded, SearchSpaceExceeded
from .intset import IntegerSet
from .transforms import log_image, power_image

ELEMENT_CAP = 10 ** 7
PAIR_BUDGET = 10 ** 7


@dataclass(frozen=True)
class ApproxParams:
    c: Fraction
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "r", Fraction(self.r))
        # r == 0 is admitted for the degenerate m = 1 power lift
        if self.c <= 0 or self.r < 0:
            raise ValueError("need c > 0 and r >= 0")


def is_approx(g: int, x: int, params: ApproxParams) -> bool:
    """True iff ``x <= g < x + c * x**r``, decided exactly."""
    if g < x:
        return False
    if g == x:
        return True
    p, q = params.r.numerator, params.r.denominator
    return ((g - x) / params.c) ** q < Fraction(x) ** p


def approx_bound(x: int, params: ApproxParams, digits: int = 6) -> Fraction:
    """``x + c*x**r`` rounded down to ``digits`` decimals (exact when rational)."""
    p, q = params.r.numerator, params.r.denominator
    lo, hi = root_bounds(x, p, q, 96)
    if lo == hi:
        return x + params.c * Fraction(lo, 1 << 96)
    scale = 10 ** digits
    return Fraction(math.floor((x + params.c * Fraction(lo, 1 << 96)) * scale), scale)


def approx_witness(g: int, A: IntegerSet, params: ApproxParams) -> Optional[int]:
    x = A.predecessor(g)
    if x is not None and is_approx(g, x, params):
        return x
    return None


# -- arithmetic progressions ----------------------------------------------

@dataclass(frozen=True)
class APResult:
    a: int
    d: int
    l: int

    @property
    def terms(self) -> list[int]:
        return [self.a + n * self.d for n in range(self.l)]


def find_ap(S: IntegerSet, l: int, min_a: int = 0, min_d: int = 0,
            element_cap: int = ELEMENT_CAP) -> Optional[APResult]:
    """Lexicographically least ``(a, d)`` with ``a > min_a``, ``d > min_d`` and
    ``a, a+d, ..., a+(l-1)d`` all in S.

    Exhaustive: first terms in increasing order, and for each one the gaps
    that land the second term inside S.
    """
    if l < 1:
        raise ValueError("progression length must be positive")
    n = S.count
    if n > element_cap:
        raise ElementCapExceeded(f"set has {n} elements, cap is {element_cap}")
    if not S:
        return None
    top = S.max
    for lo, hi in S.intervals:
        for a in range(max(lo, min_a + 1), hi + 1):
            if l == 1:
                return APResult(a, min_d + 1, 1)
            dmin = min_d + 1
            if a + (l - 1) * dmin > top:
                return None  # every later a is larger still
            dmax = (top - a) // (l - 1)
            for u, v in S.window_intervals(a + dmin, a + dmax):
                for d in range(u - a, v - a + 1):
                    if all(S.member(a + t * d) for t in range(2, l)):
                        return APResult(a, d, l)
    return None


# -- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class CertificateTerm:
    g: int
    x: int
    bound: Fraction  # x + c*x**r, rounded down when irrational


@dataclass(frozen=True)
class ProgressionCertificate:
    kind: str  # "geometric" | "power" | "geometric-3"
    a: int
    d: int
    l: int
    params: ApproxParams
    terms: tuple[CertificateTerm, ...] = field(default_factory=tuple)
    m: Optional[int] = None
    eps: Optional[Fraction] = None

    def validate(self, A: Optional[IntegerSet] = None) -> bool:
        """Re-check every term exactly; with A, also check witness membership."""
        for t in self.terms:
            if A is not None and not A.member(t.x):
                return False
            if not is_approx(t.g, t.x, self.params):
                return False
        return len(self.terms) == self.l


def _certify(kind, ap: APResult, values, A, params, **extra) -> ProgressionCertificate:
    terms = []
    for g in values:
        x = approx_witness(g, A, params)
        if x is None:
            raise CertificationFailed(f"{kind} term {g} of {ap} has no witness in A")
        terms.append(CertificateTerm(g, x, approx_bound(x, params)))
    return ProgressionCertificate(kind, ap.a, ap.d, ap.l, params, tuple(terms), **extra)


def find_geometric(A: IntegerSet, l: int, min_a: int = 0, min_d: int = 0,
                   element_cap: int = ELEMENT_CAP) -> Optional[ProgressionCertificate]:
    """Find ``2**a * (2**d)**n`` (n < l) forming a (1, 1)-approximate subset of A.

    An AP ``a + n d`` in ``log2``-image of A lifts to ``g = 2**(a + n d)``;
    the element x with ``ceil(log2 x) = a + n d`` satisfies ``x <= g < 2x``.
    """
    ap = find_ap(log_image(A), l, min_a, min_d, element_cap)
    if ap is None:
        return None
    params = ApproxParams(1, 1)
    return _certify("geometric", ap, [1 << t for t in ap.terms], A, params)


def largeness_threshold(m: int, eps) -> int:
    """Smallest a >= 1 such that ``eps*z**(m-1) > sum_{i<=m-2} C(m,i) z**i`` for all z >= a-1.

    Dividing by ``z**(m-2)`` leaves an increasing function of z > 0, so the
    condition over all ``z >= a-1`` reduces to the single point ``z = a-1``.
    """
    eps = Fraction(eps)
    if m <= 1:
        return 1

    def holds(z: int) -> bool:
        return z > 0 and eps * z ** (m - 1) > sum(math.comb(m, i) * z ** i for i in range(m - 1))

    hi = 1
    while not holds(hi):
        hi *= 2
    lo = 0  # holds(lo) is False
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi + 1


def find_power_ap(A: IntegerSet, l: int, m: int, eps, min_a: int = 0, min_d: int = 0,
                  element_cap: int = ELEMENT_CAP) -> Optional[ProgressionCertificate]:
    """Find ``(a + n d)**m`` (n < l) forming an ``(m + eps, (m-1)/m)``-approximate subset of A."""
    eps = Fraction(eps)
    if m < 1 or eps <= 0:
        raise ValueError("need m >= 1 and eps > 0")
    start = max(min_a, largeness_threshold(m, eps) - 1)
    ap = find_ap(power_image(A, 1, m), l, start, min_d, element_cap)
    if ap is None:
        return None
    params = ApproxParams(m + eps, Fraction(m - 1, m))
    return _certify("power", ap, [t ** m for t in ap.terms], A, params, m=m, eps=eps)



# -- negative verifiers ----------------------------------------------------

@dataclass
class VerifyReport:
    status: str  # "PASS" | "FAIL"
    checked: int
    violation: Optional[dict] = None
    side_condition: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def pow2_side_condition(delta, eps) -> bool:
    """Exact test of ``(2 - eps) * 2**delta < 2`` for rational delta = p/q."""
    delta, eps = Fraction(delta), Fraction(eps)
    p, q = delta.numerator, delta.denominator
    # 2**(p/q) < 2/(2-eps)  <=>  2**p < (2/(2-eps))**q
    return 2 ** p < (2 / (2 - eps)) ** q


def power_side_condition(delta, eps, m: int) -> bool:
    """``delta < eps/m``, the room needed for the m-th power blocks."""
    return Fraction(delta) < Fraction(eps) / m


def verify_no_pow2_approx(A: IntegerSet, eps, bound: int) -> VerifyReport:
    """Check that no ``2**k <= bound`` (k >= 1) is a ``(1 - eps, 1)``-approximation of an element of A.

    ``x <= 2**k < (2 - eps) x`` means x lies in ``(2**k/(2 - eps), 2**k]``,
    so each k is one predecessor lookup.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    k, checked = 1, 0
    while (1 << k) <= bound:
        g = 1 << k
        smallest = math.floor(g / (2 - eps)) + 1
        x = A.predecessor(g)
        checked += 1
        if x is not None and x >= smallest:
            return VerifyReport("FAIL", checked, {"k": k, "g": g, "x": x})
        k += 1
    return VerifyReport("PASS", checked)


def verify_no_power_approx(A: IntegerSet, m: int, eps, bound: int) -> VerifyReport:
    """Check that no ``a**m <= bound`` is an ``(m - eps, (m-1)/m)``-approximation of an element of A."""
    eps = Fraction(eps)
    if m < 2 or not 0 < eps < m:
        raise ValueError("need m >= 2 and 0 < eps < m")
    params = ApproxParams(m - eps, Fraction(m - 1, m))
    a, checked = 1, 0
    while a ** m <= bound:
        g = a ** m
        x = A.predecessor(g)
        checked += 1
        if x is not None and is_approx(g, x, params):
            return VerifyReport("FAIL", checked, {"a": a, "g": g, "x": x})
        a += 1
    return VerifyReport("PASS", checked)


def approximable_region(A: IntegerSet, c) -> IntegerSet:
    """All g that are (c, 1)-approximations of some element of A."""
    c = Fraction(c)
    return IntegerSet.from_intervals(
        (u, math.ceil((1 + c) * v) - 1) for u, v in A.intervals)


def find_3term_geometric_approx(A: IntegerSet, c, min_param: int, bound: int,
                                pair_budget: int = PAIR_BUDGET) -> Optional[ProgressionCertificate]:
    """Least ``(a, r)`` with ``a, r > min_param``, ``a*r*r <= bound`` and
    ``{a, a r, a r**2}`` a (c, 1)-approximate subset of A.

    A None result only says nothing exists below ``bound``.  Raises
    SearchSpaceExceeded once more than ``pair_budget`` pairs are examined.
    """
    c = Fraction(c)
    params = ApproxParams(c, 1)
    R = approximable_region(A, c)
    if not R:
        return None
    rmin = min_param + 1
    pairs = 0
    for lo, hi in R.intervals:
        for a in range(max(lo, rmin), hi + 1):
            if a * rmin * rmin > bound or a * rmin > R.max:
                return None
            rmax = math.isqrt(bound // a)
            for u, v in R.window_intervals(a * rmin, a * rmax):
                for r in range(max(-(-u // a), rmin), min(v // a, rmax) + 1):
                    pairs += 1
                    if pairs > pair_budget:
                        raise SearchSpaceExceeded(f"more than {pair_budget} (a, r) pairs")
                    if R.member(a * r * r):
                        ap = APResult(a, r, 3)
                        return _certify("geometric-3", ap, [a, a * r, a * r * r], A, params)
    return None


def find_exact_3term_geometric(A: IntegerSet, bound: int, min_ratio=2) -> Optional[tuple[int, int, int]]:
    """Some ``x < y < z <= bound`` in A with ``y*y == x*z`` and ``y/x >= min_ratio``.

    Ratios may be any rational; for each x the middle terms are scanned in
    one vectorized pass.
    """
    min_ratio = Fraction(min_ratio)
    mask = np.zeros(bound + 1, dtype=bool)
    for u, v in A.window_intervals(1, bound):
        mask[u:v + 1] = True
    for x in np.flatnonzero(mask).tolist():
        ylo = math.ceil(min_ratio * x)
        yhi = math.isqrt(x * bound)
        if ylo > yhi:
            break  # ylo grows linearly, yhi like sqrt(x)
        ys = np.arange(ylo, yhi + 1, dtype=np.int64)
        ys = ys[mask[ys]]
        sq = ys * ys
        ys = ys[sq % x == 0]
        zs = ys * ys // x
        hit = np.flatnonzero(mask[zs])
        if hit.size:
            y = int(ys[hit[0]])
            return x, y, y * y // x
    return None
