"""Certified partial sums and finite-horizon density estimates.

Every sum is returned as an :class:`Enclosure` that provably contains the
true value.  An interval ``[u, v]`` of the set is either summed term by term
(short intervals) or bounded through the integral sandwich for the
decreasing integrand ``x**(r-1)``::

    integral(u, v) + f(v) <= sum_{x=u}^{v} f(x) <= integral(u, v) + f(u)

This is the right-sum/left-sum order for a decreasing function; the
increasing-function order does not hold for ``r < 1``.  Since f is also
convex, the trapezoid and midpoint rules give a second, much tighter
sandwich, and the two are intersected.

Nothing here evaluates a limit.  Densities are reported at explicit
horizons, and Banach densities over explicit candidate windows, so a sup
estimate is a lower bound for the sup at that scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _exact
from .intset import IntegerSet

Number = Union[int, Fraction, float]

EXACT_THRESHOLD = 10 ** 6
PRECISION = _exact.DEFAULT_PRECISION
_FLOAT_EXACT = 2 ** 53


def as_exponent(r: Union[int, str, Fraction]) -> Fraction:
    """Validate an exponent ``0 < r <= 1`` and return it as a reduced Fraction."""
    if isinstance(r, float):
        raise TypeError("exponents must be rational; pass a Fraction or 'p/q'")
    r = Fraction(r)
    if not 0 < r <= 1:
        raise ValueError(f"exponent {r} outside (0, 1]")
    return r


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Number) -> "Enclosure":
        v = Fraction(value)
        return cls(v, v)

    @classmethod
    def from_fixed(cls, lo: int, hi: int, bits: int) -> "Enclosure":
        den = 1 << bits
        return cls(Fraction(lo, den), Fraction(hi, den))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __contains__(self, value: Number) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def scale(self, c: Number) -> "Enclosure":
        c = Fraction(c)
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return Enclosure(self.lo * c, self.hi * c)

    def divide(self, other: "Enclosure") -> "Enclosure":
        """Quotient of a nonnegative enclosure by a positive one."""
        if other.lo <= 0:
            raise ZeroDivisionError("divisor enclosure must be positive")
        return Enclosure(self.lo / other.hi, self.hi / other.lo)

    def rounded(self, bits: int = PRECISION) -> "Enclosure":
        """Round outward onto the ``2**-bits`` grid; exact points are kept."""
        if self.is_exact:
            return self
        return Enclosure.from_fixed(_exact.frac_floor(self.lo, bits),
                                    _exact.frac_ceil(self.hi, bits), bits)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self) -> str:
        if self.is_exact:
            return f"Enclosure({self.lo})"
        return f"Enclosure([{float(self.lo):.15g}, {float(self.hi):.15g}])"


WINDOW_KINDS = ("r-window", "log-window", "prefix")


@dataclass(frozen=True)
class WindowSpec:
    k: int
    n: int
    kind: str

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("window scale n must be positive")
        if self.kind == "log-window" and self.n < 2:
            raise ValueError("log-window needs n >= 2")


@dataclass(frozen=True)
class DensityEstimate:
    value: Enclosure
    window: WindowSpec
    exponent: Optional[Fraction] = None


# -- per-interval enclosures ------------------------------------------------
#
# Each interval [u, v] gets a fixed-point enclosure (lo, hi) at `bits`
# fractional bits.  Short intervals below 2**53 are summed term by term in
# floating point with a rigorous error bound; all others use the integral
# sandwich.  Enclosures of whole intervals are cached on the set as exact
# integer prefix sums, so a window costs two edge pieces plus a subtraction.

_PAIRWISE_MIN = 64  # below this length, sequential summation is tight enough
_HEAD = 4096  # long intervals starting below this get their head summed directly


def _elements_array(los: np.ndarray, his: np.ndarray) -> np.ndarray:
    lens = his - los + 1
    total = int(lens.sum())
    offsets = np.cumsum(lens) - lens
    return np.repeat(los - offsets, lens) + np.arange(total, dtype=np.int64)


def _terms(x: np.ndarray, mode) -> tuple[np.ndarray, float]:
    """Float terms and their per-term relative error bound.

    Division is correctly rounded.  For a fractional power the bound covers
    a few ulps from the power routine plus the rounding of the exponent,
    which perturbs the result by a relative ``|delta e| * ln x``.
    """
    if mode == "log":
        return 1.0 / x, 2.0 ** -52
    terms = np.power(x, float(mode - 1))
    return terms, 2.0 ** -53 * (8.0 + math.log(max(float(x.max()), 2.0)))


def _short_enclosures(los: np.ndarray, his: np.ndarray, mode, bits: int) -> list[tuple[int, int]]:
    """Fixed-point enclosures for many short intervals at once."""
    if len(los) == 0:
        return []
    lens = his - los + 1
    x = _elements_array(los, his).astype(np.float64)
    terms, rel = _terms(x, mode)
    starts = np.cumsum(lens) - lens
    sums = np.add.reduceat(terms, starts)
    # recursive summation of n positive terms: error <= 1.01 (n-1) u S
    rounding = 1.01 * (lens - 1) * 2.0 ** -53 * sums + np.spacing(sums)
    # longer runs use numpy's pairwise reduction: blocks of at most 128 terms
    # summed in 8 lanes, then one addition per halving level
    for i in np.flatnonzero(lens >= _PAIRWISE_MIN).tolist():
        n = int(lens[i])
        s = float(np.sum(terms[starts[i]:starts[i] + n]))
        sums[i] = s
        rounding[i] = 1.01 * (24 + n.bit_length()) * 2.0 ** -53 * s + math.ulp(s)
    err = np.ceil(np.ldexp(1.01 * rel * sums + rounding, bits))
    scaled = np.ldexp(sums, bits)
    # float64 is exact up to here; the offsets are applied in integers
    return [(int(f) - int(e), int(c) + int(e))
            for f, c, e in zip(np.floor(scaled).tolist(), np.ceil(scaled).tolist(), err.tolist())]


def _half_root_bounds(x2: int, p: int, q: int, bits: int) -> tuple[int, int]:
    """Bounds on ``(x2/2)**(p/q) * 2**bits``."""
    target = x2 ** p << (bits * q - p)
    y = _exact.iroot(target, q)
    return y, y if y ** q == target else y + 1


def _analytic_enclosure(u: int, v: int, mode, bits: int) -> tuple[int, int]:
    """Sum of the decreasing convex f over ``[u, v]`` from integrals.

    Two sandwiches are intersected: ``integral(u, v) + f(v) <= sum <=
    integral(u, v) + f(u)``, and, by convexity, the trapezoid rule from
    below with the midpoint rule ``integral(u - 1/2, v + 1/2)`` from above.
    A long interval starting below ``_HEAD`` has its head summed directly.
    """
    if u < _HEAD and v - u >= 2 * _HEAD:
        hlo, hhi = _short_enclosures(np.array([u], dtype=np.int64),
                                     np.array([_HEAD - 1], dtype=np.int64), mode, bits)[0]
        tlo, thi = _analytic_enclosure(_HEAD, v, mode, bits)
        return hlo + tlo, hhi + thi
    one = 1 << bits
    if mode == "log":
        llo, lhi = _exact.log_bounds(v, u, bits)
        fu_lo, fu_hi, fv_lo = one // u, _exact.ceil_div(one, u), one // v
        lo = llo + max(fv_lo, (fu_lo + fv_lo) // 2)
        hi = min(lhi + fu_hi, _exact.log_bounds(2 * v + 1, 2 * u - 1, bits)[1])
        return lo, hi
    p, q = mode.numerator, mode.denominator
    ulo, uhi = _exact.root_bounds(u, p, q, bits)
    vlo, vhi = _exact.root_bounds(v, p, q, bits)
    # integral of x**(r-1) over [u, v] is (v**r - u**r) / r
    ilo = (vlo - uhi) * q // p
    lo = ilo + max(vlo // v, (ulo // u + vlo // v) // 2)
    hi = _exact.ceil_div((vhi - ulo) * q, p) + _exact.ceil_div(uhi, u)
    mlo = _half_root_bounds(2 * u - 1, p, q, bits)[0]
    mhi = _half_root_bounds(2 * v + 1, p, q, bits)[1]
    hi = min(hi, _exact.ceil_div((mhi - mlo) * q, p))
    return lo, hi


def _is_short(u: int, v: int, exact_threshold: int) -> bool:
    return v - u < exact_threshold and v < _FLOAT_EXACT


def _piece(u: int, v: int, mode, exact_threshold: int, bits: int) -> tuple[int, int]:
    if _is_short(u, v, exact_threshold):
        return _short_enclosures(np.array([u], dtype=np.int64), np.array([v], dtype=np.int64),
                                 mode, bits)[0]
    return _analytic_enclosure(u, v, mode, bits)


def _prefix(A: IntegerSet, mode, exact_threshold: int, bits: int) -> tuple[list[int], list[int]]:
    key = (mode, exact_threshold, bits)
    cache = A.kernel_cache
    if key in cache:
        return cache[key]
    encl: list = [None] * len(A.intervals)
    short_idx = [i for i, (u, v) in enumerate(A.intervals) if _is_short(u, v, exact_threshold)]
    if short_idx:
        los = np.array([A.intervals[i][0] for i in short_idx], dtype=np.int64)
        his = np.array([A.intervals[i][1] for i in short_idx], dtype=np.int64)
        for i, e in zip(short_idx, _short_enclosures(los, his, mode, bits)):
            encl[i] = e
    for i, (u, v) in enumerate(A.intervals):
        if encl[i] is None:
            encl[i] = _analytic_enclosure(u, v, mode, bits)
    plo, phi = [0], [0]
    for lo, hi in encl:
        plo.append(plo[-1] + lo)
        phi.append(phi[-1] + hi)
    cache[key] = (plo, phi)
    return plo, phi


def _window_fixed(A: IntegerSet, a: int, b: int, mode, exact_threshold: int,
                  bits: int) -> tuple[int, int]:
    i, j = A.window_index_range(a, b)
    if i >= j:
        return 0, 0
    plo, phi = _prefix(A, mode, exact_threshold, bits)

    def whole_or_clipped(idx: int) -> tuple[int, int]:
        u, v = A.intervals[idx]
        cu, cv = max(u, a), min(v, b)
        if (cu, cv) == (u, v):
            return plo[idx + 1] - plo[idx], phi[idx + 1] - phi[idx]
        return _piece(cu, cv, mode, exact_threshold, bits)

    lo, hi = whole_or_clipped(i)
    if j - i > 1:
        elo, ehi = whole_or_clipped(j - 1)
        # intervals strictly between the first and last lie inside [a, b]
        lo += elo + plo[j - 1] - plo[i + 1]
        hi += ehi + phi[j - 1] - phi[i + 1]
    return lo, hi


# -- partial sums -----------------------------------------------------------

def partial_sum_r(A: IntegerSet, a: int, b: int, r, exact_threshold: int = EXACT_THRESHOLD,
                  precision: int = PRECISION) -> Enclosure:
    """Enclosure of ``sum(x**(r-1) for x in A if a <= x <= b)``.

    For ``r == 1`` this is the exact member count.
    """
    if a > b:
        raise ValueError(f"empty window [{a}, {b}]")
    r = as_exponent(r)
    if r == 1:
        return Enclosure.point(A.count_in(a, b))
    if a < 1:
        raise ValueError("window must start at 1 or later for r < 1")
    lo, hi = _window_fixed(A, a, b, r, exact_threshold, precision)
    return Enclosure.from_fixed(lo, hi, precision)


def partial_sum_log(A: IntegerSet, a: int, b: int, exact_threshold: int = EXACT_THRESHOLD,
                    precision: int = PRECISION) -> Enclosure:
    """Enclosure of ``sum(1/x for x in A if a <= x <= b)``."""
    if a > b:
        raise ValueError(f"empty window [{a}, {b}]")
    if a < 1:
        raise ValueError("window must start at 1 or later")
    lo, hi = _window_fixed(A, a, b, "log", exact_threshold, precision)
    return Enclosure.from_fixed(lo, hi, precision)


def _power_enclosure(n: int, r: Fraction, bits: int) -> Enclosure:
    lo, hi = _exact.root_bounds(n, r.numerator, r.denominator, bits)
    return Enclosure.from_fixed(lo, hi, bits)


def _ln_enclosure(n: int, bits: int) -> Enclosure:
    lo, hi = _exact.log_bounds(n, 1, bits)
    return Enclosure.from_fixed(lo, hi, bits)


_FULL_CACHE: dict = {}


def _full_sum(n: int, r: Optional[Fraction], exact_threshold: int, precision: int) -> Enclosure:
    key = (n, r, exact_threshold, precision)
    if key not in _FULL_CACHE:
        full = IntegerSet(((1, n),))
        # the normalizer is summed term by term while that stays cheap
        exact_threshold = max(exact_threshold, min(n, 1 << 24))
        _FULL_CACHE[key] = (partial_sum_log(full, 1, n, exact_threshold, precision) if r is None
                            else partial_sum_r(full, 1, n, r, exact_threshold, precision))
    return _FULL_CACHE[key]


# -- densities at a horizon -------------------------------------------------

def r_density_at(A: IntegerSet, n: int, r, exact_threshold: int = EXACT_THRESHOLD,
                 precision: int = PRECISION, normalization: str = "definition") -> DensityEstimate:
    """``(r / n**r) * sum_{x in A, x <= n} x**(r-1)`` as an enclosure.

    With ``normalization="relative"`` the sum is divided instead by the same
    sum over all of ``[1, n]``.  Both normalizations have the same limits;
    the relative one removes the ``zeta(1-r)/n**r`` offset at finite n.
    """
    if n < 1:
        raise ValueError("horizon must be positive")
    r = as_exponent(r)
    S = partial_sum_r(A, 1, n, r, exact_threshold, precision)
    if normalization == "relative":
        value = S.divide(_full_sum(n, r, exact_threshold, precision))
    elif r == 1:
        value = S.scale(Fraction(1, n))
    else:
        value = S.scale(r).divide(_power_enclosure(n, r, precision))
    return DensityEstimate(value.rounded(precision), WindowSpec(1, n, "prefix"), r)


def log_density_at(A: IntegerSet, n: int, exact_threshold: int = EXACT_THRESHOLD,
                   precision: int = PRECISION, normalization: str = "definition") -> DensityEstimate:
    """``(1 / ln n) * sum_{x in A, x <= n} 1/x`` as an enclosure (n >= 2)."""
    if n < 2:
        raise ValueError("log density needs n >= 2")
    S = partial_sum_log(A, 1, n, exact_threshold, precision)
    if normalization == "relative":
        value = S.divide(_full_sum(n, None, exact_threshold, precision))
    else:
        value = S.divide(_ln_enclosure(n, precision))
    return DensityEstimate(value.rounded(precision), WindowSpec(1, n, "prefix"), None)


# -- Banach windows ---------------------------------------------------------

def r_window_end(k: int, n: int, r, precision: int = PRECISION,
                 cap: int = _exact.PRECISION_CAP) -> int:
    """Largest integer not exceeding ``(k**r + n)**(1/r)``."""
    r = as_exponent(r)
    if r == 1:
        return k + n
    return _exact.floor_shifted_power(k, r, n, 1 / r, precision, cap)


def banach_r_window_value(A: IntegerSet, w: WindowSpec, r, exact_threshold: int = EXACT_THRESHOLD,
                          precision: int = PRECISION,
                          cap: int = _exact.PRECISION_CAP) -> DensityEstimate:
    """``(r/n) * sum over A ∩ [k, (k**r + n)**(1/r)]`` of ``x**(r-1)``.

    Raises UndecidedComparison when the window end cannot be certified.
    """
    if w.kind != "r-window":
        raise ValueError("expected an r-window")
    r = as_exponent(r)
    if w.k < (0 if r == 1 else 1):
        raise ValueError("window start out of range")
    end = r_window_end(w.k, w.n, r, precision, cap)
    S = partial_sum_r(A, w.k, end, r, exact_threshold, precision)
    return DensityEstimate(S.scale(r / w.n).rounded(precision), w, r)


def lbd_window_value(A: IntegerSet, w: WindowSpec, exact_threshold: int = EXACT_THRESHOLD,
                     precision: int = PRECISION) -> DensityEstimate:
    """``(1/ln n) * sum over A ∩ [k, n*k]`` of ``1/x``."""
    if w.kind != "log-window":
        raise ValueError("expected a log-window")
    if w.k < 1:
        raise ValueError("window start must be positive")
    S = partial_sum_log(A, w.k, w.n * w.k, exact_threshold, precision)
    return DensityEstimate(S.divide(_ln_enclosure(w.n, precision)).rounded(precision), w, None)


def default_candidates(A: IntegerSet) -> list[int]:
    """``{1}`` together with the left endpoint of every interval of A."""
    ks = {1}
    ks.update(lo for lo, _ in A.intervals if lo >= 1)
    return sorted(ks)


def banach_sup_estimate(A: IntegerSet, n: int, r=None, candidates: Optional[Iterable[int]] = None,
                        exact_threshold: int = EXACT_THRESHOLD, precision: int = PRECISION,
                        cap: int = _exact.PRECISION_CAP) -> tuple[DensityEstimate, int]:
    """Best window over a finite candidate list; a lower bound on the sup at scale n.

    ``r`` given selects r-windows, ``r=None`` selects log-windows.  The best
    window maximizes the certified lower end, ties going to the smaller k.
    """
    ks = sorted(set(default_candidates(A) if candidates is None else candidates))
    if not ks:
        raise ValueError("candidate list is empty")
    best: Optional[DensityEstimate] = None
    best_k = ks[0]
    for k in ks:
        if r is None:
            est = lbd_window_value(A, WindowSpec(k, n, "log-window"), exact_threshold, precision)
        else:
            est = banach_r_window_value(A, WindowSpec(k, n, "r-window"), r,
                                        exact_threshold, precision, cap)
        if best is None or est.value.lo > best.value.lo:
            best, best_k = est, k
    return best, best_k


# -- horizon curves ---------------------------------------------------------

def horizon_grid(start: int, ratio: Number, count: int) -> list[int]:
    """Geometric grid of integer horizons ``start, start*ratio, ...`` (deduplicated)."""
    ratio = Fraction(ratio)
    if ratio <= 1:
        raise ValueError("horizon ratio must exceed 1")
    out, h = [], Fraction(start)
    for _ in range(count):
        v = math.floor(h)
        if not out or v > out[-1]:
            out.append(v)
        h *= ratio
    return out


def density_curve(A: IntegerSet, kind: str, horizons: Sequence[int], r=None,
                  candidates: Optional[Iterable[int]] = None,
                  exact_threshold: int = EXACT_THRESHOLD, precision: int = PRECISION,
                  normalization: str = "definition") -> list[tuple[int, int, DensityEstimate]]:
    """Rows ``(horizon, k, estimate)`` for one of ``r``, ``log``, ``banach-r``, ``lbd``."""
    rows = []
    cands = None if candidates is None else list(candidates)
    for n in horizons:
        if kind == "r":
            est, k = r_density_at(A, n, r, exact_threshold, precision, normalization), 1
        elif kind == "log":
            est, k = log_density_at(A, n, exact_threshold, precision, normalization), 1
        elif kind == "banach-r":
            est, k = banach_sup_estimate(A, n, as_exponent(r), cands, exact_threshold, precision)
        elif kind == "lbd":
            est, k = banach_sup_estimate(A, n, None, cands, exact_threshold, precision)
        else:
            raise ValueError(f"unknown density kind {kind!r}")
        rows.append((n, k, est))
    return rows
