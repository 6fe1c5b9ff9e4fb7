"""Finite subsets of the naturals stored as sorted unions of integer intervals."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

IntervalLike = Sequence[int]


def _merge(raw: Iterable[IntervalLike], min_value: int) -> tuple[tuple[int, int], ...]:
    pairs = []
    for item in raw:
        lo, hi = int(item[0]), int(item[1])
        if lo < min_value:
            raise ValueError(f"interval [{lo}, {hi}] starts below {min_value}")
        if lo > hi:
            raise ValueError(f"interval [{lo}, {hi}] has lo > hi")
        pairs.append((lo, hi))
    pairs.sort()
    out: list[list[int]] = []
    for lo, hi in pairs:
        # adjacent intervals are coalesced too
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class IntegerSet:
    """Immutable, canonical interval union.

    ``intervals`` is sorted, pairwise disjoint and non-adjacent, so two sets
    are equal exactly when their representations are.  ``provenance`` is an
    optional tag naming the generator that produced the set and does not
    take part in equality.
    """

    intervals: tuple[tuple[int, int], ...] = ()
    provenance: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_intervals(cls, raw: Iterable[IntervalLike], provenance: Optional[str] = None,
                       min_value: int = 1) -> "IntegerSet":
        return cls(_merge(raw, min_value), provenance)

    @classmethod
    def from_elements(cls, elements: Iterable[int], provenance: Optional[str] = None,
                      min_value: int = 1) -> "IntegerSet":
        return cls(_merge(((x, x) for x in elements), min_value), provenance)

    @classmethod
    def from_mask(cls, mask: np.ndarray, offset: int = 0,
                  provenance: Optional[str] = None) -> "IntegerSet":
        """Build from a boolean array where ``mask[i]`` marks ``offset + i``."""
        m = np.concatenate(([False], np.asarray(mask, dtype=bool), [False]))
        edges = np.flatnonzero(m[1:] != m[:-1])
        starts, stops = edges[0::2], edges[1::2] - 1
        return cls(tuple((int(s) + offset, int(e) + offset)
                         for s, e in zip(starts, stops)), provenance)

    # queries ---------------------------------------------------------------

    @cached_property
    def bounds_array(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        """``(los, his)`` as int64 arrays, or None when endpoints exceed int64."""
        if self.intervals and self.intervals[-1][1] >= 2 ** 62:
            return None
        los = np.fromiter(self._los, dtype=np.int64, count=len(self.intervals))
        his = np.fromiter(self._his, dtype=np.int64, count=len(self.intervals))
        return los, his

    @cached_property
    def kernel_cache(self) -> dict:
        """Scratch space for derived per-interval data (prefix sums of enclosures)."""
        return {}

    @cached_property
    def _los(self) -> list[int]:
        return [lo for lo, _ in self.intervals]

    @cached_property
    def _his(self) -> list[int]:
        return [hi for _, hi in self.intervals]

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __contains__(self, x: int) -> bool:
        return self.member(x)

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    @property
    def count(self) -> int:
        """Number of elements."""
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    @property
    def min(self) -> Optional[int]:
        return self.intervals[0][0] if self.intervals else None

    @property
    def max(self) -> Optional[int]:
        return self.intervals[-1][1] if self.intervals else None

    def member(self, x: int) -> bool:
        i = bisect.bisect_right(self._los, x) - 1
        return i >= 0 and x <= self._his[i]

    def predecessor(self, y: int) -> Optional[int]:
        """Largest element not exceeding ``y``, or None."""
        i = bisect.bisect_right(self._los, y) - 1
        if i < 0:
            return None
        return min(y, self._his[i])

    def intersect_window(self, a: int, b: int) -> "IntegerSet":
        if a > b:
            raise ValueError(f"empty window [{a}, {b}]")
        return IntegerSet(tuple(self.window_intervals(a, b)), self.provenance)

    def window_index_range(self, a: int, b: int) -> tuple[int, int]:
        """Half-open index range of the intervals meeting ``[a, b]``."""
        i = bisect.bisect_left(self._his, a)
        j = bisect.bisect_right(self._los, b)
        return i, max(i, j)

    def window_intervals(self, a: int, b: int) -> list[tuple[int, int]]:
        """Clipped intervals of ``self`` meeting ``[a, b]``, without copying the set."""
        if a > b:
            return []
        i = max(bisect.bisect_right(self._los, a) - 1, 0)
        j = bisect.bisect_right(self._los, b)
        out = []
        for lo, hi in self.intervals[i:j]:
            lo, hi = max(lo, a), min(hi, b)
            if lo <= hi:
                out.append((lo, hi))
        return out

    def count_in(self, a: int, b: int) -> int:
        """Number of elements in ``[a, b]``."""
        arrays = self.bounds_array
        if arrays is None or b >= 2 ** 62 or len(self.intervals) < 64:
            return sum(hi - lo + 1 for lo, hi in self.window_intervals(a, b))
        los, his = arrays
        i = max(int(np.searchsorted(los, a, side="right")) - 1, 0)
        j = int(np.searchsorted(los, b, side="right"))
        lo = np.maximum(los[i:j], a)
        hi = np.minimum(his[i:j], b)
        return int(np.clip(hi - lo + 1, 0, None).sum())

    def elements(self, cap: Optional[int] = None) -> list[int]:
        n = self.count
        if cap is not None and n > cap:
            from .errors import ElementCapExceeded
            raise ElementCapExceeded(f"set has {n} elements, cap is {cap}")
        return list(self)

    def tagged(self, provenance: Optional[str]) -> "IntegerSet":
        return IntegerSet(self.intervals, provenance)

    def __repr__(self) -> str:
        shown = list(self.intervals[:4])
        more = "" if len(self.intervals) <= 4 else f", ... ({len(self.intervals)} intervals)"
        tag = f", provenance={self.provenance!r}" if self.provenance else ""
        return f"IntegerSet({shown}{more}{tag})"


EMPTY = IntegerSet()


def normalize(raw_intervals: Iterable[IntervalLike], min_value: int = 1) -> IntegerSet:
    """Sort and coalesce overlapping or adjacent intervals.

    Raises ValueError for an interval with ``lo > hi`` or ``lo < min_value``.
    """
    return IntegerSet.from_intervals(raw_intervals, min_value=min_value)


def member(A: IntegerSet, x: int) -> bool:
    return A.member(x)


def intersect_window(A: IntegerSet, a: int, b: int) -> IntegerSet:
    return A.intersect_window(a, b)


def predecessor(A: IntegerSet, y: int) -> Optional[int]:
    return A.predecessor(y)
