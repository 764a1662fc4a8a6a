"""Finite-horizon entropy estimates.

A limit like ``limsup (1/n) log c(n)`` is only ever sampled at desk scale, so
an estimate keeps the whole sequence of per-depth values, a "reported" limsup
proxy (the maximum over the tail ``n >= ceil(N/2)``), and the parameters that
produced it.  When the per-depth raw counts are available they are kept too,
together with a growth diagnostic: the maximum tail increment
``log c(n+1) - log c(n)``, which is exactly 0 for eventually constant counts
and exactly ``log b`` for pure geometric growth ``c(n) = b^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence


def tail_start(max_n: int) -> int:
    return -(-max_n // 2)


@dataclass(frozen=True)
class EntropyEstimate:
    values: tuple[tuple[int, float], ...]
    reported: float
    params: Mapping[str, Any] = field(default_factory=dict)
    counts: Optional[tuple[tuple[int, int], ...]] = None
    exact: bool = True

    @property
    def max_n(self) -> int:
        return self.values[-1][0]

    def value_at(self, n: int) -> float:
        for m, v in self.values:
            if m == n:
                return v
        raise KeyError(n)

    def count_at(self, n: int) -> int:
        if self.counts is None:
            raise ValueError("no raw counts recorded")
        for m, c in self.counts:
            if m == n:
                return c
        raise KeyError(n)

    @property
    def growth(self) -> Optional[float]:
        """Max tail increment of log-counts; None when counts are missing."""
        if self.counts is None or len(self.counts) < 2:
            return None
        start = tail_start(self.max_n)
        incs = [
            math.log(c2) - math.log(c1)
            for (n1, c1), (n2, c2) in zip(self.counts, self.counts[1:])
            if n2 >= start
        ]
        return max(incs) if incs else 0.0

    def rows(self) -> list[dict]:
        out = []
        for i, (n, v) in enumerate(self.values):
            row = {"n": n, "value": v}
            if self.counts is not None:
                row["count"] = self.counts[i][1]
            out.append(row)
        return out

    def to_json(self) -> dict:
        return {
            "values": [[n, v] for n, v in self.values],
            "counts": None if self.counts is None else [[n, c] for n, c in self.counts],
            "reported": self.reported,
            "growth": self.growth,
            "exact": self.exact,
            "params": dict(self.params),
        }


def build_estimate(
    values: Sequence[tuple[int, float]],
    params: Optional[Mapping[str, Any]] = None,
    counts: Optional[Sequence[tuple[int, int]]] = None,
    exact: bool = True,
) -> EntropyEstimate:
    values = tuple(values)
    if not values:
        raise ValueError("estimate needs at least one depth")
    ns = [n for n, _ in values]
    if ns != list(range(1, len(ns) + 1)):
        raise ValueError("values must cover n = 1..N without gaps")
    start = tail_start(ns[-1])
    reported = max(v for n, v in values if n >= start)
    return EntropyEstimate(
        values=values,
        reported=reported,
        params=dict(params or {}),
        counts=None if counts is None else tuple(counts),
        exact=exact,
    )


def count_estimate(
    counts: Sequence[tuple[int, int]],
    params: Optional[Mapping[str, Any]] = None,
    exact: bool = True,
) -> EntropyEstimate:
    """Estimate from raw positive counts: value(n) = log(c(n)) / n."""
    values = [(n, math.log(c) / n) for n, c in counts]
    return build_estimate(values, params=params, counts=counts, exact=exact)
