"""Seeded random instances for the property suites and tests.

Everything is driven by a caller-supplied ``random.Random`` so suites are
reproducible: same seed, same instances, byte-identical reports.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .carriers import FiniteMetricSpace, FiniteRelation
from .intervals import IntervalSet
from .partitions import FiniteMeasure, OrderedPartition
from .covers import Cover


def random_space(rng: random.Random, n: int) -> FiniteMetricSpace:
    """Either points on a rational line grid or a uniform metric."""
    if rng.random() < 0.5:
        den = rng.choice([8, 12, 16])
        pts = rng.sample(range(den + 1), n)
        return FiniteMetricSpace.from_line_points(
            sorted(Fraction(p, den) for p in pts)
        )
    return FiniteMetricSpace.uniform(n, Fraction(rng.randint(1, 3), 2))


def random_relation(
    rng: random.Random, n: int, space: Optional[FiniteMetricSpace] = None
) -> FiniteRelation:
    if space is None:
        space = random_space(rng, n)
    masks = []
    for _ in range(n):
        k = 1 + min(rng.randrange(n), rng.randrange(n))  # biased small
        masks.append(sum(1 << y for y in rng.sample(range(n), k)))
    return FiniteRelation(space, masks)


def random_selectable_relation(
    rng: random.Random, n: int, max_product: int = 1000
) -> FiniteRelation:
    """Relation whose selection count stays within max_product."""
    space = random_space(rng, n)
    while True:
        masks = []
        product = 1
        for _ in range(n):
            k = min(rng.choice([1, 1, 1, 2, 2, 3]), n)
            product *= k
            masks.append(sum(1 << y for y in rng.sample(range(n), k)))
        if product <= max_product:
            return FiniteRelation(space, masks)


def random_measure(rng: random.Random, n: int, denom: int = 64) -> FiniteMeasure:
    cuts = sorted(rng.randrange(denom + 1) for _ in range(n - 1))
    parts = []
    prev = 0
    for c in cuts:
        parts.append(c - prev)
        prev = c
    parts.append(denom - prev)
    return FiniteMeasure([Fraction(p, denom) for p in parts])


def random_partition_masks(rng: random.Random, n: int, k: int) -> OrderedPartition:
    """Random ordered partition of n points into at most k blocks."""
    k = min(k, n)
    blocks = [0] * k
    order = list(range(n))
    rng.shuffle(order)
    for i, x in enumerate(order[:k]):
        blocks[i] |= 1 << x  # every block nonempty
    for x in order[k:]:
        blocks[rng.randrange(k)] |= 1 << x
    return OrderedPartition(blocks, (1 << n) - 1)


def random_cover_masks(rng: random.Random, n: int, k: int) -> Cover:
    """Random cover by k subsets; uncovered points are patched into random members."""
    universe = (1 << n) - 1
    members = []
    for _ in range(k):
        size = 1 + rng.randrange(n)
        members.append(sum(1 << y for y in rng.sample(range(n), size)))
    covered = 0
    for m in members:
        covered |= m
    for x in range(n):
        if not covered & (1 << x):
            members[rng.randrange(k)] |= 1 << x
    return Cover(members, universe)


def random_intervalset(rng: random.Random, den: int = 16, max_pieces: int = 3) -> IntervalSet:
    raw = []
    for _ in range(1 + rng.randrange(max_pieces)):
        a, b = sorted(rng.sample(range(den + 1), 2))
        raw.append(
            (Fraction(a, den), rng.random() < 0.5, Fraction(b, den), rng.random() < 0.5)
        )
    if rng.random() < 0.3:
        p = Fraction(rng.randrange(den + 1), den)
        raw.append((p, True, p, True))
    return IntervalSet.from_pieces(raw)


def random_interval_partition(rng: random.Random, den: int = 16) -> OrderedPartition:
    """Partition of [0,1] at random grid cuts, half-open pieces, shuffled order."""
    k = rng.randint(1, 4)
    cuts = sorted(rng.sample(range(1, den), k))
    points = [Fraction(0)] + [Fraction(c, den) for c in cuts] + [Fraction(1)]
    pieces = [IntervalSet.interval(points[0], points[1])]
    for a, b in zip(points[1:], points[2:]):
        pieces.append(IntervalSet.interval(a, b, lo_closed=False))
    rng.shuffle(pieces)
    return OrderedPartition(pieces, IntervalSet.full())
