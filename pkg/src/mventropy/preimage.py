"""Large and small preimages of sets under multivalued maps.

The large preimage of B collects the points whose value set meets B; the
small preimage collects the points whose value set is contained in B.  Both
are exact on both carriers: bitmask arithmetic on finite relations, symbolic
branch inversion on PL interval maps.  Iterated large preimages apply the
one-step operator k times, which agrees with the large preimage under the
k-th iterate of the map.
"""

from __future__ import annotations

from typing import Union

from .carriers import FiniteRelation, PLMultiMap
from .intervals import IntervalSet

Carrier = Union[FiniteRelation, PLMultiMap]
SubSet = Union[int, IntervalSet]


def large_preimage(phi: Carrier, target: SubSet) -> SubSet:
    """{x : phi(x) intersects target}."""
    return phi.large_preimage(target)


def small_preimage(phi: Carrier, target: SubSet) -> SubSet:
    """{x : phi(x) contained in target}."""
    return phi.small_preimage(target)


def iterated_large_preimage(phi: Carrier, target: SubSet, k: int) -> SubSet:
    """k-fold large preimage; k = 0 returns the target unchanged."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = target
    for _ in range(k):
        out = phi.large_preimage(out)
    return out
