"""Orbit-space entropies of finite relations.

Two Bowen-Dinaburg style families live here.  The orbit family works on the
space of n-orbits with the max metric over coordinates: separated sets must
be pairwise more than eps apart (strict), spanning sets reach every orbit
within eps (weak).  The bottleneck family works on points of the carrier
with the pseudometric given by the smallest achievable bottleneck (max
coordinate distance) over pairs of n-orbits issuing from the two points.

Counts are exact maximum-independent-set / minimum-set-cover solves while the
instance is below the configured threshold; larger instances fall back to
greedy bounds flagged ``exact=False``.  All distance comparisons are exact
rational comparisons; numpy only ever combines precomputed boolean facts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .carriers import FiniteRelation, HyperspaceLift, hyperspace_lift
from .estimates import EntropyEstimate, build_estimate, count_estimate
from .intervals import as_fraction
from . import solvers

DEFAULT_SEPARATED_THRESHOLD = 2000
DEFAULT_ORBIT_CAP = 10_000_000


class OrbitCapError(RuntimeError):
    """Raised when the exact orbit count would exceed the enumeration cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"orbit space has {count} elements, cap is {cap}")


@dataclass(frozen=True)
class OrbitSet:
    """All n-orbits of a relation in lexicographic order."""

    n: int
    orbits: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.orbits)


def count_orbits(phi: FiniteRelation, n: int) -> int:
    """Exact |Orb_n| by dynamic programming, without enumeration."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = [1] * phi.space.n
    for _ in range(n - 1):
        nxt = []
        for m in phi.masks:
            total = 0
            mm = m
            while mm:
                low = mm & -mm
                total += counts[low.bit_length() - 1]
                mm ^= low
            nxt.append(total)
        counts = nxt
    return sum(counts)


def enumerate_orbits(
    phi: FiniteRelation, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> OrbitSet:
    total = count_orbits(phi, n)
    if total > cap:
        raise OrbitCapError(total, cap)
    values = [sorted(phi.value_set(i)) for i in range(phi.space.n)]
    out: list[tuple[int, ...]] = []
    if n == 1:
        out = [(x,) for x in range(phi.space.n)]
    else:
        stack: list[int] = []

        def rec(x: int) -> None:
            stack.append(x)
            if len(stack) == n:
                out.append(tuple(stack))
            else:
                for y in values[x]:
                    rec(y)
            stack.pop()

        for x in range(phi.space.n):
            rec(x)
    return OrbitSet(n=n, orbits=tuple(out))


def dn_distance(
    space, u: Sequence[int], v: Sequence[int]
) -> Fraction:
    """Max metric on orbit tuples of equal length."""
    if len(u) != len(v):
        raise ValueError("orbit lengths differ")
    return max(space.dist[a][b] for a, b in zip(u, v))


def _close_matrix(space, eps: Fraction) -> list[list[bool]]:
    n = space.n
    return [[space.dist[i][j] <= eps for j in range(n)] for i in range(n)]


def _conflict_masks(
    orbits: Sequence[tuple[int, ...]], close: list[list[bool]]
) -> list[int]:
    """Adjacency bitmasks of the graph joining orbits at dn <= eps (self bits
    cleared).  Exact: thresholding happened in `close`."""
    m = len(orbits)
    if m <= 64:
        adj = [0] * m
        for i in range(m):
            oi = orbits[i]
            for j in range(i + 1, m):
                oj = orbits[j]
                if all(close[a][b] for a, b in zip(oi, oj)):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return adj
    arr = np.asarray(orbits, dtype=np.int16)
    close_np = np.asarray(close, dtype=bool)
    adj = [0] * m
    block = max(1, (8 << 20) // (m * arr.shape[1] + 1))
    for start in range(0, m, block):
        stop = min(m, start + block)
        sub = close_np[arr[start:stop, None, :], arr[None, :, :]].all(axis=2)
        for bi in range(stop - start):
            row = np.packbits(sub[bi], bitorder="little").tobytes()
            mask = int.from_bytes(row, "little")
            adj[start + bi] = mask & ~(1 << (start + bi))
    return adj


@dataclass(frozen=True)
class CountResult:
    value: int
    exact: bool
    witness: tuple[int, ...] = ()

    def __int__(self) -> int:
        return self.value


def _split_isolated(adj: list[int]) -> tuple[list[int], list[int]]:
    iso = [i for i, a in enumerate(adj) if a == 0]
    rest = [i for i, a in enumerate(adj) if a != 0]
    return iso, rest


def _induced(adj: list[int], keep: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        m = 0
        a = adj[v]
        while a:
            low = a & -a
            w = low.bit_length() - 1
            a ^= low
            if w in pos:
                m |= 1 << pos[w]
        out.append(m)
    return out


def _separated_from_adj(adj: list[int], threshold: int) -> CountResult:
    # vertices with no conflicts belong to every maximum separated set
    iso, rest = _split_isolated(adj)
    if not rest:
        return CountResult(len(iso), True, tuple(iso))
    sub = _induced(adj, rest)
    if len(sub) <= threshold:
        size, mask = solvers.max_independent_set(sub)
        witness = tuple(iso) + tuple(rest[i] for i in _mask_bits(mask))
        return CountResult(len(iso) + size, True, witness)
    mask = solvers.greedy_independent_set(sub)
    witness = tuple(iso) + tuple(rest[i] for i in _mask_bits(mask))
    return CountResult(len(iso) + mask.bit_count(), False, witness)


def _spanning_from_adj(adj: list[int], threshold: int) -> CountResult:
    # an isolated vertex is reached by no other ball and covers only itself
    iso, rest = _split_isolated(adj)
    if not rest:
        return CountResult(len(iso), True, tuple(iso))
    sub = _induced(adj, rest)
    universe = (1 << len(sub)) - 1
    balls = [sub[i] | (1 << i) for i in range(len(sub))]
    if len(sub) <= threshold:
        size, chosen = solvers.min_set_cover(balls, universe)
        witness = tuple(iso) + tuple(rest[i] for i in chosen)
        return CountResult(len(iso) + size, True, witness)
    chosen = tuple(solvers.greedy_set_cover(balls, universe))
    witness = tuple(iso) + tuple(rest[i] for i in chosen)
    return CountResult(len(iso) + len(chosen), False, witness)


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def orbit_separated_count(
    phi: FiniteRelation,
    eps,
    n: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
    cap: int = DEFAULT_ORBIT_CAP,
) -> CountResult:
    """Largest set of n-orbits pairwise more than eps apart in the max metric."""
    e = as_fraction(eps)
    orbits = enumerate_orbits(phi, n, cap).orbits
    adj = _conflict_masks(orbits, _close_matrix(phi.space, e))
    return _separated_from_adj(adj, threshold)


def orbit_spanning_count(
    phi: FiniteRelation,
    eps,
    n: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
    cap: int = DEFAULT_ORBIT_CAP,
) -> CountResult:
    """Smallest set of n-orbits whose eps-balls (weak inequality) cover the
    orbit space."""
    e = as_fraction(eps)
    orbits = enumerate_orbits(phi, n, cap).orbits
    adj = _conflict_masks(orbits, _close_matrix(phi.space, e))
    return _spanning_from_adj(adj, threshold)


def orbit_entropy_estimates(
    phi: FiniteRelation,
    eps_ladder: Sequence,
    depth: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
    cap: int = DEFAULT_ORBIT_CAP,
) -> dict:
    """Per-eps pair of estimates {"sep": ..., "span": ...} from exact counts
    (the spanning count never exceeds the separated count at any level)."""
    out = {}
    for eps in eps_ladder:
        e = as_fraction(eps)
        close = _close_matrix(phi.space, e)
        sep_counts = []
        span_counts = []
        exact_sep = exact_span = True
        for n in range(1, depth + 1):
            orbits = enumerate_orbits(phi, n, cap).orbits
            adj = _conflict_masks(orbits, close)
            s = _separated_from_adj(adj, threshold)
            r = _spanning_from_adj(adj, threshold)
            exact_sep = exact_sep and s.exact
            exact_span = exact_span and r.exact
            sep_counts.append((n, s.value))
            span_counts.append((n, r.value))
        out[e] = {
            "sep": count_estimate(sep_counts, params={"eps": str(e)}, exact=exact_sep),
            "span": count_estimate(span_counts, params={"eps": str(e)}, exact=exact_span),
        }
    return out


# ---------------------------------------------------------------------------
# bottleneck pseudometric family
# ---------------------------------------------------------------------------


def bottleneck_distance_matrix(
    phi: FiniteRelation, n: int
) -> list[list[Fraction]]:
    """d(x,y) = min over pairs of n-orbits from x and y of the max coordinate
    distance, for all pairs at once.  Dynamic program on the product graph:
    the best bottleneck for (x, y) at depth k+1 is the current distance maxed
    with the best depth-k bottleneck over successor pairs."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = phi.space.n
    dist = phi.space.dist
    vals = [list(_mask_bits(m)) for m in phi.masks]
    cur = [[dist[a][b] for b in range(size)] for a in range(size)]
    for _ in range(n - 1):
        nxt = [[None] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                best = None
                for a2 in vals[a]:
                    row = cur[a2]
                    for b2 in vals[b]:
                        v = row[b2]
                        if best is None or v < best:
                            best = v
                d = dist[a][b]
                nxt[a][b] = d if d > best else best
        cur = nxt
    return cur


def bottleneck_distance(phi: FiniteRelation, x: int, y: int, n: int) -> Fraction:
    return bottleneck_distance_matrix(phi, n)[x][y]


def _adj_from_matrix(mat: list[list[Fraction]], eps: Fraction) -> list[int]:
    m = len(mat)
    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if mat[i][j] <= eps:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def bottleneck_separated_count(
    phi: FiniteRelation,
    eps,
    n: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
) -> CountResult:
    """Largest set of carrier points pairwise more than eps apart in the
    depth-n bottleneck pseudometric."""
    mat = bottleneck_distance_matrix(phi, n)
    return _separated_from_adj(_adj_from_matrix(mat, as_fraction(eps)), threshold)


def bottleneck_spanning_count(
    phi: FiniteRelation,
    eps,
    n: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
) -> CountResult:
    mat = bottleneck_distance_matrix(phi, n)
    return _spanning_from_adj(_adj_from_matrix(mat, as_fraction(eps)), threshold)


def bottleneck_entropy_estimates(
    phi: FiniteRelation,
    eps_ladder: Sequence,
    depth: int,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
) -> dict:
    out = {}
    for eps in eps_ladder:
        e = as_fraction(eps)
        sep_counts = []
        span_counts = []
        exact_sep = exact_span = True
        for n in range(1, depth + 1):
            mat = bottleneck_distance_matrix(phi, n)
            adj = _adj_from_matrix(mat, e)
            s = _separated_from_adj(adj, threshold)
            r = _spanning_from_adj(adj, threshold)
            exact_sep = exact_sep and s.exact
            exact_span = exact_span and r.exact
            sep_counts.append((n, s.value))
            span_counts.append((n, r.value))
        out[e] = {
            "sep": count_estimate(sep_counts, params={"eps": str(e)}, exact=exact_sep),
            "span": count_estimate(span_counts, params={"eps": str(e)}, exact=exact_span),
        }
    return out


# ---------------------------------------------------------------------------
# hyperspace entropy
# ---------------------------------------------------------------------------


def hyperspace_entropy_estimate(
    phi: FiniteRelation,
    eps_ladder: Sequence,
    depth: int,
    cap: int = 12,
    threshold: int = DEFAULT_SEPARATED_THRESHOLD,
) -> dict:
    """Separated-count estimates of the single-valued subset lift under the
    Hausdorff metric (classical Bowen entropy of the lifted map)."""
    lift = hyperspace_lift(phi, cap)
    return orbit_entropy_estimates(lift.relation, eps_ladder, depth, threshold)
