"""Cover entropy: pulled-back open covers, joins, exact minimal subcovers
and growth-rate estimates.

On the interval carrier cover members must be relatively open in [0,1];
pulling a cover back through a map that is not lower semicontinuous can break
openness, and that failure is surfaced as an :class:`OpennessViolation`
carrying the offending member rather than silently accepted.  Minimal
subcover cardinalities are exact below a configurable threshold (set cover by
branch and bound); above it a greedy upper bound and a packing lower bound
are reported with ``exact=False``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .carriers import FiniteRelation, PLMultiMap, iterate_relation
from .estimates import EntropyEstimate, build_estimate
from .intervals import ONE, ZERO, IntervalSet, as_fraction
from .partitions import (
    PieceT,
    piece_intersect,
    piece_is_empty,
    piece_subset,
    piece_union,
)
from .preimage import iterated_large_preimage
from . import solvers

DEFAULT_EXACT_THRESHOLD = 22


class OpennessViolation(ValueError):
    """A cover member (or its pullback) is not relatively open in [0,1]."""

    def __init__(self, member: IntervalSet, source: Optional[IntervalSet] = None):
        self.member = member
        self.source = source
        msg = f"cover member is not relatively open: {member}"
        if source is not None:
            msg += f" (pullback of {source})"
        super().__init__(msg)


class Cover:
    """Finite cover of the carrier.  On the interval carrier every member is
    required to be relatively open; on a finite carrier any sets qualify."""

    __slots__ = ("members", "universe")

    def __init__(
        self,
        members: Iterable[PieceT],
        universe: PieceT,
        check_open: bool = True,
        sources: Optional[Sequence[PieceT]] = None,
    ):
        self.members: tuple[PieceT, ...] = tuple(members)
        self.universe = universe
        if not self.members:
            raise ValueError("cover needs at least one member")
        acc = None
        for i, m in enumerate(self.members):
            if piece_is_empty(m):
                raise ValueError("empty cover member")
            if check_open and isinstance(m, IntervalSet) and not m.is_relatively_open():
                src = sources[i] if sources is not None else None
                raise OpennessViolation(m, src)
            acc = m if acc is None else piece_union(acc, m)
        if acc != universe:
            raise ValueError("members do not cover the carrier")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        return f"Cover({[str(m) for m in self.members]})"

    @classmethod
    def from_literals(cls, literals: Sequence[str], check_open: bool = True) -> "Cover":
        return cls(
            [IntervalSet.parse(s) for s in literals],
            IntervalSet.full(),
            check_open=check_open,
        )


def interval_ball_cover(eps: Union[Fraction, int, str]) -> Cover:
    """Relatively open cover of [0,1] by intervals of radius eps around the
    grid points k*eps."""
    e = as_fraction(eps)
    if e <= 0 or e > 1:
        raise ValueError("need 0 < eps <= 1")
    members = []
    k = 0
    while True:
        center = k * e
        lo = max(ZERO, center - e)
        hi = min(ONE, center + e)
        members.append(
            IntervalSet.interval(lo, hi, lo_closed=(lo == ZERO), hi_closed=(hi == ONE))
        )
        if center >= 1:
            break
        k += 1
    return Cover(members, IntervalSet.full())


def finite_ball_cover(phi: FiniteRelation, eps: Union[Fraction, int, str]) -> Cover:
    """Cover of a finite carrier by open balls {y : d(x,y) < eps}, deduplicated."""
    e = as_fraction(eps)
    space = phi.space
    seen = set()
    members = []
    for x in range(space.n):
        mask = 0
        for y in range(space.n):
            if space.dist[x][y] < e:
                mask |= 1 << y
        if mask and mask not in seen:
            seen.add(mask)
            members.append(mask)
    return Cover(members, phi.universe)


def pullback_cover(phi, cover: Cover, j: int) -> Cover:
    """Member-wise j-fold large preimage; the result is checked to cover the
    carrier and, on the interval carrier, to stay relatively open."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return cover
    members = []
    sources = []
    for m in cover.members:
        pre = iterated_large_preimage(phi, m, j)
        if piece_is_empty(pre):
            continue  # a member no value set reaches adds nothing to joins
        members.append(pre)
        sources.append(m)
    return Cover(members, cover.universe, sources=sources)


def cover_join(covers: Sequence[Cover]) -> Cover:
    """All nonempty intersections, one member from each cover, in index-
    lexicographic order with duplicates removed."""
    if not covers:
        raise ValueError("need at least one cover")
    members: list[PieceT] = list(covers[0].members)
    for cov in covers[1:]:
        nxt: list[PieceT] = []
        seen = set()
        for a in members:
            for b in cov.members:
                c = piece_intersect(a, b)
                if piece_is_empty(c):
                    continue
                key = c if isinstance(c, int) else c
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(c)
        members = nxt
    # dedupe the first cover as well when no join happened
    if len(covers) == 1:
        uniq, seen = [], set()
        for m in members:
            if m not in seen:
                seen.add(m)
                uniq.append(m)
        members = uniq
    return Cover(members, covers[0].universe, check_open=False)


@dataclass(frozen=True)
class SubcoverResult:
    size: int
    exact: bool
    lower_bound: int
    chosen: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "exact": self.exact,
            "lower_bound": self.lower_bound,
        }


def _atomize(members: Sequence[IntervalSet]) -> list[IntervalSet]:
    """Minimal cells of the Boolean algebra generated by interval members:
    singletons at every boundary value plus the open intervals in between."""
    vals = {ZERO, ONE}
    for m in members:
        vals.update(m.boundary_values())
    pts = sorted(vals)
    atoms: list[IntervalSet] = []
    for i, v in enumerate(pts):
        atoms.append(IntervalSet.point(v))
        if i + 1 < len(pts):
            atoms.append(
                IntervalSet.interval(v, pts[i + 1], lo_closed=False, hi_closed=False)
            )
    return atoms


def _as_masks(cover: Cover) -> tuple[list[int], int]:
    """Reduce the cover to a finite set-cover instance (member masks over the
    atoms of the generated algebra; identity on finite carriers)."""
    if isinstance(cover.universe, int):
        return list(cover.members), cover.universe
    atoms = _atomize(cover.members)  # type: ignore[arg-type]
    masks = []
    for m in cover.members:
        mask = 0
        for i, atom in enumerate(atoms):
            if atom.subset_of(m):  # atoms never straddle member boundaries
                mask |= 1 << i
        masks.append(mask)
    return masks, (1 << len(atoms)) - 1


def minimal_subcover(
    cover: Cover, exact_threshold: int = DEFAULT_EXACT_THRESHOLD
) -> SubcoverResult:
    """Minimal cardinality of a subcover.  Exact while the member count stays
    within the threshold, otherwise greedy upper bound plus packing lower
    bound flagged inexact."""
    masks, universe = _as_masks(cover)
    if len(masks) <= exact_threshold:
        size, chosen = solvers.min_set_cover(masks, universe)
        return SubcoverResult(size=size, exact=True, lower_bound=size, chosen=chosen)
    chosen = tuple(solvers.greedy_set_cover(masks, universe))
    lb = solvers.set_cover_packing_bound(masks, universe)
    return SubcoverResult(size=len(chosen), exact=False, lower_bound=lb, chosen=chosen)


def cover_entropy_estimate(
    phi,
    cover: Cover,
    depth: int,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> EntropyEstimate:
    """(1/n) log N(join of the first n pullbacks) for n = 1..depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    values = []
    counts = []
    exact = True
    joined = cover_join([cover])
    for n in range(1, depth + 1):
        res = minimal_subcover(joined, exact_threshold)
        exact = exact and res.exact
        counts.append((n, res.size))
        values.append((n, math.log(res.size) / n))
        if n < depth:
            joined = cover_join([joined, pullback_cover(phi, cover, n)])
    return build_estimate(
        values,
        params={"cover_size": len(cover), "depth": depth},
        counts=counts,
        exact=exact,
    )


def cover_entropy_ladder(
    phi,
    eps_ladder: Sequence,
    depth: int,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> dict:
    """Per-epsilon cover-entropy estimates over ball covers of the carrier.
    The supremum over all open covers is not computable; the ladder is
    reported value by value."""
    out = {}
    for eps in eps_ladder:
        e = as_fraction(eps)
        cov = (
            finite_ball_cover(phi, e)
            if isinstance(phi, FiniteRelation)
            else interval_ball_cover(e)
        )
        out[e] = cover_entropy_estimate(phi, cov, depth, exact_threshold)
    return out


@dataclass(frozen=True)
class IterateRefinementResult:
    refines: bool
    coarse_subcover: int
    fine_subcover: int

    @property
    def ok(self) -> bool:
        return self.refines and self.coarse_subcover <= self.fine_subcover


def iterate_refinement_check(
    phi: FiniteRelation, cover: Cover, n: int, k: int
) -> IterateRefinementResult:
    """Finite form of the iterate inequality: the depth-(n*k) join under phi
    refines the depth-n join under phi^k, and the minimal subcover numbers
    are ordered accordingly.  Exact on finite carriers (no greedy fallback)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    phik = iterate_relation(phi, k)
    fine = cover_join([pullback_cover(phi, cover, j) for j in range(n * k)])
    coarse = cover_join([pullback_cover(phik, cover, i) for i in range(n)])
    refines = all(
        any(piece_subset(f, c) for c in coarse.members) for f in fine.members
    )
    no_fallback = 1 << 30
    coarse_n = minimal_subcover(coarse, exact_threshold=no_fallback).size
    fine_n = minimal_subcover(fine, exact_threshold=no_fallback).size
    return IterateRefinementResult(
        refines=refines, coarse_subcover=coarse_n, fine_subcover=fine_n
    )
