"""Partition entropy machinery: ordered partitions, probability measures,
the order-dependent disjointification of pulled-back partitions, joins,
refinement sequences and finite-horizon metric-entropy estimates.

Partition pieces are bitmasks on finite carriers and IntervalSets on the
interval carrier; all set predicates are exact.  Measures stay rational all
the way through; logarithms enter only in the final entropy numbers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .carriers import FiniteRelation, PLMultiMap
from .estimates import EntropyEstimate, build_estimate
from .intervals import ONE, ZERO, IntervalSet, Rational, as_fraction
from .preimage import iterated_large_preimage

PieceT = Union[int, IntervalSet]


# ---------------------------------------------------------------------------
# generic exact set helpers (bitmask or IntervalSet pieces)
# ---------------------------------------------------------------------------


def piece_is_empty(a: PieceT) -> bool:
    return a == 0 if isinstance(a, int) else a.is_empty


def piece_intersect(a: PieceT, b: PieceT) -> PieceT:
    return a & b if isinstance(a, int) else a.intersect(b)


def piece_union(a: PieceT, b: PieceT) -> PieceT:
    return a | b if isinstance(a, int) else a.union(b)


def piece_difference(a: PieceT, b: PieceT) -> PieceT:
    return a & ~b if isinstance(a, int) else a.difference(b)


def piece_subset(a: PieceT, b: PieceT) -> bool:
    return (a & ~b) == 0 if isinstance(a, int) else a.subset_of(b)


def piece_intersects(a: PieceT, b: PieceT) -> bool:
    return bool(a & b) if isinstance(a, int) else a.intersects(b)


# ---------------------------------------------------------------------------
# ordered partitions
# ---------------------------------------------------------------------------


class OrderedPartition:
    """Ordered list of pairwise-disjoint nonempty pieces covering the carrier.

    The order matters: disjointification subtracts the preimages of earlier
    pieces from later ones.  Zero-measure pieces (e.g. singletons under
    Lebesgue) are legitimate members; only genuinely empty sets are dropped.
    """

    __slots__ = ("pieces", "universe")

    def __init__(self, pieces: Iterable[PieceT], universe: PieceT):
        self.pieces: tuple[PieceT, ...] = tuple(pieces)
        self.universe = universe
        self._validate()

    def _validate(self) -> None:
        if not self.pieces:
            raise ValueError("partition needs at least one piece")
        acc = None
        for p in self.pieces:
            if piece_is_empty(p):
                raise ValueError("empty partition piece")
            acc = p if acc is None else piece_union(acc, p)
        if acc != self.universe:
            raise ValueError("partition does not cover the carrier")
        for i in range(len(self.pieces)):
            for j in range(i + 1, len(self.pieces)):
                if piece_intersects(self.pieces[i], self.pieces[j]):
                    raise ValueError(f"pieces {i} and {j} overlap")

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedPartition):
            return NotImplemented
        return self.pieces == other.pieces and self.universe == other.universe

    def __repr__(self) -> str:
        return f"OrderedPartition({[str(p) for p in self.pieces]})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls, universe: PieceT) -> "OrderedPartition":
        return cls([universe], universe)

    @classmethod
    def from_literals(cls, literals: Sequence[str]) -> "OrderedPartition":
        return cls([IntervalSet.parse(s) for s in literals], IntervalSet.full())

    @classmethod
    def uniform_blocks(cls, m: int) -> "OrderedPartition":
        """[0,1/m], (1/m,2/m], ..., ((m-1)/m, 1]."""
        if m < 1:
            raise ValueError("need m >= 1")
        pieces = [IntervalSet.interval(ZERO, Fraction(1, m))]
        for i in range(1, m):
            pieces.append(
                IntervalSet.interval(
                    Fraction(i, m), Fraction(i + 1, m), lo_closed=False
                )
            )
        return cls(pieces, IntervalSet.full())

    @classmethod
    def singletons(cls, n: int) -> "OrderedPartition":
        return cls([1 << i for i in range(n)], (1 << n) - 1)


# ---------------------------------------------------------------------------
# probability measures
# ---------------------------------------------------------------------------


class FiniteMeasure:
    """Atomic probability measure on a finite carrier."""

    __slots__ = ("weights",)

    def __init__(self, weights: Sequence[Rational]):
        w = tuple(as_fraction(x) for x in weights)
        if any(x < 0 for x in w):
            raise ValueError("negative weight")
        if sum(w) != 1:
            raise ValueError("total mass must be exactly 1")
        self.weights = w

    def mass(self, piece: int) -> Fraction:
        total = Fraction(0)
        m = piece
        while m:
            low = m & -m
            total += self.weights[low.bit_length() - 1]
            m ^= low
        return total

    def scaled(self) -> tuple[list[int], int]:
        """Integer weights over the common denominator."""
        denom = 1
        for w in self.weights:
            denom = denom * w.denominator // math.gcd(denom, w.denominator)
        return [int(w * denom) for w in self.weights], denom

    @classmethod
    def uniform(cls, n: int) -> "FiniteMeasure":
        return cls([Fraction(1, n)] * n)

    def __repr__(self) -> str:
        return f"FiniteMeasure({[str(w) for w in self.weights]})"


class IntervalMeasure:
    """Probability measure on [0,1]: piecewise-constant rational density on
    contiguous cells plus finitely many rational atoms."""

    __slots__ = ("cells", "atoms")

    def __init__(
        self,
        cells: Iterable[tuple[Rational, Rational, Rational]] = ((0, 1, 1),),
        atoms: Iterable[tuple[Rational, Rational]] = (),
    ):
        cs = tuple(
            (as_fraction(a), as_fraction(b), as_fraction(v)) for a, b, v in cells
        )
        if cs[0][0] != ZERO or cs[-1][1] != ONE:
            raise ValueError("density cells must span [0,1]")
        for a, b, v in cs:
            if b <= a:
                raise ValueError("degenerate density cell")
            if v < 0:
                raise ValueError("negative density")
        for (_, b, _), (a2, _, _) in zip(cs, cs[1:]):
            if b != a2:
                raise ValueError("density cells must be contiguous")
        ats = tuple((as_fraction(p), as_fraction(w)) for p, w in atoms)
        for p, w in ats:
            if p < ZERO or p > ONE:
                raise ValueError("atom outside [0,1]")
            if w < 0:
                raise ValueError("negative atom weight")
        total = sum(v * (b - a) for a, b, v in cs) + sum(w for _, w in ats)
        if total != 1:
            raise ValueError("total mass must be exactly 1")
        self.cells = cs
        self.atoms = ats

    @classmethod
    def lebesgue(cls) -> "IntervalMeasure":
        return cls()

    @property
    def is_lebesgue(self) -> bool:
        return (
            len(self.cells) == 1
            and self.cells[0][2] == 1
            and all(w == 0 for _, w in self.atoms)
        )

    def mass(self, s: IntervalSet) -> Fraction:
        total = Fraction(0)
        for a, b, v in self.cells:
            if v == 0:
                continue
            for lo, _, hi, _ in s.raw_pieces:
                ov = min(hi, b) - max(lo, a)
                if ov > 0:
                    total += v * ov
        for p, w in self.atoms:
            if w != 0 and s.contains(p):
                total += w
        return total

    def __repr__(self) -> str:
        return f"IntervalMeasure(cells={len(self.cells)}, atoms={len(self.atoms)})"


MeasureT = Union[FiniteMeasure, IntervalMeasure]


def mass_of(mu: MeasureT, piece: PieceT) -> Fraction:
    return mu.mass(piece)


# ---------------------------------------------------------------------------
# entropy of partitions
# ---------------------------------------------------------------------------


def xlogx(x) -> float:
    """x * log x with the convention 0 log 0 = 0; natural logarithm."""
    if x < 0:
        raise ValueError("xlogx needs a nonnegative argument")
    if x == 0:
        return 0.0
    xf = float(x)
    return xf * math.log(xf)


def partition_entropy(mu: MeasureT, part: OrderedPartition) -> float:
    return -sum(xlogx(mass_of(mu, p)) for p in part.pieces)


def conditional_entropy(
    mu: MeasureT, part: OrderedPartition, given: OrderedPartition
) -> float:
    total = 0.0
    for d in given.pieces:
        md = mass_of(mu, d)
        if md == 0:
            continue
        mdf = float(md)
        for p in part.pieces:
            mdp = mass_of(mu, piece_intersect(d, p))
            if mdp != 0:
                total -= mdf * xlogx(mdp / md)
    return total


def nz_count(mu: MeasureT, part: OrderedPartition) -> int:
    """Number of pieces with strictly positive measure."""
    return sum(1 for p in part.pieces if mass_of(mu, p) > 0)


def entropy_le_log_count_check(
    mu: MeasureT, part: OrderedPartition, slack: float = 1e-12
) -> bool:
    """H(P) never exceeds the log of the number of positive-measure pieces."""
    nz = nz_count(mu, part)
    h = partition_entropy(mu, part)
    if nz == 0:
        return h <= slack
    return h <= math.log(nz) + slack


# ---------------------------------------------------------------------------
# disjointification, joins, refinement sequences
# ---------------------------------------------------------------------------


def disjointify(
    phi, part: OrderedPartition, k: int
) -> OrderedPartition:
    """Ordered disjointification of the k-fold large preimages: the j-th
    member is the preimage of the j-th piece minus the preimages of all
    earlier pieces; empty members are dropped.  k = 0 returns the partition
    unchanged."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return part
    out: list[PieceT] = []
    acc: Optional[PieceT] = None
    for p in part.pieces:
        pre = iterated_large_preimage(phi, p, k)
        d = pre if acc is None else piece_difference(pre, acc)
        if not piece_is_empty(d):
            out.append(d)
        acc = pre if acc is None else piece_union(acc, pre)
    return OrderedPartition(out, part.universe)


def join_pair(a: OrderedPartition, b: OrderedPartition) -> OrderedPartition:
    pieces = []
    for pa in a.pieces:
        for pb in b.pieces:
            c = piece_intersect(pa, pb)
            if not piece_is_empty(c):
                pieces.append(c)
    return OrderedPartition(pieces, a.universe)


def join_partitions(parts: Sequence[OrderedPartition]) -> OrderedPartition:
    """Common refinement; members ordered lexicographically by member indices."""
    if not parts:
        raise ValueError("need at least one partition")
    out = parts[0]
    for p in parts[1:]:
        out = join_pair(out, p)
    return out


def refinement_sequence(
    phi, part: OrderedPartition, depth: int
) -> list[OrderedPartition]:
    """The joins of the disjointified preimage partitions up to the given
    depth; entry k-1 is the k-fold join (entry 0 is the partition itself)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out = [part]
    current = part
    for k in range(1, depth):
        tilde_k = disjointify(phi, part, k)
        current = join_pair(current, tilde_k)
        out.append(current)
    return out


def metric_entropy_estimate(
    mu: MeasureT, phi, part: OrderedPartition, depth: int
) -> EntropyEstimate:
    """Sequence (1/n) H(join at depth n) for n = 1..depth, with the piece
    counts kept alongside."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    seq = refinement_sequence(phi, part, depth)
    values = []
    counts = []
    for n, pn in enumerate(seq, start=1):
        h = partition_entropy(mu, pn)
        values.append((n, h / n))
        counts.append((n, len(pn)))
    return build_estimate(
        values, params={"partition_size": len(part), "depth": depth}, counts=counts
    )
