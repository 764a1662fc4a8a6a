"""Exact set algebra on finite unions of subintervals of [0, 1].

Endpoints are rationals (`fractions.Fraction`) and every piece carries
open/closed flags on both sides, so emptiness, equality, disjointness and
Lebesgue measure are decided exactly.  The canonical form (sorted, pairwise
disjoint, maximal pieces, degenerate pieces only as closed singletons) is
unique, which makes set equality a tuple comparison.

Internally a boundary is ordered by its position together with an epsilon
offset encoding the flag: as a left endpoint a closed boundary attaches just
before an open one, as a right endpoint an open boundary detaches just before
a closed one.  Sweeping over (value, eps) keys turns normalization, union,
intersection and complement into plain merges.

The textual literal syntax is ``"[0,1/4] u (1/2,3/4) u {1}"`` with rational
endpoints written ``p/q``; ``"{}"`` denotes the empty set.  Canonical forms
round-trip bit-exactly through :func:`IntervalSet.parse` / ``str()``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Sequence, Union

Rational = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}: {x!r}")


def _check_unit(v: Fraction) -> Fraction:
    if v < ZERO or v > ONE:
        raise ValueError(f"endpoint {v} outside [0,1]")
    return v


@total_ordering
@dataclass(frozen=True)
class Boundary:
    """One interval endpoint: exact rational position plus a closed flag.

    Boundaries are totally ordered as left endpoints: at equal positions a
    closed boundary (which includes its point) comes first.
    """

    value: Fraction
    closed: bool

    def sort_key(self) -> tuple[Fraction, int]:
        return (self.value, 0 if self.closed else 1)

    def __lt__(self, other: "Boundary") -> bool:
        return self.sort_key() < other.sort_key()


# A piece is (lo, lo_closed, hi, hi_closed); nonempty iff lo_key <= hi_key.
Piece = tuple[Fraction, bool, Fraction, bool]
Key = tuple[Fraction, int]


def _lo_key(v: Fraction, closed: bool) -> Key:
    return (v, 0 if closed else 1)


def _hi_key(v: Fraction, closed: bool) -> Key:
    return (v, 0 if closed else -1)


def _key_succ(k: Key) -> Key:
    # next boundary key one "ulp" to the right; valid for hi keys (eps <= 0)
    return (k[0], k[1] + 1)


def _key_pred(k: Key) -> Key:
    # previous boundary key; valid for lo keys (eps >= 0)
    return (k[0], k[1] - 1)


def _lo_from_key(k: Key) -> tuple[Fraction, bool]:
    return (k[0], k[1] == 0)


def _hi_from_key(k: Key) -> tuple[Fraction, bool]:
    return (k[0], k[1] == 0)


_PIECE_RE = re.compile(
    r"^\s*([\[\(])\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*([\]\)])\s*$"
)
_SINGLETON_RE = re.compile(r"^\s*\{\s*(-?\d+(?:/\d+)?)\s*\}\s*$")
_EMPTY_RE = re.compile(r"^\s*\{\s*\}\s*$")


class IntervalSet:
    """Canonical finite union of rational-endpoint subintervals of [0, 1]."""

    __slots__ = ("_pieces",)

    def __init__(self, pieces: Iterable[Piece] = (), *, _canonical: bool = False):
        if _canonical:
            self._pieces: tuple[Piece, ...] = tuple(pieces)
        else:
            self._pieces = _normalize(pieces)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def empty(cls) -> "IntervalSet":
        return _EMPTY

    @classmethod
    def full(cls) -> "IntervalSet":
        return _FULL

    @classmethod
    def point(cls, v: Rational) -> "IntervalSet":
        x = _check_unit(as_fraction(v))
        return cls(((x, True, x, True),), _canonical=True)

    @classmethod
    def interval(
        cls,
        lo: Rational,
        hi: Rational,
        lo_closed: bool = True,
        hi_closed: bool = True,
    ) -> "IntervalSet":
        a = _check_unit(as_fraction(lo))
        b = _check_unit(as_fraction(hi))
        return cls(((a, lo_closed, b, hi_closed),))

    @classmethod
    def from_pieces(cls, raw: Iterable[tuple]) -> "IntervalSet":
        """Normalize raw (lo, lo_closed, hi, hi_closed) tuples or Boundary pairs."""
        pieces = []
        for item in raw:
            if len(item) == 2 and isinstance(item[0], Boundary):
                lo, hi = item
                pieces.append((lo.value, lo.closed, hi.value, hi.closed))
            else:
                lo, lc, hi, hc = item
                pieces.append((as_fraction(lo), bool(lc), as_fraction(hi), bool(hc)))
        return cls(pieces)

    @classmethod
    def parse(cls, text: str) -> "IntervalSet":
        """Parse the piece-literal syntax, e.g. ``"[0,1/4] u (1/2,3/4) u {1}"``."""
        text = text.strip()
        if not text:
            raise ValueError("empty interval literal")
        pieces: list[Piece] = []
        for chunk in text.split("u"):
            if _EMPTY_RE.match(chunk):
                continue
            m = _SINGLETON_RE.match(chunk)
            if m:
                v = _check_unit(Fraction(m.group(1)))
                pieces.append((v, True, v, True))
                continue
            m = _PIECE_RE.match(chunk)
            if not m:
                raise ValueError(f"bad interval piece: {chunk!r}")
            lo = _check_unit(Fraction(m.group(2)))
            hi = _check_unit(Fraction(m.group(3)))
            pieces.append((lo, m.group(1) == "[", hi, m.group(4) == "]"))
        return cls(pieces)

    # ------------------------------------------------------------------
    # inspection

    @property
    def pieces(self) -> tuple[tuple[Boundary, Boundary], ...]:
        return tuple(
            (Boundary(lo, lc), Boundary(hi, hc)) for lo, lc, hi, hc in self._pieces
        )

    @property
    def raw_pieces(self) -> tuple[Piece, ...]:
        return self._pieces

    @property
    def is_empty(self) -> bool:
        return not self._pieces

    def __bool__(self) -> bool:
        return bool(self._pieces)

    def contains(self, x: Rational) -> bool:
        v = as_fraction(x)
        key = (v, 0)
        for lo, lc, hi, hc in self._pieces:
            if _lo_key(lo, lc) <= key <= _hi_key(hi, hc):
                return True
            if lo > v:
                break
        return False

    def __contains__(self, x: Rational) -> bool:
        return self.contains(x)

    def lebesgue(self) -> Fraction:
        """Total length; singletons contribute 0."""
        total = ZERO
        for lo, _, hi, _ in self._pieces:
            total += hi - lo
        return total

    def boundary_values(self) -> list[Fraction]:
        vals: set[Fraction] = set()
        for lo, _, hi, _ in self._pieces:
            vals.add(lo)
            vals.add(hi)
        return sorted(vals)

    def distance_to(self, x: Rational) -> Fraction:
        """Infimum distance from x to the set (0 on the closure)."""
        v = as_fraction(x)
        if self.is_empty:
            raise ValueError("distance to the empty set is undefined")
        best = None
        for lo, _, hi, _ in self._pieces:
            if lo <= v <= hi:
                return ZERO
            d = lo - v if v < lo else v - hi
            if best is None or d < best:
                best = d
        return best

    def is_relatively_open(self) -> bool:
        """Open as a subset of [0, 1] (closed flags allowed only at 0 and 1)."""
        for lo, lc, hi, hc in self._pieces:
            if lo == hi:
                return False
            if lc and lo != ZERO:
                return False
            if hc and hi != ONE:
                return False
        return True

    # ------------------------------------------------------------------
    # set algebra

    def union(self, other: "IntervalSet") -> "IntervalSet":
        if not self._pieces:
            return other
        if not other._pieces:
            return self
        return IntervalSet(self._pieces + other._pieces)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out: list[Piece] = []
        a, b = self._pieces, other._pieces
        i = j = 0
        while i < len(a) and j < len(b):
            lo_k = max(_lo_key(a[i][0], a[i][1]), _lo_key(b[j][0], b[j][1]))
            a_hi = _hi_key(a[i][2], a[i][3])
            b_hi = _hi_key(b[j][2], b[j][3])
            hi_k = min(a_hi, b_hi)
            if lo_k <= hi_k:
                lo, lc = _lo_from_key(lo_k)
                hi, hc = _hi_from_key(hi_k)
                out.append((lo, lc, hi, hc))
            if a_hi <= b_hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out, _canonical=True)

    def intersects(self, other: "IntervalSet") -> bool:
        a, b = self._pieces, other._pieces
        i = j = 0
        while i < len(a) and j < len(b):
            lo_k = max(_lo_key(a[i][0], a[i][1]), _lo_key(b[j][0], b[j][1]))
            a_hi = _hi_key(a[i][2], a[i][3])
            b_hi = _hi_key(b[j][2], b[j][3])
            if lo_k <= min(a_hi, b_hi):
                return True
            if a_hi <= b_hi:
                i += 1
            else:
                j += 1
        return False

    def complement(self) -> "IntervalSet":
        """Complement within [0, 1]."""
        out: list[Piece] = []
        cursor: Key = (ZERO, 0)
        for lo, lc, hi, hc in self._pieces:
            gap_hi = _key_pred(_lo_key(lo, lc))
            if cursor <= gap_hi:
                glo, glc = _lo_from_key(cursor)
                ghi, ghc = _hi_from_key(gap_hi)
                out.append((glo, glc, ghi, ghc))
            cursor = _key_succ(_hi_key(hi, hc))
        if cursor <= (ONE, 0):
            glo, glc = _lo_from_key(cursor)
            out.append((glo, glc, ONE, True))
        return IntervalSet(out, _canonical=True)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        if not other._pieces:
            return self
        return self.intersect(other.complement())

    def subset_of(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty

    # ------------------------------------------------------------------
    # dunder plumbing

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._pieces == other._pieces

    def __hash__(self) -> int:
        return hash(self._pieces)

    def __iter__(self) -> Iterator[Piece]:
        return iter(self._pieces)

    def __len__(self) -> int:
        return len(self._pieces)

    def __str__(self) -> str:
        if not self._pieces:
            return "{}"
        parts = []
        for lo, lc, hi, hc in self._pieces:
            if lo == hi:
                parts.append("{%s}" % lo)
            else:
                parts.append(
                    "%s%s,%s%s" % ("[" if lc else "(", lo, hi, "]" if hc else ")")
                )
        return " u ".join(parts)

    def __repr__(self) -> str:
        return f"IntervalSet({str(self)!r})"


def _normalize(raw: Iterable[Piece]) -> tuple[Piece, ...]:
    keyed: list[tuple[Key, Key]] = []
    for lo, lc, hi, hc in raw:
        _check_unit(lo)
        _check_unit(hi)
        lo_k = _lo_key(lo, lc)
        hi_k = _hi_key(hi, hc)
        if lo_k <= hi_k:
            keyed.append((lo_k, hi_k))
    keyed.sort()
    merged: list[tuple[Key, Key]] = []
    for lo_k, hi_k in keyed:
        if merged and lo_k <= _key_succ(merged[-1][1]):
            if hi_k > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi_k)
        else:
            merged.append((lo_k, hi_k))
    out: list[Piece] = []
    for lo_k, hi_k in merged:
        lo, lc = _lo_from_key(lo_k)
        hi, hc = _hi_from_key(hi_k)
        out.append((lo, lc, hi, hc))
    return tuple(out)


def normalize(raw: Iterable[tuple]) -> IntervalSet:
    """Public normalization entry point; accepts raw 4-tuples."""
    return IntervalSet.from_pieces(raw)


_EMPTY = IntervalSet((), _canonical=True)
_FULL = IntervalSet(((ZERO, True, ONE, True),), _canonical=True)
