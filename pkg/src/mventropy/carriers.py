"""Carriers: finite metric spaces with relations, and piecewise-linear
multivalued interval maps.

Both carriers expose the same preimage surface (``large_preimage`` /
``small_preimage`` plus a ``universe``), so the partition, cover and orbit
machinery is generic over them.  Subsets of a finite carrier are bitmasks;
subsets of the interval carrier are :class:`~mventropy.intervals.IntervalSet`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .intervals import ONE, ZERO, IntervalSet, Rational, as_fraction

# ---------------------------------------------------------------------------
# finite carrier
# ---------------------------------------------------------------------------


class FiniteMetricSpace:
    """Finite metric space with an exact rational distance matrix."""

    __slots__ = ("n", "dist")

    def __init__(self, dist: Sequence[Sequence[Rational]], validate: bool = True):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in dist)
        self.n = len(rows)
        self.dist = rows
        if validate:
            self._validate()

    def _validate(self) -> None:
        n, d = self.n, self.dist
        for i in range(n):
            if len(d[i]) != n:
                raise ValueError("distance matrix is not square")
            if d[i][i] != 0:
                raise ValueError(f"dist({i},{i}) != 0")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise ValueError(f"dist({i},{j}) not symmetric")
                if d[i][j] <= 0:
                    raise ValueError(f"dist({i},{j}) not positive")
        if n <= 64:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if d[i][j] > d[i][k] + d[k][j]:
                            raise ValueError(
                                f"triangle inequality fails at ({i},{j},{k})"
                            )

    @classmethod
    def from_line_points(cls, points: Sequence[Rational]) -> "FiniteMetricSpace":
        pts = [as_fraction(p) for p in points]
        return cls([[abs(a - b) for b in pts] for a in pts], validate=False)

    @classmethod
    def grid(cls, m: int) -> "FiniteMetricSpace":
        """Points i/m for i = 0..m with the absolute-difference metric."""
        return cls.from_line_points([Fraction(i, m) for i in range(m + 1)])

    @classmethod
    def uniform(cls, n: int, d: Rational = 1) -> "FiniteMetricSpace":
        dd = as_fraction(d)
        return cls(
            [[ZERO if i == j else dd for j in range(n)] for i in range(n)],
            validate=False,
        )

    def diameter(self) -> Fraction:
        return max(max(row) for row in self.dist)

    def __repr__(self) -> str:
        return f"FiniteMetricSpace(n={self.n})"


class FiniteRelation:
    """Multivalued map on a finite metric space; every value set nonempty.

    ``masks[i]`` is the bitmask of the value set at point ``i``.
    """

    __slots__ = ("space", "masks")

    def __init__(self, space: FiniteMetricSpace, values: Iterable):
        self.space = space
        masks = []
        for v in values:
            m = v if isinstance(v, int) else _mask_of(v)
            if m == 0:
                raise ValueError("multivalued map values must be nonempty")
            if m >> space.n:
                raise ValueError("value set outside the carrier")
            masks.append(m)
        if len(masks) != space.n:
            raise ValueError("one value set per point required")
        self.masks = tuple(masks)

    # -- preimage surface ------------------------------------------------

    @property
    def universe(self) -> int:
        return (1 << self.space.n) - 1

    def large_preimage(self, b: int) -> int:
        out = 0
        for i, m in enumerate(self.masks):
            if m & b:
                out |= 1 << i
        return out

    def small_preimage(self, b: int) -> int:
        out = 0
        for i, m in enumerate(self.masks):
            if m & ~b == 0:
                out |= 1 << i
        return out

    # -- structure ---------------------------------------------------------

    def value_set(self, i: int) -> frozenset[int]:
        return frozenset(_bits(self.masks[i]))

    @property
    def is_single_valued(self) -> bool:
        return all(m.bit_count() == 1 for m in self.masks)

    def as_function(self) -> tuple[int, ...]:
        if not self.is_single_valued:
            raise ValueError("relation is not single-valued")
        return tuple(m.bit_length() - 1 for m in self.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return self.space is other.space and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((id(self.space), self.masks))

    def __repr__(self) -> str:
        vals = [sorted(_bits(m)) for m in self.masks]
        return f"FiniteRelation({vals})"


def _mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def compose(phi: FiniteRelation, psi: FiniteRelation) -> FiniteRelation:
    """(phi o psi)(x) = union of phi(y) over y in psi(x)."""
    if phi.space is not psi.space:
        raise ValueError("relations live on different spaces")
    out = []
    for m in psi.masks:
        acc = 0
        for y in _bits(m):
            acc |= phi.masks[y]
        out.append(acc)
    return FiniteRelation(phi.space, out)


def iterate_relation(phi: FiniteRelation, k: int) -> FiniteRelation:
    if k < 1:
        raise ValueError("k must be >= 1")
    out = phi
    for _ in range(k - 1):
        out = compose(phi, out)
    return out


def identity_relation(space: FiniteMetricSpace) -> FiniteRelation:
    return FiniteRelation(space, [1 << i for i in range(space.n)])


def full_relation(space: FiniteMetricSpace) -> FiniteRelation:
    u = (1 << space.n) - 1
    return FiniteRelation(space, [u] * space.n)


def singleton_relation(space: FiniteMetricSpace, f: Sequence[int]) -> FiniteRelation:
    return FiniteRelation(space, [1 << y for y in f])


# ---------------------------------------------------------------------------
# piecewise-linear interval carrier
# ---------------------------------------------------------------------------


class PLFunc:
    """Continuous piecewise-linear function given by rational breakpoints."""

    __slots__ = ("pts",)

    def __init__(self, pts: Iterable[tuple[Rational, Rational]]):
        pairs = tuple((as_fraction(x), as_fraction(y)) for x, y in pts)
        if len(pairs) < 2:
            raise ValueError("need at least two breakpoints")
        for (x0, _), (x1, _) in zip(pairs, pairs[1:]):
            if x1 <= x0:
                raise ValueError("breakpoints must be strictly increasing")
        self.pts = pairs

    @classmethod
    def constant(cls, c: Rational, lo: Rational = 0, hi: Rational = 1) -> "PLFunc":
        return cls([(lo, c), (hi, c)])

    @classmethod
    def affine(cls, slope: Rational, intercept: Rational) -> "PLFunc":
        a, b = as_fraction(slope), as_fraction(intercept)
        return cls([(ZERO, b), (ONE, a + b)])

    @property
    def x_min(self) -> Fraction:
        return self.pts[0][0]

    @property
    def x_max(self) -> Fraction:
        return self.pts[-1][0]

    def breakpoint_xs(self) -> list[Fraction]:
        return [x for x, _ in self.pts]

    def _segment(self, x: Fraction) -> int:
        if x < self.x_min or x > self.x_max:
            raise ValueError(f"{x} outside the function domain")
        lo, hi = 0, len(self.pts) - 2
        while lo < hi:
            mid = (lo + hi) // 2
            if self.pts[mid + 1][0] < x:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def value(self, x: Rational) -> Fraction:
        v = as_fraction(x)
        i = self._segment(v)
        (x0, y0), (x1, y1) = self.pts[i], self.pts[i + 1]
        return y0 + (y1 - y0) * (v - x0) / (x1 - x0)

    def affine_on(self, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
        """(slope, intercept) on [a, b], which must lie inside one segment."""
        if b <= a:
            raise ValueError("need a < b")
        i = self._segment((a + b) / 2)
        (x0, y0), (x1, y1) = self.pts[i], self.pts[i + 1]
        if a < x0 or b > x1:
            raise ValueError(f"[{a},{b}] spans a breakpoint")
        slope = (y1 - y0) / (x1 - x0)
        return slope, y0 - slope * x0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLFunc):
            return NotImplemented
        return self.pts == other.pts

    def __hash__(self) -> int:
        return hash(self.pts)

    def __repr__(self) -> str:
        return f"PLFunc({[(str(x), str(y)) for x, y in self.pts]})"


class PLBranch:
    """One branch of a multivalued interval map: a closed value envelope
    [lower(x), upper(x)] over an IntervalSet domain."""

    __slots__ = ("domain", "lower", "upper")

    def __init__(self, domain: IntervalSet, lower: PLFunc, upper: Optional[PLFunc] = None):
        self.domain = domain
        self.lower = lower
        self.upper = upper if upper is not None else lower
        self._validate()

    def _validate(self) -> None:
        if self.domain.is_empty:
            raise ValueError("branch domain is empty")
        lo_hull = self.domain.raw_pieces[0][0]
        hi_hull = self.domain.raw_pieces[-1][2]
        for f in (self.lower, self.upper):
            if f.x_min > lo_hull or f.x_max < hi_hull:
                raise ValueError("branch function does not cover its domain")
        # envelope order and range checked at every breakpoint of either
        # function inside the domain hull; affine pieces make this sufficient
        xs = sorted(
            {
                x
                for x in self.lower.breakpoint_xs() + self.upper.breakpoint_xs()
                if lo_hull <= x <= hi_hull
            }
            | {lo_hull, hi_hull}
        )
        for x in xs:
            lo_v = self.lower.value(x)
            hi_v = self.upper.value(x)
            if lo_v > hi_v:
                raise ValueError(f"lower > upper at x={x}")
            if lo_v < ZERO or hi_v > ONE:
                raise ValueError(f"branch value outside [0,1] at x={x}")

    @property
    def is_single_valued(self) -> bool:
        return self.lower == self.upper

    def value_interval_at(self, x: Rational) -> IntervalSet:
        v = as_fraction(x)
        return IntervalSet.interval(self.lower.value(v), self.upper.value(v))


_CellPoint = tuple  # ("point", v, active_indices)
_CellOpen = tuple  # ("open", a, b, active: list[(idx, l_aff, u_aff)])


class PLMultiMap:
    """Multivalued self-map of [0, 1] as a finite union of PL branches.

    phi(x) is the union, over branches whose domain contains x, of the closed
    intervals [lower(x), upper(x)].  Branch domains must jointly cover [0, 1].
    """

    __slots__ = ("branches", "_cells_cache")

    def __init__(self, branches: Iterable[PLBranch]):
        self.branches = tuple(branches)
        if not self.branches:
            raise ValueError("need at least one branch")
        cover = IntervalSet.empty()
        for b in self.branches:
            cover = cover.union(b.domain)
        if cover != IntervalSet.full():
            raise ValueError("branch domains do not cover [0,1]")
        self._cells_cache = None

    @classmethod
    def graph_of(cls, f: PLFunc) -> "PLMultiMap":
        return cls([PLBranch(IntervalSet.full(), f)])

    @classmethod
    def constant_band(cls, lo: Rational, hi: Rational) -> "PLMultiMap":
        return cls([PLBranch(IntervalSet.full(), PLFunc.constant(lo), PLFunc.constant(hi))])

    # -- cell decomposition ------------------------------------------------

    def critical_values(self) -> list[Fraction]:
        vals: set[Fraction] = {ZERO, ONE}
        for b in self.branches:
            vals.update(b.domain.boundary_values())
            vals.update(x for x in b.lower.breakpoint_xs() if ZERO <= x <= ONE)
            vals.update(x for x in b.upper.breakpoint_xs() if ZERO <= x <= ONE)
        return sorted(vals)

    def cells(self) -> list[tuple]:
        """Alternating point/open cells over [0,1]; on open cells every
        active branch is affine, recorded as (idx, (l_slope, l_int), (u_slope, u_int))."""
        if self._cells_cache is not None:
            return self._cells_cache
        crit = self.critical_values()
        cells: list[tuple] = []
        for i, v in enumerate(crit):
            active = tuple(
                bi for bi, b in enumerate(self.branches) if b.domain.contains(v)
            )
            cells.append(("point", v, active))
            if i + 1 < len(crit):
                a, b_ = v, crit[i + 1]
                mid = (a + b_) / 2
                active_open = []
                for bi, br in enumerate(self.branches):
                    if br.domain.contains(mid):
                        active_open.append(
                            (bi, br.lower.affine_on(a, b_), br.upper.affine_on(a, b_))
                        )
                cells.append(("open", a, b_, tuple(active_open)))
        self._cells_cache = cells
        return cells

    # -- evaluation ----------------------------------------------------------

    def value_at(self, x: Rational) -> IntervalSet:
        v = as_fraction(x)
        if v < ZERO or v > ONE:
            raise ValueError(f"{v} outside [0,1]")
        pieces = []
        for b in self.branches:
            if b.domain.contains(v):
                pieces.append((b.lower.value(v), True, b.upper.value(v), True))
        if not pieces:
            raise ValueError(f"no branch active at {v}")
        return IntervalSet(pieces)

    @property
    def is_single_valued(self) -> bool:
        for kind, *rest in self.cells():
            if kind == "point":
                v, active = rest
                val = self.value_at(v)
                if len(val) != 1 or val.lebesgue() != 0:
                    return False
            else:
                a, b, active = rest
                if len(active) == 0:
                    return False
                vals = {af for _, l_af, u_af in active for af in (l_af, u_af)}
                if len(vals) != 1:
                    return False
        return True

    # -- preimage surface ------------------------------------------------

    @property
    def universe(self) -> IntervalSet:
        return IntervalSet.full()

    def large_preimage(self, target: IntervalSet) -> IntervalSet:
        """{x : phi(x) meets target}, exact with boundary flags."""
        if target.is_empty:
            return IntervalSet.empty()
        raw = []
        for cell in self.cells():
            if cell[0] == "point":
                _, v, active = cell
                if active and self.value_at(v).intersects(target):
                    raw.append((v, True, v, True))
            else:
                _, a, b, active = cell
                for _, (ls, li), (us, ui) in active:
                    for c, c_cl, d, d_cl in target.raw_pieces:
                        piece = _solve_meets(a, b, ls, li, us, ui, c, c_cl, d, d_cl)
                        if piece is not None:
                            raw.append(piece)
        return IntervalSet(raw)

    def small_preimage(self, target: IntervalSet) -> IntervalSet:
        # phi(x) subset of B  iff  phi(x) misses the complement of B
        return self.large_preimage(target.complement()).complement()

    # -- regularity ----------------------------------------------------------

    def _side_limit(self, cell_open: tuple, at: Fraction) -> IntervalSet:
        """Limit value set along an open cell as x tends to `at` (a cell end)."""
        _, a, b, active = cell_open
        pieces = []
        for _, (ls, li), (us, ui) in active:
            pieces.append((ls * at + li, True, us * at + ui, True))
        return IntervalSet(pieces)

    def classify_regularity(self) -> str:
        """Symbolic classification: 'continuous', 'usc', 'lsc' or 'neither'.

        Inside open cells the map is continuous (finitely many affine closed
        envelopes), so semicontinuity is decided by comparing one-sided limit
        sets with the value at every critical point.
        """
        cells = self.cells()
        usc_all = True
        lsc_all = True
        for i, cell in enumerate(cells):
            if cell[0] != "point":
                continue
            v = cell[1]
            value = self.value_at(v)
            limits = []
            if i > 0:
                limits.append(self._side_limit(cells[i - 1], v))
            if i + 1 < len(cells):
                limits.append(self._side_limit(cells[i + 1], v))
            limsup = IntervalSet.empty()
            for s in limits:
                limsup = limsup.union(s)
            liminf = limits[0]
            for s in limits[1:]:
                liminf = liminf.intersect(s)
            if not limsup.subset_of(value):
                usc_all = False
            if not value.subset_of(liminf):
                lsc_all = False
        if usc_all and lsc_all:
            return "continuous"
        if usc_all:
            return "usc"
        if lsc_all:
            return "lsc"
        return "neither"

    # -- convexity of values ---------------------------------------------

    def convex_values(self) -> tuple[bool, Optional[Fraction]]:
        """Whether phi(x) is a single interval at every x; returns a witness x
        on failure.  Open cells are subdivided at envelope crossings so the
        piece count is constant between tested points."""
        for cell in self.cells():
            if cell[0] == "point":
                _, v, _ = cell
                if len(self.value_at(v)) != 1:
                    return False, v
            else:
                _, a, b, active = cell
                if not active:
                    return False, (a + b) / 2
                for x in _subdivision_points(a, b, active):
                    if len(self.value_at(x)) != 1:
                        return False, x
        return True, None

    def __repr__(self) -> str:
        return f"PLMultiMap({len(self.branches)} branches)"


def _subdivision_points(a: Fraction, b: Fraction, active) -> list[Fraction]:
    """Sample points of (a,b) between consecutive crossings of any two
    envelope lines, crossings included."""
    lines = []
    for _, l_af, u_af in active:
        lines.append(l_af)
        lines.append(u_af)
    xs: set[Fraction] = set()
    for i in range(len(lines)):
        s1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            s2, c2 = lines[j]
            if s1 != s2:
                x = (c2 - c1) / (s1 - s2)
                if a < x < b:
                    xs.add(x)
    pts = [a] + sorted(xs) + [b]
    out: list[Fraction] = []
    for p, q in zip(pts, pts[1:]):
        out.append((p + q) / 2)
    out.extend(sorted(xs))
    return out


def _solve_meets(
    a: Fraction,
    b: Fraction,
    ls: Fraction,
    li: Fraction,
    us: Fraction,
    ui: Fraction,
    c: Fraction,
    c_cl: bool,
    d: Fraction,
    d_cl: bool,
):
    """Solve {x in (a,b) : [l(x), u(x)] meets the piece (c..d)} for affine
    l, u; returns one raw piece or None.

    The meet condition is l(x) <= d (strict when d is open) and
    u(x) >= c (strict when c is open).
    """
    lo_key = (a, 1)
    hi_key = (b, -1)

    k = _linear_upper(ls, li, d, d_cl)  # l(x) <= d  -> x-constraint
    if k == "none":
        return None
    if k != "all":
        kind, t, closed = k
        key = (t, 0 if closed else (-1 if kind == "le" else 1))
        if kind == "le":
            if key < hi_key:
                hi_key = key
        else:
            if key > lo_key:
                lo_key = key

    k = _linear_lower(us, ui, c, c_cl)  # u(x) >= c
    if k == "none":
        return None
    if k != "all":
        kind, t, closed = k
        key = (t, 0 if closed else (-1 if kind == "le" else 1))
        if kind == "le":
            if key < hi_key:
                hi_key = key
        else:
            if key > lo_key:
                lo_key = key

    if lo_key > hi_key:
        return None
    lo, lo_eps = lo_key
    hi, hi_eps = hi_key
    return (lo, lo_eps == 0, hi, hi_eps == 0)


def _linear_upper(slope: Fraction, intercept: Fraction, bound: Fraction, closed: bool):
    """Solve slope*x + intercept <= bound (or < when not closed)."""
    if slope == 0:
        if intercept < bound or (closed and intercept == bound):
            return "all"
        return "none"
    t = (bound - intercept) / slope
    if slope > 0:
        return ("le", t, closed)
    return ("ge", t, closed)


def _linear_lower(slope: Fraction, intercept: Fraction, bound: Fraction, closed: bool):
    """Solve slope*x + intercept >= bound (or > when not closed)."""
    if slope == 0:
        if intercept > bound or (closed and intercept == bound):
            return "all"
        return "none"
    t = (bound - intercept) / slope
    if slope > 0:
        return ("ge", t, closed)
    return ("le", t, closed)


# ---------------------------------------------------------------------------
# bridges
# ---------------------------------------------------------------------------


def discretize(pl_map: PLMultiMap, m: int) -> FiniteRelation:
    """Outer grid approximation on {i/m : 0 <= i <= m}.

    j/m belongs to the approximate value set at i/m iff its distance to the
    exact set phi(i/m) is at most 1/m, so every exact orbit through grid
    points survives discretization.
    """
    if m < 2:
        raise ValueError("grid size must be >= 2")
    space = FiniteMetricSpace.grid(m)
    slack = Fraction(1, m)
    masks = []
    for i in range(m + 1):
        val = pl_map.value_at(Fraction(i, m))
        mask = 0
        for j in range(m + 1):
            if val.distance_to(Fraction(j, m)) <= slack:
                mask |= 1 << j
        masks.append(mask)
    return FiniteRelation(space, masks)


@dataclass
class HyperspaceLift:
    """Single-valued lift on nonempty subsets with the Hausdorff metric."""

    relation: FiniteRelation  # singleton-valued, on the subset space
    states: tuple[int, ...]  # state index -> subset bitmask of the base space
    base: FiniteRelation

    def state_of(self, mask: int) -> int:
        return self.states.index(mask)

    def singleton_state(self, x: int) -> int:
        return self.state_of(1 << x)


def hausdorff_distance(
    space: FiniteMetricSpace, a_mask: int, b_mask: int
) -> Fraction:
    if a_mask == 0 or b_mask == 0:
        raise ValueError("Hausdorff distance needs nonempty sets")
    a = list(_bits(a_mask))
    b = list(_bits(b_mask))
    d = space.dist
    forward = max(min(d[x][y] for y in b) for x in a)
    backward = max(min(d[x][y] for x in a) for y in b)
    return max(forward, backward)


def hyperspace_lift(phi: FiniteRelation, cap: int = 12) -> HyperspaceLift:
    """Lift to the single-valued map A -> union of phi(x) over x in A on all
    2^n - 1 nonempty subsets, metrized by the exact Hausdorff distance."""
    n = phi.space.n
    if n > cap:
        raise ValueError(f"hyperspace lift capped at {cap} points, got {n}")
    states = tuple(range(1, 1 << n))  # state s corresponds to mask s
    # min distance from each point to each nonempty subset
    d = phi.space.dist
    mind = [[None] * len(states) for _ in range(n)]
    for x in range(n):
        for si, mask in enumerate(states):
            mind[x][si] = min(d[x][y] for y in _bits(mask))
    rows = []
    for si, a_mask in enumerate(states):
        row = []
        a_pts = list(_bits(a_mask))
        for sj, b_mask in enumerate(states):
            b_pts = list(_bits(b_mask))
            fwd = max(mind[x][sj] for x in a_pts)
            bwd = max(mind[y][si] for y in b_pts)
            row.append(max(fwd, bwd))
        rows.append(row)
    hyper_space = FiniteMetricSpace(rows, validate=False)
    masks = []
    for a_mask in states:
        img = 0
        for x in _bits(a_mask):
            img |= phi.masks[x]
        masks.append(1 << (img - 1))  # state index of img is img - 1
    lifted = FiniteRelation(hyper_space, masks)
    return HyperspaceLift(relation=lifted, states=states, base=phi)
