"""Hand-built carrier instances used by scenarios and the test batteries.

The PL map library pairs each map with its known regularity classification;
the selection lists split the maps into those satisfying the Michael
selection hypotheses (l.s.c. with convex values) and those violating them.
"""

from __future__ import annotations

from fractions import Fraction

from .carriers import (
    FiniteMetricSpace,
    FiniteRelation,
    PLBranch,
    PLFunc,
    PLMultiMap,
    full_relation,
)
from .intervals import IntervalSet

F = Fraction


def tent_map() -> PLMultiMap:
    """Single-valued PL tent rising from 1/4 at 0 to 3/4 at 1/2 and back."""
    return PLMultiMap.graph_of(PLFunc([(0, F(1, 4)), (F(1, 2), F(3, 4)), (1, F(1, 4))]))


def full_tent_map() -> PLMultiMap:
    return PLMultiMap.graph_of(PLFunc([(0, 0), (F(1, 2), 1), (1, 0)]))


def identity_map() -> PLMultiMap:
    return PLMultiMap.graph_of(PLFunc([(0, 0), (1, 1)]))


def constant_map(c) -> PLMultiMap:
    return PLMultiMap.graph_of(PLFunc.constant(c))


def v_map() -> PLMultiMap:
    return PLMultiMap.graph_of(PLFunc([(0, F(1, 2)), (F(1, 2), 0), (1, F(1, 2))]))


def jump_map() -> PLMultiMap:
    """Single-valued with a jump: x up to 1/2, then x/2."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2]"), PLFunc([(0, 0), (1, 1)])),
            PLBranch(IntervalSet.parse("(1/2,1]"), PLFunc([(0, 0), (1, F(1, 2))])),
        ]
    )


def step_map() -> PLMultiMap:
    """Single-valued two-level step; discontinuous at 1/2."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2)"), PLFunc.constant(0)),
            PLBranch(IntervalSet.parse("[1/2,1]"), PLFunc.constant(1)),
        ]
    )


def endpoint_pair_map() -> PLMultiMap:
    """Identity inside (0,1); both endpoints map onto the pair {0, 1}."""
    ends = IntervalSet.parse("{0} u {1}")
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("(0,1)"), PLFunc([(0, 0), (1, 1)])),
            PLBranch(ends, PLFunc.constant(0)),
            PLBranch(ends, PLFunc.constant(1)),
        ]
    )


def full_band_map() -> PLMultiMap:
    return PLMultiMap.constant_band(0, 1)


def half_band_map() -> PLMultiMap:
    """phi(x) = [x/2, x/2 + 1/2]."""
    return PLMultiMap(
        [
            PLBranch(
                IntervalSet.full(),
                PLFunc([(0, 0), (1, F(1, 2))]),
                PLFunc([(0, F(1, 2)), (1, 1)]),
            )
        ]
    )


def cone_band_map() -> PLMultiMap:
    """phi(x) = [0, x]; collapses to {0} at the left endpoint."""
    return PLMultiMap(
        [PLBranch(IntervalSet.full(), PLFunc.constant(0), PLFunc([(0, 0), (1, 1)]))]
    )


def tube_around_tent_map(radius=F(1, 8)) -> PLMultiMap:
    t = [(0, F(1, 4)), (F(1, 2), F(3, 4)), (1, F(1, 4))]
    lo = PLFunc([(x, y - radius) for x, y in t])
    hi = PLFunc([(x, y + radius) for x, y in t])
    return PLMultiMap([PLBranch(IntervalSet.full(), lo, hi)])


def shrink_right_map() -> PLMultiMap:
    """Full band on [0,1/2), then the single point 0; l.s.c. only."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2)"), PLFunc.constant(0), PLFunc.constant(1)),
            PLBranch(IntervalSet.parse("[1/2,1]"), PLFunc.constant(0)),
        ]
    )


def grow_right_map() -> PLMultiMap:
    """Point 0 on [0,1/2), full band from 1/2 on; u.s.c. only."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2)"), PLFunc.constant(0)),
            PLBranch(IntervalSet.parse("[1/2,1]"), PLFunc.constant(0), PLFunc.constant(1)),
        ]
    )


def band_from_left_map() -> PLMultiMap:
    """Full band on [0,1/2], point 1 after; u.s.c. only."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2]"), PLFunc.constant(0), PLFunc.constant(1)),
            PLBranch(IntervalSet.parse("(1/2,1]"), PLFunc.constant(1)),
        ]
    )


def band_from_right_map() -> PLMultiMap:
    """Point 1 up to 1/2 inclusive, full band strictly after; l.s.c. only."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.parse("[0,1/2]"), PLFunc.constant(1)),
            PLBranch(IntervalSet.parse("(1/2,1]"), PLFunc.constant(0), PLFunc.constant(1)),
        ]
    )


def island_map() -> PLMultiMap:
    """Constant 1/2 except a full-width value interval at the single point 1/2."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.full(), PLFunc.constant(F(1, 2))),
            PLBranch(
                IntervalSet.parse("{1/2}"),
                PLFunc.constant(F(1, 4)),
                PLFunc.constant(F(3, 4)),
            ),
        ]
    )


def pinch_map() -> PLMultiMap:
    """Band [1/4,3/4] except pinched to {1/2} at the point 1/2; l.s.c. only."""
    return PLMultiMap(
        [
            PLBranch(
                IntervalSet.parse("[0,1/2) u (1/2,1]"),
                PLFunc.constant(F(1, 4)),
                PLFunc.constant(F(3, 4)),
            ),
            PLBranch(IntervalSet.parse("{1/2}"), PLFunc.constant(F(1, 2))),
        ]
    )


def grow_at_point_map() -> PLMultiMap:
    """Identity plus a full value interval at the single point 1/2; u.s.c."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.full(), PLFunc([(0, 0), (1, 1)])),
            PLBranch(IntervalSet.parse("{1/2}"), PLFunc.constant(0), PLFunc.constant(1)),
        ]
    )


def boundary_spike_map() -> PLMultiMap:
    """Identity except a full value interval at the left endpoint; u.s.c."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.full(), PLFunc([(0, 0), (1, 1)])),
            PLBranch(IntervalSet.parse("{0}"), PLFunc.constant(0), PLFunc.constant(1)),
        ]
    )


def two_strand_map() -> PLMultiMap:
    """phi(x) = {x/2} u {x/2 + 1/2}: continuous with non-convex values."""
    return PLMultiMap(
        [
            PLBranch(IntervalSet.full(), PLFunc([(0, 0), (1, F(1, 2))])),
            PLBranch(IntervalSet.full(), PLFunc([(0, F(1, 2)), (1, 1)])),
        ]
    )


def wedge_band_map() -> PLMultiMap:
    """phi(x) = [3x/4, 3x/4 + 1/4]."""
    return PLMultiMap(
        [
            PLBranch(
                IntervalSet.full(),
                PLFunc([(0, 0), (1, F(3, 4))]),
                PLFunc([(0, F(1, 4)), (1, 1)]),
            )
        ]
    )


#: (name, builder, expected regularity classification)
CLASSIFIED_MAPS = [
    ("tent", tent_map, "continuous"),
    ("full-tent", full_tent_map, "continuous"),
    ("identity", identity_map, "continuous"),
    ("constant-half", lambda: constant_map(F(1, 2)), "continuous"),
    ("v", v_map, "continuous"),
    ("full-band", full_band_map, "continuous"),
    ("half-band", half_band_map, "continuous"),
    ("cone-band", cone_band_map, "continuous"),
    ("tent-tube", tube_around_tent_map, "continuous"),
    ("wedge-band", wedge_band_map, "continuous"),
    ("two-strand", two_strand_map, "continuous"),
    ("endpoint-pair", endpoint_pair_map, "usc"),
    ("grow-right", grow_right_map, "usc"),
    ("band-from-left", band_from_left_map, "usc"),
    ("island", island_map, "usc"),
    ("grow-at-point", grow_at_point_map, "usc"),
    ("boundary-spike", boundary_spike_map, "usc"),
    ("shrink-right", shrink_right_map, "lsc"),
    ("band-from-right", band_from_right_map, "lsc"),
    ("pinch", pinch_map, "lsc"),
    ("jump", jump_map, "neither"),
    ("step", step_map, "neither"),
]


def classified_maps() -> list[tuple[str, PLMultiMap, str]]:
    return [(name, build(), reg) for name, build, reg in CLASSIFIED_MAPS]


def michael_good_maps() -> list[tuple[str, PLMultiMap]]:
    """Convex-valued l.s.c. maps: a continuous PL selection must exist."""
    out: list[tuple[str, PLMultiMap]] = [
        ("identity", identity_map()),
        ("tent", tent_map()),
        ("full-tent", full_tent_map()),
        ("v", v_map()),
        ("constant-half", constant_map(F(1, 2))),
        ("constant-0", constant_map(0)),
        ("constant-1", constant_map(1)),
        ("full-band", full_band_map()),
        ("half-band", half_band_map()),
        ("cone-band", cone_band_map()),
        ("tent-tube", tube_around_tent_map()),
        ("tent-tube-wide", tube_around_tent_map(F(1, 4))),
        ("wedge-band", wedge_band_map()),
        ("shrink-right", shrink_right_map()),
        ("band-from-right", band_from_right_map()),
        ("pinch", pinch_map()),
    ]
    for i in range(1, 5):
        w = F(i, 8)
        out.append(
            (
                f"linear-band-{i}",
                PLMultiMap(
                    [
                        PLBranch(
                            IntervalSet.full(),
                            PLFunc([(0, 0), (1, 1 - w)]),
                            PLFunc([(0, w), (1, 1)]),
                        )
                    ]
                ),
            )
        )
    return out


def michael_bad_maps() -> list[tuple[str, PLMultiMap]]:
    """Instances violating the selection hypotheses (regularity or convexity)."""
    return [
        ("endpoint-pair", endpoint_pair_map()),
        ("grow-right", grow_right_map()),
        ("band-from-left", band_from_left_map()),
        ("island", island_map()),
        ("grow-at-point", grow_at_point_map()),
        ("boundary-spike", boundary_spike_map()),
        ("jump", jump_map()),
        ("step", step_map()),
        ("two-strand", two_strand_map()),
    ]


# -- finite instances ---------------------------------------------------------


def two_point_full_shift() -> FiniteRelation:
    return full_relation(FiniteMetricSpace.uniform(2))


def m_point_full_shift(m: int) -> FiniteRelation:
    return full_relation(FiniteMetricSpace.uniform(m))


def shift_sink_relation() -> FiniteRelation:
    """0 -> {1}, 1 -> {1}: the uniform measure is not invariant."""
    return FiniteRelation(FiniteMetricSpace.uniform(2), [[1], [1]])


def two_cycle_relation() -> FiniteRelation:
    return FiniteRelation(FiniteMetricSpace.uniform(2), [[1], [0]])
