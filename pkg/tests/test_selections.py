import math
import random
from fractions import Fraction

import pytest

from mventropy.carriers import (
    FiniteMetricSpace,
    FiniteRelation,
    full_relation,
    singleton_relation,
)
from mventropy.intervals import IntervalSet
from mventropy.library import (
    full_band_map,
    half_band_map,
    identity_map,
    michael_bad_maps,
    michael_good_maps,
    two_point_full_shift,
)
from mventropy.orbits import (
    bottleneck_separated_count,
    orbit_separated_count,
    orbit_spanning_count,
)
from mventropy.randgen import random_measure, random_selectable_relation
from mventropy.selections import (
    SelectionError,
    enumerate_selections,
    pl_selection,
    sandwich_report,
    selection_entropy,
)

F = Fraction


class TestEnumerate:
    def test_single_valued_map_is_its_own_selection(self):
        space = FiniteMetricSpace.uniform(3)
        f = singleton_relation(space, [1, 2, 0])
        fam = enumerate_selections(f)
        assert fam.exhaustive and fam.functions == ((1, 2, 0),)

    def test_full_relation_counts(self):
        for m in (2, 3):
            fam = enumerate_selections(full_relation(FiniteMetricSpace.uniform(m)))
            assert fam.total == m**m and len(fam) == m**m

    def test_two_selections(self):
        space = FiniteMetricSpace.uniform(2)
        phi = FiniteRelation(space, [[0, 1], [1]])
        fam = enumerate_selections(phi)
        assert fam.functions == ((0, 1), (1, 1))

    def test_cap_sampling_flag(self):
        phi = full_relation(FiniteMetricSpace.uniform(4))  # 256 selections
        fam = enumerate_selections(phi, cap=10)
        assert not fam.exhaustive
        assert fam.total == 256
        assert len(fam) <= 10
        for f in fam:
            assert all(f[x] in phi.value_set(x) for x in range(4))


class TestPLSelection:
    def test_single_valued_returns_the_map(self):
        f = pl_selection(identity_map())
        for x in (0, F(1, 3), 1):
            assert f.value(x) == x

    def test_full_band_gives_the_midline(self):
        f = pl_selection(full_band_map())
        for x in (0, F(1, 2), 1):
            assert f.value(x) == F(1, 2)

    def test_half_band_midline(self):
        f = pl_selection(half_band_map())
        for x in (0, F(1, 4), 1):
            assert f.value(x) == x / 2 + F(1, 4)

    @pytest.mark.parametrize("name,pl", michael_good_maps())
    def test_library_selections_verified(self, name, pl):
        f = pl_selection(pl)
        xs = set(f.breakpoint_xs())
        pts = sorted(xs)
        for a, b in zip(pts, pts[1:]):
            xs.add((a + b) / 2)
        for x in sorted(xs):
            assert pl.value_at(x).contains(f.value(x)), (name, str(x))

    @pytest.mark.parametrize("name,pl", michael_bad_maps())
    def test_violating_instances_refused(self, name, pl):
        with pytest.raises(SelectionError):
            pl_selection(pl)

    def test_discontinuous_pointwise_midline_is_repaired(self):
        # values shrink from the full band to {0}: the naive pointwise
        # midpoint jumps at 1/2, the knot interpolation stays continuous
        from mventropy.library import shrink_right_map

        f = pl_selection(shrink_right_map())
        assert f.value(F(1, 2)) == 0
        assert f.value(F(1, 4)) == F(1, 4)  # slides linearly from 1/2 to 0
        pl = shrink_right_map()
        for k in range(33):
            x = F(k, 32)
            assert pl.value_at(x).contains(f.value(x))


class TestSelectionEntropy:
    def test_constant_and_identity_are_flat(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 2), 1])
        for f in ([0, 0, 0], [0, 1, 2]):
            est = selection_entropy(singleton_relation(space, f), [F(1, 4)], 5)
            assert est[F(1, 4)]["sep"].growth == 0.0

    def test_full_shift_selection_is_flat(self):
        phi = two_point_full_shift()
        for f in enumerate_selections(phi):
            est = selection_entropy(singleton_relation(phi.space, f), [F(1, 2)], 5)
            assert est[F(1, 2)]["sep"].growth == 0.0

    def test_rejects_multivalued(self):
        with pytest.raises(ValueError):
            selection_entropy(two_point_full_shift(), [F(1, 2)], 3)


class TestOrderLaws:
    def test_selection_orbits_are_map_orbits(self):
        rng = random.Random(35)
        for _ in range(25):
            phi = random_selectable_relation(rng, rng.randint(2, 5), 64)
            fam = enumerate_selections(phi, cap=64)
            for f in fam:
                rel = singleton_relation(phi.space, f)
                for eps in (F(1, 2), F(1, 4)):
                    for depth in (1, 2, 3):
                        assert (
                            orbit_separated_count(rel, eps, depth).value
                            <= orbit_separated_count(phi, eps, depth).value
                        )
                        assert (
                            bottleneck_separated_count(phi, eps, depth).value
                            <= bottleneck_separated_count(rel, eps, depth).value
                        )


class TestSandwichReport:
    def test_full_shift_two_points(self):
        phi = two_point_full_shift()
        rep = sandwich_report(phi, [random_measure(random.Random(36), 2)], depth=3)
        assert rep["ok"]
        assert rep["selections"]["total"] == 4
        by_name = {}
        for row in rep["rows"]:
            by_name.setdefault(row["name"], []).append(row)
        assert all(r["verdict"] == "holds" for r in by_name["orbit_span_le_sep"])
        assert all(r["verdict"] == "holds" for r in by_name["selection_orbit_sep_le_map"])
        assert all(r["verdict"] == "holds" for r in by_name["map_bottleneck_sep_le_selection"])

    def test_single_valued_collapse_level_wise(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 4), 1])
        f = singleton_relation(space, [1, 2, 0])
        rep = sandwich_report(f, depth=3)
        assert rep["ok"]
        # with a single selection (the map itself) the selection rows compare
        # the map with itself, so lhs == rhs throughout
        for row in rep["rows"]:
            if row["name"] in ("selection_orbit_sep_le_map",):
                assert row["lhs"] == row["rhs"]
