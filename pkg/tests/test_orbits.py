import math
import random
from fractions import Fraction

import pytest

from mventropy.carriers import (
    FiniteMetricSpace,
    FiniteRelation,
    full_relation,
    identity_relation,
    singleton_relation,
)
from mventropy.library import two_point_full_shift
from mventropy.orbits import (
    OrbitCapError,
    bottleneck_distance,
    bottleneck_distance_matrix,
    bottleneck_entropy_estimates,
    bottleneck_separated_count,
    bottleneck_spanning_count,
    count_orbits,
    dn_distance,
    enumerate_orbits,
    hyperspace_entropy_estimate,
    orbit_entropy_estimates,
    orbit_separated_count,
    orbit_spanning_count,
)
from mventropy.randgen import random_relation

import oracles

F = Fraction


class TestEnumeration:
    def test_length_one_is_the_carrier(self):
        phi = two_point_full_shift()
        assert enumerate_orbits(phi, 1).orbits == ((0,), (1,))

    def test_full_relation_counts(self):
        phi = full_relation(FiniteMetricSpace.uniform(3))
        for n in range(1, 5):
            assert count_orbits(phi, n) == 3**n
            assert len(enumerate_orbits(phi, n)) == 3**n

    def test_single_valued_one_orbit_per_start(self):
        rng = random.Random(22)
        space = FiniteMetricSpace.uniform(5)
        f = FiniteRelation(space, [[rng.randrange(5)] for _ in range(5)])
        assert len(enumerate_orbits(f, 6)) == 5

    def test_lexicographic_order(self):
        phi = two_point_full_shift()
        assert enumerate_orbits(phi, 2).orbits == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_cap(self):
        phi = full_relation(FiniteMetricSpace.uniform(4))
        with pytest.raises(OrbitCapError):
            enumerate_orbits(phi, 10, cap=1000)


class TestMaxMetric:
    def test_equal_orbits(self):
        space = FiniteMetricSpace.uniform(2)
        assert dn_distance(space, (0, 1), (0, 1)) == 0

    def test_length_one_is_the_metric(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 2)])
        assert dn_distance(space, (0,), (1,)) == F(1, 2)

    def test_coordinatewise_max(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 4), F(1, 2)])
        assert dn_distance(space, (0, 2), (1, 1)) == F(1, 4)

    def test_length_mismatch(self):
        space = FiniteMetricSpace.uniform(2)
        with pytest.raises(ValueError):
            dn_distance(space, (0,), (0, 1))


class TestSeparatedSpanning:
    def test_full_shift_counts_match_bruteforce(self):
        for m in (2, 3):
            phi = full_relation(FiniteMetricSpace.uniform(m))
            for n in range(1, 3 if m == 3 else 5):
                s = orbit_separated_count(phi, F(1, 2), n)
                assert s.exact and s.value == m**n
                orbits = enumerate_orbits(phi, n).orbits
                if len(orbits) <= 16:
                    assert s.value == oracles.bowen_separated_bruteforce(
                        phi.space, orbits, F(1, 2)
                    )

    def test_full_shift_counts_formula(self):
        for m in (2, 3):
            phi = full_relation(FiniteMetricSpace.uniform(m))
            for n in range(1, 7):
                assert orbit_separated_count(phi, F(1, 2), n).value == m**n

    def test_eps_above_diameter(self):
        phi = two_point_full_shift()
        assert orbit_separated_count(phi, 2, 4).value == 1
        assert orbit_spanning_count(phi, 2, 4).value == 1
        assert bottleneck_separated_count(phi, 2, 3).value == 1

    def test_two_point_spanning_depth_three(self):
        phi = two_point_full_shift()
        r = orbit_spanning_count(phi, F(1, 2), 3)
        assert r.exact and r.value == 8
        orbits = enumerate_orbits(phi, 3).orbits
        assert r.value == oracles.bowen_spanning_bruteforce(phi.space, orbits, F(1, 2))

    def test_boundary_eps_strict_vs_weak(self):
        # two points at distance exactly eps: not separated, but spanned
        space = FiniteMetricSpace.from_line_points([0, F(1, 2)])
        phi = identity_relation(space)
        assert orbit_separated_count(phi, F(1, 2), 2).value == 1
        assert orbit_spanning_count(phi, F(1, 2), 2).value == 1
        # strictly below the gap both points separate
        assert orbit_separated_count(phi, F(1, 4), 2).value == 2

    def test_span_le_sep_randomized(self):
        rng = random.Random(23)
        for _ in range(40):
            phi = random_relation(rng, rng.randint(2, 6))
            for eps in (F(1, 2), F(1, 4)):
                for n in (1, 2, 3):
                    s = orbit_separated_count(phi, eps, n)
                    r = orbit_spanning_count(phi, eps, n)
                    assert s.exact and r.exact and r.value <= s.value

    def test_monotone_in_eps_and_depth(self):
        rng = random.Random(24)
        for _ in range(20):
            phi = random_relation(rng, rng.randint(2, 5))
            for n in (1, 2, 3):
                s_big = orbit_separated_count(phi, F(1, 2), n).value
                s_small = orbit_separated_count(phi, F(1, 8), n).value
                assert s_big <= s_small
            for eps in (F(1, 2), F(1, 4)):
                counts = [
                    orbit_separated_count(phi, eps, n).value for n in (1, 2, 3, 4)
                ]
                assert counts == sorted(counts)

    def test_greedy_fallback_flagged(self):
        # close points: every orbit pair conflicts, nothing is isolated
        space = FiniteMetricSpace.from_line_points([0, F(1, 4)])
        phi = full_relation(space)
        s = orbit_separated_count(phi, F(1, 2), 6, threshold=3)
        assert not s.exact
        assert s.value == 1  # greedy picks one orbit in a complete conflict graph


class TestBottleneck:
    def test_depth_one_is_the_metric(self):
        rng = random.Random(25)
        phi = random_relation(rng, 4)
        mat = bottleneck_distance_matrix(phi, 1)
        assert mat == [list(row) for row in phi.space.dist]

    def test_full_relation_stays_at_the_metric(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 4), 1])
        phi = full_relation(space)
        for n in (1, 2, 4):
            assert bottleneck_distance_matrix(phi, n) == [
                list(row) for row in space.dist
            ]

    def test_single_valued_is_orbit_max_metric(self):
        space = FiniteMetricSpace.from_line_points([0, F(1, 4), F(1, 2), 1])
        f = singleton_relation(space, [1, 2, 3, 3])
        n = 3
        orbits = {o[0]: o for o in enumerate_orbits(f, n).orbits}
        mat = bottleneck_distance_matrix(f, n)
        for x in range(4):
            for y in range(4):
                assert mat[x][y] == dn_distance(space, orbits[x], orbits[y])

    def test_symmetry_and_monotonicity(self):
        rng = random.Random(26)
        for _ in range(20):
            phi = random_relation(rng, rng.randint(2, 5))
            prev = None
            for n in (1, 2, 3, 4):
                mat = bottleneck_distance_matrix(phi, n)
                for i in range(phi.space.n):
                    assert mat[i][i] == 0
                    for j in range(phi.space.n):
                        assert mat[i][j] == mat[j][i]
                        if prev is not None:
                            assert mat[i][j] >= prev[i][j]
                prev = mat

    def test_triangle_inequality_can_fail(self):
        # a hub point can chase either neighbour's orbit while the neighbours
        # drift far apart, so the orbit-infimum bottleneck distance is not a
        # metric: here d(x,y) and d(y,z) stay tiny but d(x,z) grows to 1/2
        space = FiniteMetricSpace.from_line_points(
            [0, F(1, 100), F(2, 100), F(1, 2), 1]
        )
        phi = FiniteRelation(space, [[3], [3, 4], [4], [3], [4]])
        d_xy = bottleneck_distance(phi, 0, 1, 2)
        d_yz = bottleneck_distance(phi, 1, 2, 2)
        d_xz = bottleneck_distance(phi, 0, 2, 2)
        assert d_xy == F(1, 100)
        assert d_yz == F(1, 100)
        assert d_xz == F(1, 2)
        assert d_xz > d_xy + d_yz

    def test_single_valued_collapse_counts_agree(self):
        rng = random.Random(27)
        for _ in range(20):
            n_pts = rng.randint(2, 5)
            space = FiniteMetricSpace.from_line_points(
                sorted(F(p, 16) for p in rng.sample(range(17), n_pts))
            )
            f = singleton_relation(space, [rng.randrange(n_pts) for _ in range(n_pts)])
            for eps in (F(1, 2), F(1, 8)):
                for depth in (1, 2, 3):
                    s_orb = orbit_separated_count(f, eps, depth).value
                    s_bot = bottleneck_separated_count(f, eps, depth).value
                    assert s_orb == s_bot
                    r_orb = orbit_spanning_count(f, eps, depth).value
                    r_bot = bottleneck_spanning_count(f, eps, depth).value
                    assert r_orb == r_bot

    def test_full_relation_two_families_disagree(self):
        # the two entropy families genuinely differ on the full shift:
        # geometric orbit growth versus flat point counts
        phi = two_point_full_shift()
        orb = orbit_entropy_estimates(phi, [F(1, 2)], 6)[F(1, 2)]["sep"]
        bot = bottleneck_entropy_estimates(phi, [F(1, 2)], 6)[F(1, 2)]["sep"]
        assert orb.growth == pytest.approx(math.log(2), abs=1e-9)
        assert bot.growth == 0.0


class TestHyperspaceEntropy:
    def test_constant_lift_is_flat(self):
        phi = full_relation(FiniteMetricSpace.uniform(3))
        est = hyperspace_entropy_estimate(phi, [F(1, 2)], 4)[F(1, 2)]["sep"]
        counts = [c for _, c in est.counts]
        assert counts == [counts[0]] * len(counts)
        assert est.growth == 0.0

    def test_identity_relation_flat(self):
        phi = identity_relation(FiniteMetricSpace.uniform(3))
        est = hyperspace_entropy_estimate(phi, [F(1, 2)], 4)[F(1, 2)]["sep"]
        assert est.growth == 0.0

    def test_single_valued_embedding_dominates(self):
        rng = random.Random(28)
        for _ in range(10):
            n_pts = rng.randint(2, 4)
            space = FiniteMetricSpace.from_line_points(
                sorted(F(p, 8) for p in rng.sample(range(9), n_pts))
            )
            f = singleton_relation(space, [rng.randrange(n_pts) for _ in range(n_pts)])
            lift_est = hyperspace_entropy_estimate(f, [F(1, 8)], 3)[F(1, 8)]["sep"]
            base_est = orbit_entropy_estimates(f, [F(1, 8)], 3)[F(1, 8)]["sep"]
            for n in (1, 2, 3):
                assert lift_est.count_at(n) >= base_est.count_at(n)

    def test_cap_propagates(self):
        phi = full_relation(FiniteMetricSpace.uniform(5))
        with pytest.raises(ValueError):
            hyperspace_entropy_estimate(phi, [F(1, 2)], 2, cap=4)
