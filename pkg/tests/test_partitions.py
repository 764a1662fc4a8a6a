import math
import random
from fractions import Fraction

import mpmath
import pytest

from mventropy.carriers import FiniteMetricSpace, FiniteRelation, full_relation
from mventropy.intervals import IntervalSet
from mventropy.library import endpoint_pair_map, tent_map
from mventropy.partitions import (
    FiniteMeasure,
    IntervalMeasure,
    OrderedPartition,
    conditional_entropy,
    disjointify,
    entropy_le_log_count_check,
    join_partitions,
    metric_entropy_estimate,
    nz_count,
    partition_entropy,
    refinement_sequence,
    xlogx,
)
from mventropy.randgen import (
    random_interval_partition,
    random_measure,
    random_partition_masks,
    random_relation,
)

import oracles

F = Fraction
LEB = IntervalMeasure.lebesgue()

P_TENT = OrderedPartition.from_literals(["[0,1/2]", "(1/2,1]"])
BETA_TENT = OrderedPartition.from_literals(["(0,1)", "{0}", "{1}"])


class TestXlogx:
    def test_convention_at_zero(self):
        assert xlogx(0) == 0.0
        assert xlogx(F(0)) == 0.0

    def test_at_one(self):
        assert xlogx(1) == 0.0

    def test_at_half_high_precision(self):
        expected = float(mpmath.mpf("0.5") * mpmath.log(mpmath.mpf("0.5")))
        assert abs(xlogx(F(1, 2)) - expected) < 1e-15
        assert abs(xlogx(F(1, 2)) + math.log(2) / 2) < 1e-15

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            xlogx(-1)


class TestPartitionEntropy:
    def test_uniform_two_block(self):
        assert abs(partition_entropy(LEB, P_TENT) - math.log(2)) < 1e-12

    def test_trivial_partition(self):
        assert partition_entropy(LEB, OrderedPartition.trivial(IntervalSet.full())) == 0.0

    def test_null_atoms_contribute_nothing(self):
        assert partition_entropy(LEB, BETA_TENT) == 0.0

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            OrderedPartition.from_literals(["[0,1/2]", "[1/2,1]"])  # overlap at 1/2
        with pytest.raises(ValueError):
            OrderedPartition.from_literals(["[0,1/2]"])  # does not cover


class TestConditionalEntropy:
    def test_conditioned_on_itself(self):
        assert conditional_entropy(LEB, P_TENT, P_TENT) == 0.0

    def test_conditioned_on_trivial(self):
        triv = OrderedPartition.trivial(IntervalSet.full())
        assert (
            abs(
                conditional_entropy(LEB, P_TENT, triv)
                - partition_entropy(LEB, P_TENT)
            )
            < 1e-12
        )

    def test_tent_pair_equals_log_two(self):
        # the full-measure piece of beta meets both halves with mass 1/2
        got = conditional_entropy(LEB, P_TENT, BETA_TENT)
        assert abs(got - math.log(2)) < 1e-12
        mc = oracles.conditional_entropy_monte_carlo(
            P_TENT.pieces, BETA_TENT.pieces, n_samples=40000, seed=11
        )
        assert abs(mc - got) < 0.05

    def test_compact_core_bound(self):
        # pieces shrunk by eps from a uniform k-block partition: the leftover
        # set has mass below k*eps and the conditional entropy below k*eps*log k
        k, eps = 4, F(1, 64)
        blocks = OrderedPartition.uniform_blocks(k)
        cores = []
        for lo, _, hi, _ in (p.raw_pieces[0] for p in blocks.pieces):
            cores.append(IntervalSet.interval(lo + eps / 4, hi - eps / 4))
        rest = IntervalSet.full()
        for c in cores:
            rest = rest.difference(c)
        beta = OrderedPartition([rest] + cores, IntervalSet.full())
        assert LEB.mass(rest) <= k * eps
        got = conditional_entropy(LEB, blocks, beta)
        assert got < float(k * eps) * math.log(k)


class TestDisjointify:
    def test_tent_pair(self):
        got = disjointify(tent_map(), P_TENT, 1)
        assert [str(p) for p in got.pieces] == ["[0,1/4] u [3/4,1]", "(1/4,3/4)"]

    def test_tent_beta_collapses(self):
        got = disjointify(tent_map(), BETA_TENT, 1)
        assert [str(p) for p in got.pieces] == ["[0,1]"]

    def test_zero_depth_is_identity(self):
        assert disjointify(tent_map(), P_TENT, 0) is P_TENT

    def test_single_valued_is_plain_preimage_partition(self):
        rng = random.Random(12)
        space = FiniteMetricSpace.uniform(5)
        for _ in range(20):
            f = FiniteRelation(space, [[rng.randrange(5)] for _ in range(5)])
            part = random_partition_masks(rng, 5, 3)
            tilde = disjointify(f, part, 1)
            plain = [f.large_preimage(p) for p in part.pieces]
            assert list(tilde.pieces) == [p for p in plain if p]


class TestJoinAndRefinement:
    def test_join_with_itself(self):
        assert join_partitions([P_TENT, P_TENT]).pieces == P_TENT.pieces

    def test_tent_join_cards(self):
        seq = refinement_sequence(tent_map(), P_TENT, 2)
        assert [str(p) for p in seq[1].pieces] == [
            "[0,1/4]",
            "(1/4,1/2]",
            "[3/4,1]",
            "(1/2,3/4)",
        ]
        bseq = refinement_sequence(tent_map(), BETA_TENT, 2)
        assert len(bseq[1]) == 3

    def test_depth_one_is_the_partition(self):
        assert refinement_sequence(tent_map(), P_TENT, 1)[0] is P_TENT

    def test_full_relation_stalls(self):
        phi = full_relation(FiniteMetricSpace.uniform(4))
        part = OrderedPartition.singletons(4)
        seq = refinement_sequence(phi, part, 4)
        assert all(p.pieces == part.pieces for p in seq)

    def test_cardinality_and_entropy_monotone(self):
        rng = random.Random(13)
        for _ in range(10):
            phi = random_relation(rng, 5)
            part = random_partition_masks(rng, 5, 3)
            mu = random_measure(rng, 5)
            seq = refinement_sequence(phi, part, 5)
            cards = [len(p) for p in seq]
            ents = [partition_entropy(mu, p) for p in seq]
            assert cards == sorted(cards)
            for a, b in zip(ents, ents[1:]):
                assert b >= a - 1e-12


class TestMetricEntropyEstimate:
    def test_full_relation_decays_like_one_over_n(self):
        phi = full_relation(FiniteMetricSpace.uniform(3))
        mu = FiniteMeasure.uniform(3)
        part = OrderedPartition.singletons(3)
        est = metric_entropy_estimate(mu, phi, part, 8)
        h1 = partition_entropy(mu, part)
        for n, v in est.values:
            assert abs(v - h1 / n) < 1e-12
        assert est.growth == 0.0

    def test_tent_linear_cardinality_growth(self):
        est = metric_entropy_estimate(LEB, tent_map(), P_TENT, 10)
        for n, c in est.counts:
            assert c <= 4 * n
        for n, v in est.values:
            assert v <= math.log(4 * n) / n + 1e-12

    def test_finite_carrier_counts_stabilize(self):
        rng = random.Random(14)
        for _ in range(10):
            phi = random_relation(rng, 4)
            part = random_partition_masks(rng, 4, 2)
            mu = random_measure(rng, 4)
            est = metric_entropy_estimate(mu, phi, part, 8)
            cards = [c for _, c in est.counts]
            assert max(cards) <= 2 ** 4
            assert cards[-1] == cards[-2]  # join cardinality bounded, settles


class TestCountBound:
    def test_beta_under_lebesgue(self):
        assert nz_count(LEB, BETA_TENT) == 1
        assert partition_entropy(LEB, BETA_TENT) <= 0.0 + 1e-12

    def test_uniform_blocks_are_the_equality_case(self):
        for m in (2, 4, 8):
            part = OrderedPartition.uniform_blocks(m)
            assert nz_count(LEB, part) == m
            assert abs(partition_entropy(LEB, part) - math.log(m)) < 1e-12

    def test_weighted_example(self):
        mu = FiniteMeasure([F(1, 2), F(1, 4), F(1, 8), F(1, 16), F(1, 16)])
        part = OrderedPartition.singletons(5)
        h = partition_entropy(mu, part)
        expected = float(
            -sum(mpmath.mpf(str(w)) * mpmath.log(mpmath.mpf(str(w))) for w in
                 ["0.5", "0.25", "0.125", "0.0625", "0.0625"])
        )
        assert abs(h - expected) < 1e-12
        assert abs(h - 1.875 * math.log(2)) < 1e-12
        assert h <= math.log(5) + 1e-12

    def test_random_pairs(self):
        rng = random.Random(15)
        for _ in range(200):
            n = rng.randint(2, 8)
            mu = random_measure(rng, n)
            part = random_partition_masks(rng, n, rng.randint(1, n))
            assert entropy_le_log_count_check(mu, part)


class TestSubadditivityOnStrongInvarianceScenario:
    def test_endpoint_pair_chain(self):
        # on the strongly invariant instance the conditional-entropy chain
        # bound holds at every finite depth
        e4 = endpoint_pair_map()
        part = OrderedPartition.uniform_blocks(4)
        cores = []
        eps = F(1, 32)
        for p in part.pieces:
            lo, _, hi, _ = p.raw_pieces[0]
            cores.append(IntervalSet.interval(lo + eps / 4, hi - eps / 4))
        rest = IntervalSet.full()
        for c in cores:
            rest = rest.difference(c)
        beta = OrderedPartition([rest] + cores, IntervalSet.full())
        h_cond = conditional_entropy(LEB, part, beta)
        seq_p = refinement_sequence(e4, part, 6)
        seq_b = refinement_sequence(e4, beta, 6)
        for n in range(1, 7):
            lhs = partition_entropy(LEB, seq_b[n - 1]) / n + h_cond
            rhs = partition_entropy(LEB, seq_p[n - 1]) / n
            assert lhs >= rhs - 1e-12


class TestMeasures:
    def test_finite_measure_validation(self):
        with pytest.raises(ValueError):
            FiniteMeasure([F(1, 2), F(1, 4)])
        with pytest.raises(ValueError):
            FiniteMeasure([F(3, 2), F(-1, 2)])

    def test_interval_measure_validation(self):
        with pytest.raises(ValueError):
            IntervalMeasure(cells=[(0, F(1, 2), 1)])
        with pytest.raises(ValueError):
            IntervalMeasure(cells=[(0, 1, F(1, 2))])

    def test_density_and_atoms(self):
        mu = IntervalMeasure(
            cells=[(0, F(1, 2), F(3, 2)), (F(1, 2), 1, 0)],
            atoms=[(F(3, 4), F(1, 4))],
        )
        assert mu.mass(IntervalSet.parse("[0,1/2]")) == F(3, 4)
        assert mu.mass(IntervalSet.parse("(1/2,1]")) == F(1, 4)
        assert mu.mass(IntervalSet.parse("{3/4}")) == F(1, 4)
        assert mu.mass(IntervalSet.full()) == 1

    def test_lebesgue_on_random_partitions_sums_to_one(self):
        rng = random.Random(16)
        for _ in range(20):
            part = random_interval_partition(rng)
            assert sum(LEB.mass(p) for p in part.pieces) == 1
