import random

import pytest

from mcinverse import (DimensionMismatch, EnumerationLimit, ExplicitSet,
                       GraphicMatroid, LatticeSimplex, MConvexSet, NotInSet,
                       PartitionMatroid, SegmentEmbed, UniformMatroid,
                       set_from_descriptor)

from helpers import oracle_exchange_pairs, random_instance


def e(d, i):
    return tuple(1 if k == i else 0 for k in range(d))


class _RawPoints(MConvexSet):
    """Unvalidated point list, for exercising verify_m_convexity directly."""

    family = "raw"

    def __init__(self, points):
        pts = sorted(set(points))
        super().__init__(len(pts[0]))
        self.points = pts
        self._lookup = set(pts)

    def _contains(self, p):
        return p in self._lookup

    def count(self):
        return len(self.points)

    def _generate(self):
        return iter(self.points)

    def descriptor(self):
        return {"family": "raw"}


class TestContains:
    def test_uniform_basis_vector(self):
        assert UniformMatroid(3, 1).contains((1, 0, 0))

    def test_uniform_wrong_sum(self):
        assert not UniformMatroid(3, 1).contains((1, 1, 0))

    def test_lattice_simplex(self):
        ls = LatticeSimplex(2, 2, 2)
        assert ls.contains((1, 1))
        assert ls.enumerate_points() == [(0, 2), (1, 1), (2, 0)]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            UniformMatroid(3, 1).contains((1, 0))

    def test_pure_no_state_change(self):
        u = UniformMatroid(3, 2)
        before = u.enumerate_points()
        u.contains((1, 1, 0))
        assert u.enumerate_points() == before


class TestExchangeNeighbors:
    def test_two_action_first(self):
        s = ExplicitSet([e(3, 0), e(3, 1)])
        assert s.exchange_neighbors(e(3, 0)) == [(0, 1)]

    def test_two_action_wrong_arc(self):
        s = ExplicitSet([e(3, 1), e(3, 2)])
        assert s.exchange_neighbors(e(3, 2)) == [(2, 1)]

    def test_singleton_no_neighbors(self):
        assert UniformMatroid(2, 2).exchange_neighbors((1, 1)) == []

    def test_not_in_set(self):
        with pytest.raises(NotInSet):
            UniformMatroid(3, 1).exchange_neighbors((1, 1, 0))

    def test_matches_membership_oracle(self):
        rng = random.Random(42)
        for _ in range(60):
            mset = random_instance(rng)
            for x in mset.enumerate_points()[:5]:
                assert mset.exchange_neighbors(x) == \
                    oracle_exchange_pairs(mset, x)


class TestEnumerate:
    def test_uniform_count(self):
        pts = UniformMatroid(4, 2).enumerate_points()
        assert len(pts) == 6
        assert pts == sorted(pts)

    def test_triangle_spanning_trees(self):
        g = GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])
        assert g.count() == 3
        assert len(g.enumerate_points()) == 3

    def test_guard_refuses(self):
        big = UniformMatroid(20, 10, max_points=100)
        with pytest.raises(EnumerationLimit):
            big.enumerate_points()

    def test_count_matches_enumeration(self):
        rng = random.Random(7)
        for _ in range(40):
            mset = random_instance(rng)
            assert mset.count() == len(mset.enumerate_points())

    def test_canonical_start_is_lex_min(self):
        rng = random.Random(8)
        for _ in range(40):
            mset = random_instance(rng)
            assert mset.canonical_start() == mset.enumerate_points()[0]


class TestVerifyMConvexity:
    def test_uniform_matroid(self):
        assert UniformMatroid(4, 2).verify_m_convexity()

    def test_two_far_points_fail(self):
        # (2,0) vs (0,2) needs the midpoint (1,1) for the exchange
        assert not _RawPoints([(2, 0), (0, 2)]).verify_m_convexity()

    def test_unequal_sums_fail(self):
        assert not _RawPoints([(0, 0), (1, 1)]).verify_m_convexity()

    def test_pair_of_basis_vectors(self):
        # any two distinct basis vectors exchange into each other
        assert _RawPoints([(1, 0), (0, 1)]).verify_m_convexity()
        assert _RawPoints([(1, 0, 0), (0, 0, 1)]).verify_m_convexity()

    def test_explicit_rejects_invalid(self):
        with pytest.raises(ValueError):
            ExplicitSet([(2, 0), (0, 2)])

    def test_randomized_families(self):
        # every built-in family instance passes, and shares one sum
        rng = random.Random(2024)
        for _ in range(1000):
            mset = random_instance(rng, d_max=6)
            pts = mset.enumerate_points()
            sums = {sum(p) for p in pts}
            assert len(sums) == 1
            assert mset.verify_m_convexity()


class TestSegmentEmbed:
    def test_lift_is_m_convex(self):
        for base_d, k, axis in [(2, 1, 0), (3, 2, 1), (16, 1, 5)]:
            s = SegmentEmbed(base_d, k, axis)
            assert s.d == base_d + 1
            assert s.count() == 2 * k + 1
            assert s.verify_m_convexity()

    def test_constant_zero_sum(self):
        s = SegmentEmbed(4, 3, 2)
        assert {sum(p) for p in s.enumerate_points()} == {0}

    def test_neighbors_move_along_segment(self):
        s = SegmentEmbed(2, 2, 0)
        low = s.canonical_start()
        assert low[0] == -2 and low[-1] == 2
        assert s.exchange_neighbors(low) == [(2, 0)]


class TestFamilies:
    def test_partition_matroid_blocks(self):
        pm = PartitionMatroid([[0, 1], [2, 3]], [1, 2], 2)
        pts = pm.enumerate_points()
        assert all(p[0] + p[1] <= 1 for p in pts)
        assert all(sum(p) == 2 for p in pts)
        assert pm.count() == len(pts)

    def test_partition_bad_blocks(self):
        with pytest.raises(ValueError):
            PartitionMatroid([[0, 1], [1, 2]], [1, 1], 1)

    def test_graphic_requires_connected(self):
        with pytest.raises(ValueError):
            GraphicMatroid(4, [(0, 1), (2, 3)])

    def test_graphic_rejects_self_loop(self):
        with pytest.raises(ValueError):
            GraphicMatroid(3, [(0, 0), (0, 1), (1, 2)])

    def test_lattice_bad_m(self):
        with pytest.raises(ValueError):
            LatticeSimplex(2, 2, 5)

    def test_explicit_requires_nonempty(self):
        with pytest.raises(ValueError):
            ExplicitSet([])

    def test_descriptor_roundtrip(self):
        rng = random.Random(19)
        for _ in range(25):
            mset = random_instance(rng)
            clone = set_from_descriptor(mset.descriptor())
            assert clone.enumerate_points() == mset.enumerate_points()

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            set_from_descriptor({"family": "nope"})
