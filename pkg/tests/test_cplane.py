import random
from fractions import Fraction

import pytest

from cplxdist.algebra import GR_I, GR_ONE, GR_ZERO, GaussianRational, gr
from cplxdist.cplane import (CapExceededError, DuplicatePointsError, PointC2,
                             delta, distance_statistics, growth_sets,
                             isotropic_classify, point2, quadruples_bruteforce)
from cplxdist.generators import grid_points, isotropic_points


def rand_point(rng, bound=20, den=6):
    return PointC2(
        GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, den)),
                         Fraction(rng.randint(-bound, bound), rng.randint(1, den))),
        GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, den)),
                         Fraction(rng.randint(-bound, bound), rng.randint(1, den))))


def rand_point_set(rng, n, bound=20, den=6):
    pts = {}
    while len(pts) < n:
        pts.setdefault(rand_point(rng, bound, den))
    return list(pts)


UNIT_SQUARE = [point2(0, 0), point2(1, 0), point2(0, 1), point2(1, 1)]
ISO_TRIPLE = [point2(0, 0), PointC2(gr(1), GR_I), PointC2(gr(2), gr(0, 2))]


class TestDelta:
    def test_pythagorean(self):
        assert delta(point2(0, 0), point2(3, 4)) == gr(25)

    def test_self_distance_zero(self):
        p = point2("3/7", "-2/5")
        assert delta(p, p) == GR_ZERO

    def test_isotropic_cancellation(self):
        assert delta(point2(0, 0), PointC2(gr(1), GR_I)) == GR_ZERO

    def test_symmetry_and_translation_invariance(self, rng):
        for _ in range(300):
            p, q, v = rand_point(rng), rand_point(rng), rand_point(rng)
            assert delta(p, q) == delta(q, p)
            assert delta(p + v, q + v) == delta(p, q)


class TestDistanceStatistics:
    def test_grid3_distinct_distances(self):
        # independent oracle: integer pair loop over the 3x3 grid
        coords = [(i, j) for i in range(3) for j in range(3)]
        oracle = {(a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
                  for a in coords for b in coords if a != b}
        assert oracle == {1, 2, 4, 5, 8}
        stats = distance_statistics(grid_points(3))
        assert stats.distinct_count == 5
        assert {d.re for d in stats.distinct_distances} == oracle

    def test_unit_square_histogram_and_quadruples(self):
        stats = distance_statistics(UNIT_SQUARE)
        assert {k.re: v for k, v in stats.histogram.items()} == {1: 8, 2: 4}
        assert stats.zero_pairs == 0
        # oracle: enumerate all 4^4 ordered quadruples directly
        oracle = 0
        for a in UNIT_SQUARE:
            for b in UNIT_SQUARE:
                for c in UNIT_SQUARE:
                    for d in UNIT_SQUARE:
                        if (a, b) != (c, d) and delta(a, b) == delta(c, d) != GR_ZERO:
                            oracle += 1
        assert oracle == 68
        assert stats.quadruple_count == 68

    def test_isotropic_triple_degenerate(self):
        stats = distance_statistics(ISO_TRIPLE)
        assert stats.distinct_distances == frozenset({GR_ZERO})
        assert stats.quadruple_count == 0
        assert stats.zero_pairs == 6

    def test_pair_count_identity(self, rng):
        for n in (2, 5, 9):
            pts = rand_point_set(rng, n)
            stats = distance_statistics(pts)
            assert sum(stats.histogram.values()) + stats.zero_pairs == n * (n - 1)

    def test_duplicate_points_rejected(self):
        with pytest.raises(DuplicatePointsError):
            distance_statistics([point2(1, 1), point2(1, 1)])

    def test_threads_do_not_change_result(self, rng):
        pts = rand_point_set(rng, 70, bound=30)
        a = distance_statistics(pts, threads=1)
        b = distance_statistics(pts, threads=8)
        assert a == b

    def test_cauchy_schwarz_chain(self, rng):
        for n in (3, 6, 10):
            stats = distance_statistics(rand_point_set(rng, n, bound=8, den=2))
            t = len(stats.histogram)
            s = sum(stats.histogram.values())
            assert t * (stats.quadruple_count + s) >= s * s


class TestQuadruplesBruteforce:
    def test_unit_square(self):
        assert quadruples_bruteforce(UNIT_SQUARE) == 68

    def test_isotropic_line_zero(self):
        assert quadruples_bruteforce(ISO_TRIPLE) == 0

    def test_two_points(self):
        # (a,b) and (b,a) cross-match: exactly 2 ordered quadruples
        assert quadruples_bruteforce([point2(0, 0), point2(1, 2)]) == 2

    def test_cap(self):
        pts = grid_points(8)  # 64 points
        with pytest.raises(CapExceededError):
            quadruples_bruteforce(pts, cap=50)

    def test_matches_histogram_up_to_12(self, rng):
        for n in (4, 7, 10, 12):
            pts = rand_point_set(rng, n, bound=6, den=2)
            stats = distance_statistics(pts)
            assert quadruples_bruteforce(pts) == stats.quadruple_count


class TestIsotropicClassify:
    def test_planted_cover(self):
        pts = ISO_TRIPLE + [point2(1, 0)]
        cls = isotropic_classify(pts)
        assert cls.plus_cover == 3
        assert cls.plus_classes[GR_ZERO] == tuple(ISO_TRIPLE)

    def test_real_grid_all_keys_distinct(self):
        cls = isotropic_classify(grid_points(3))
        assert cls.plus_cover == 1 and cls.minus_cover == 1

    def test_single_point(self):
        cls = isotropic_classify([point2(5, -3)])
        assert cls.plus_cover == 1 and cls.minus_cover == 1

    def test_key_collision_iff_zero_distance(self, rng):
        # planted isotropic pairs mixed with random ones
        pairs = []
        for _ in range(10_000):
            p = rand_point(rng, 10, 4)
            if rng.random() < 0.5:
                t = GaussianRational(Fraction(rng.randint(-10, 10), rng.randint(1, 4)),
                                     Fraction(rng.randint(-10, 10), rng.randint(1, 4)))
                s = GR_I if rng.random() < 0.5 else -GR_I
                q = PointC2(p.x + t, p.y + s * t)
            else:
                q = rand_point(rng, 10, 4)
            pairs.append((p, q))
        for p, q in pairs:
            share = (p.y - GR_I * p.x == q.y - GR_I * q.x) or \
                    (p.y + GR_I * p.x == q.y + GR_I * q.x)
            assert (delta(p, q) == GR_ZERO) == share


def quadruple_loop_sets(scalars):
    """Oracle: the three growth sets by direct quadruple enumeration."""
    plus, minus, prod = set(), set(), set()
    for a1 in scalars:
        for a2 in scalars:
            for a3 in scalars:
                for a4 in scalars:
                    d1, d2 = a1 - a2, a3 - a4
                    plus.add(d1 * d1 + d2 * d2)
                    minus.add(d1 * d1 - d2 * d2)
                    prod.add(d1 * d2)
    return plus, minus, prod


class TestGrowthSets:
    def test_zero_one_two(self):
        g = growth_sets([gr(0), gr(1), gr(2)])
        assert len(g.plus_set) == 6
        assert {x.re for x in g.plus_set} == {0, 1, 2, 4, 5, 8}
        assert len(g.minus_set) == 7
        assert len(g.product_set) == 7

    def test_singleton(self):
        g = growth_sets([gr(0)])
        assert g.plus_set == g.minus_set == g.product_set == frozenset({GR_ZERO})

    def test_pair(self):
        g = growth_sets([gr(0), gr(1)])
        assert {x.re for x in g.plus_set} == {0, 1, 2}

    def test_matches_quadruple_oracle(self, rng):
        for _ in range(6):
            scalars = list({GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                                             Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                            for _ in range(rng.randint(1, 6))})
            g = growth_sets(scalars)
            plus, minus, prod = quadruple_loop_sets(scalars)
            assert g.plus_set == plus
            assert g.minus_set == minus
            assert g.product_set == prod

    def test_reduction_identities(self, rng):
        # Delta(P) of each reduction point set equals the growth set minus
        # {0}, i.e. both inclusions hold exactly
        for _ in range(8):
            scalars = list({GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 2)),
                                             Fraction(rng.randint(-5, 5), rng.randint(1, 2)))
                            for _ in range(rng.randint(1, 8))})
            g = growth_sets(scalars)
            four = gr(4)
            for pts, target in ((g.points_plus, g.plus_set),
                                (g.points_minus, g.minus_set),
                                (g.points_product,
                                 frozenset(four * x for x in g.product_set))):
                deltas = {delta(p, q) for p in pts for q in pts if p != q}
                assert deltas <= target
                assert target <= deltas | {GR_ZERO}


class TestGenerators:
    def test_grid3_is_the_nine_points(self):
        pts = grid_points(3)
        assert len(pts) == 9
        assert {(p.x.re, p.y.re) for p in pts} == {(i, j) for i in range(3) for j in range(3)}

    def test_isotropic_parametrization(self):
        pts = isotropic_points(3, +1, gr(0))
        assert pts == ISO_TRIPLE
