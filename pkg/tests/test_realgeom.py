import random
from fractions import Fraction

import pytest

from cplxdist.algebra import (GR_I, GR_ONE, GR_ZERO, GaussianRational,
                              MultiPoly, gr, poly_eval)
from cplxdist.lines3 import LineC3, canonical_line, vec3
from cplxdist.realgeom import (NonStandardLineError, SingularPointError,
                               StandardLineCoords, apply_j, c3_to_real,
                               complex_tangent_frame, eval_real_poly,
                               g_coords, g_inverse, line_membership_conditions,
                               phi, real6, real_to_c3, ruled_at_point,
                               standard_lines_through)


def rand_fraction(rng, bound=8, den=3):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_coords(rng):
    return StandardLineCoords(*[rand_fraction(rng) for _ in range(8)])


def rand_real_poly(rng, degree=3, terms=6, bound=5):
    acc = []
    for _ in range(terms):
        exps = [0] * 6
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(6)] += 1
        acc.append((tuple(exps), GaussianRational(rand_fraction(rng, bound))))
    return MultiPoly(6, acc)


X = [MultiPoly.variable(6, i) for i in range(6)]


class TestJOperator:
    def test_squares_to_minus_identity(self):
        for i in range(6):
            e = tuple(Fraction(int(j == i)) for j in range(6))
            assert apply_j(apply_j(e)) == tuple(-x for x in e)

    def test_matches_complex_multiplication(self, rng):
        for _ in range(50):
            p = tuple(rand_fraction(rng) for _ in range(6))
            z = real_to_c3(p)
            zi = (GR_I * z[0], GR_I * z[1], GR_I * z[2])
            assert apply_j(p) == c3_to_real(zi)


class TestGCoords:
    def test_read_off_example(self):
        # (0, i, 0) + t(1, 1, 2i) -> (0,1, 0,0, 1,0, 0,2)
        line = LineC3((GR_ZERO, GR_I, GR_ZERO), (GR_ONE, gr(1), gr(0, 2)))
        coords = g_coords(line)
        assert coords.as_tuple() == (0, 1, 0, 0, 1, 0, 0, 2)

    def test_z_axis_not_standard(self):
        with pytest.raises(NonStandardLineError):
            g_coords(canonical_line(vec3(0, 0, 0), vec3(0, 0, 1)))

    def test_round_trip_bulk(self, rng):
        for _ in range(1000):
            coords = rand_coords(rng)
            assert g_coords(g_inverse(coords)) == coords

    def test_line_round_trip(self, rng):
        for _ in range(200):
            base = (gr(rng.randint(-5, 5)), gr(rng.randint(-5, 5), rng.randint(-5, 5)),
                    gr(rng.randint(-5, 5)))
            d = (gr(rng.randint(1, 5)), gr(rng.randint(-5, 5)),
                 gr(rng.randint(-5, 5), rng.randint(-5, 5)))
            line = canonical_line(base, d)
            assert g_inverse(g_coords(line)) == line


class TestPhi:
    def test_zero_coords(self):
        z = StandardLineCoords(*[Fraction(0)] * 8)
        assert phi(z, 3, 4) == (3, 4, 0, 0, 0, 0)

    def test_image_lies_on_line(self, rng):
        for _ in range(200):
            coords = rand_coords(rng)
            line = g_inverse(coords)
            p = phi(coords, rand_fraction(rng), rand_fraction(rng))
            assert line.contains_point(real_to_c3(p))

    def test_fourth_component_expansion(self):
        # Im((s+it)(c1+ic2)) = s c2 + t c1: the t-coefficient multiplies c1
        s, t = Fraction(5), Fraction(7)
        c1, c2 = Fraction(2), Fraction(3)
        coords = StandardLineCoords(Fraction(0), Fraction(0), Fraction(0),
                                    Fraction(0), c1, c2, Fraction(0), Fraction(0))
        p = phi(coords, s, t)
        z = (GaussianRational(s, t)) * GaussianRational(c1, c2)
        assert p[2] == z.re and p[3] == z.im
        assert p[3] == s * c2 + t * c1


class TestLineMembershipConditions:
    def test_real_part_of_z2(self):
        # f = x3 (Re z2): conditions a1 = 0, c1 = 0, c2 = 0
        conds = line_membership_conditions(X[2])
        polys = {(u, v): q for u, v, q in conds}
        assert set(polys) == {(0, 0), (1, 0), (0, 1)}
        a1 = MultiPoly.variable(8, 0)
        c1 = MultiPoly.variable(8, 4)
        c2 = MultiPoly.variable(8, 5)
        assert polys[(0, 0)] == a1
        assert polys[(1, 0)] == c1
        assert polys[(0, 1)] == -c2

    def test_unit_constant_unsatisfiable(self):
        conds = line_membership_conditions(MultiPoly.constant(6, 1))
        assert len(conds) == 1
        (u, v, q) = conds[0]
        assert (u, v) == (0, 0) and q == MultiPoly.constant(8, 1)

    def test_zero_polynomial_no_conditions(self):
        assert line_membership_conditions(MultiPoly.zero(6)) == []

    def test_complex_coefficients_rejected(self):
        f = MultiPoly(6, [((1, 0, 0, 0, 0, 0), GR_I)])
        with pytest.raises(ValueError):
            line_membership_conditions(f)

    @staticmethod
    def line_inside(f, coords):
        """Oracle: exact vanishing of f on a (deg f + 1)^2 parameter grid."""
        d = f.degree()
        for snum in range(d + 1):
            for tnum in range(d + 1):
                p = phi(coords, Fraction(snum), Fraction(tnum))
                if eval_real_poly(f, p):
                    return False
        return True

    def test_equivalence_both_directions(self, rng):
        # planted contained lines and random ones; exact in both directions
        trials = 0
        while trials < 300:
            coords = rand_coords(rng)
            if rng.random() < 0.5:
                # plant f in the ideal of the line: f = sum g_i * h_i with
                # h_i the four linear forms cutting the line out of R^6
                a1, a2, b1, b2, c1, c2, d1, d2 = coords.as_tuple()
                h = [X[2] - MultiPoly.constant(6, a1) - X[0] * c1 + X[1] * c2,
                     X[3] - MultiPoly.constant(6, a2) - X[0] * c2 - X[1] * c1,
                     X[4] - MultiPoly.constant(6, b1) - X[0] * d1 + X[1] * d2,
                     X[5] - MultiPoly.constant(6, b2) - X[0] * d2 - X[1] * d1]
                f = MultiPoly.zero(6)
                for hi in h:
                    if rng.random() < 0.6:
                        g = rand_real_poly(rng, degree=1, terms=2, bound=3)
                        f = f + g * hi
                if f.is_zero():
                    continue
            else:
                f = rand_real_poly(rng, degree=3, terms=4, bound=4)
                if f.is_zero():
                    continue
            trials += 1
            point8 = coords.as_tuple()
            conds_vanish = all(
                not q.eval([GaussianRational(x) for x in point8])
                for _, _, q in line_membership_conditions(f))
            assert conds_vanish == self.line_inside(f, coords)


class TestComplexTangentFrame:
    def test_hyperplane_x1(self):
        frame = complex_tangent_frame(X[0], real6(0, 1, 2, 3, 4, 5))
        assert frame.gradient == (1, 0, 0, 0, 0, 0)
        assert frame.j_gradient == (0, 1, 0, 0, 0, 0)
        assert len(frame.v_basis) == 4
        # V_p = span{e3..e6}: basis vectors vanish on the first two slots
        for v in frame.v_basis:
            assert v[0] == 0 and v[1] == 0
        assert frame.e_vectors[0] == (0,) * 6
        assert frame.e_vectors[1] == (0,) * 6

    def test_singular_point_rejected(self):
        f = X[0] * X[0]
        with pytest.raises(SingularPointError):
            complex_tangent_frame(f, real6(0, 1, 1, 1, 1, 1))

    def test_e_vectors_orthogonal_to_gradient_pair(self, rng):
        done = 0
        while done < 60:
            f = rand_real_poly(rng)
            p = tuple(rand_fraction(rng, 4, 2) for _ in range(6))
            grads = [eval_real_poly(g, p) for g in f.gradient()]
            if not any(grads):
                continue
            done += 1
            frame = complex_tangent_frame(f, p)
            for e in frame.e_vectors:
                assert sum(a * b for a, b in zip(e, frame.gradient)) == 0
                assert sum(a * b for a, b in zip(e, frame.j_gradient)) == 0

    def test_v_basis_solves_both_conditions(self, rng):
        f = rand_real_poly(rng)
        p = real6(1, 2, 0, 1, 1, 3)
        grads = [eval_real_poly(g, p) for g in f.gradient()]
        if not any(grads):
            return
        frame = complex_tangent_frame(f, p)
        for v in frame.v_basis:
            assert sum(a * b for a, b in zip(v, frame.gradient)) == 0
            assert sum(a * b for a, b in zip(v, frame.j_gradient)) == 0


class TestRuledAtPoint:
    def test_hyperplane_ruled(self):
        assert ruled_at_point(X[0], real6(0, 9, 1, 2, 3, 4)) is True

    def test_five_sphere_not_ruled(self):
        f = sum((X[i] * X[i] for i in range(6)), MultiPoly.zero(6)) \
            - MultiPoly.constant(6, 1)
        assert ruled_at_point(f, real6(1, 0, 0, 0, 0, 0)) is False

    def test_split_hyperplane_pair_ruled(self):
        f = X[0] * (X[0] - MultiPoly.constant(6, 1))
        assert ruled_at_point(f, real6(0, 4, 5, 6, 7, 8)) is True

    def test_point_must_lie_on_surface(self):
        with pytest.raises(ValueError):
            ruled_at_point(X[0], real6(1, 0, 0, 0, 0, 0))

    def test_true_implies_plane_inside(self, rng):
        # whenever ruled, 20 random points of p + V_p satisfy f exactly
        cases = [(X[0], real6(0, 1, 2, 3, 4, 5)),
                 (X[0] * (X[0] - MultiPoly.constant(6, 1)), real6(0, 1, 1, 1, 2, 2))]
        for f, p in cases:
            assert ruled_at_point(f, p)
            frame = complex_tangent_frame(f, p)
            for _ in range(20):
                q = list(p)
                for e in frame.e_vectors:
                    w = rand_fraction(rng, 5, 2)
                    q = [qi + w * ei for qi, ei in zip(q, e)]
                assert eval_real_poly(f, q) == 0


class TestStandardLinesThroughPair:
    def test_standard_chord(self):
        lines = standard_lines_through(vec3(0, 0, 0), vec3(1, 2, 3))
        assert len(lines) == 1
        assert lines[0].contains_point(vec3(0, 0, 0))
        assert lines[0].contains_point(vec3(1, 2, 3))

    def test_non_standard_chord_empty(self):
        assert standard_lines_through(vec3(0, 0, 0), vec3(0, 2, 3)) == []

    def test_coincident_points_rejected(self):
        with pytest.raises(ValueError):
            standard_lines_through(vec3(1, 1, 1), vec3(1, 1, 1))

    def test_at_most_one_line(self, rng):
        for _ in range(100):
            p = (gr(rng.randint(-4, 4), rng.randint(-4, 4)),
                 gr(rng.randint(-4, 4)), gr(rng.randint(-4, 4)))
            q = (gr(rng.randint(-4, 4), rng.randint(-4, 4)),
                 gr(rng.randint(-4, 4)), gr(rng.randint(-4, 4)))
            if p == q:
                continue
            lines = standard_lines_through(p, q)
            assert len(lines) <= 1
            expected_standard = bool(q[0] - p[0])
            assert len(lines) == (1 if expected_standard else 0)
