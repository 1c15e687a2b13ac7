"""Seeded dataset generators.

All randomness flows through a single ``random.Random(seed)`` (Mersenne
Twister) per call, consumed in documented order, so a (kind, params,
seed) triple always produces the same dataset.  Random rationals draw
numerator then denominator via ``randint``; random points draw their
coordinates in the order x.re, x.im, y.re, y.im.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algebra import GR_I, GR_ZERO, GaussianRational, Matrix, gr, mat_nullspace
from .cplane import PointC2
from .lines3 import LineC3, PlaneC3, Vec3, canonical_line, canonical_plane, v_add, v_is_zero, v_scale


class GeneratorError(ValueError):
    """Invalid generator parameters."""


def grid_points(k: int) -> list[PointC2]:
    """The k x k integer grid {0..k-1}^2."""
    if k < 1:
        raise GeneratorError("grid size must be >= 1")
    return [PointC2(gr(i), gr(j)) for i in range(k) for j in range(k)]


def isotropic_points(m: int, sign: int, k: GaussianRational) -> list[PointC2]:
    """m integer-parameter points on the isotropic line {y = sign*i*x + k}."""
    if m < 1:
        raise GeneratorError("point count must be >= 1")
    if sign not in (+1, -1):
        raise GeneratorError("sign must be +1 or -1")
    s = GR_I if sign > 0 else -GR_I
    return [PointC2(gr(t), s * gr(t) + k) for t in range(m)]


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_gaussian_rational(rng: random.Random, bound: int) -> GaussianRational:
    re = random_rational(rng, bound)
    im = random_rational(rng, bound)
    return GaussianRational(re, im)


def random_points(n: int, bound: int, seed: int) -> list[PointC2]:
    """n distinct i.i.d. points with numerators/denominators bounded by
    ``bound``; collisions are redrawn."""
    if n < 1 or bound < 1:
        raise GeneratorError("need n >= 1 and bound >= 1")
    rng = random.Random(seed)
    seen: dict[PointC2, None] = {}
    guard = 0
    while len(seen) < n:
        p = PointC2(random_gaussian_rational(rng, bound),
                    random_gaussian_rational(rng, bound))
        seen.setdefault(p)
        guard += 1
        if guard > 100 * n + 1000:
            raise GeneratorError("bound too small to draw n distinct points")
    return list(seen)


def product_point_sets(scalars: Sequence[GaussianRational]) -> dict[str, list[PointC2]]:
    """The three point sets that reduce the quadruple growth sets of A to
    distance sets: A x A, A x iA, and {(a1+a2, i a1 - i a2)}."""
    from .cplane import growth_sets
    if not scalars:
        raise GeneratorError("scalar set must be nonempty")
    g = growth_sets(scalars)
    return {"plus": list(g.points_plus),
            "minus": list(g.points_minus),
            "product": list(g.points_product)}


def _random_vec3(rng: random.Random, bound: int) -> Vec3:
    return (random_gaussian_rational(rng, bound),
            random_gaussian_rational(rng, bound),
            random_gaussian_rational(rng, bound))


def _random_nonzero_vec3(rng: random.Random, bound: int) -> Vec3:
    while True:
        v = _random_vec3(rng, bound)
        if not v_is_zero(v):
            return v


def random_lines(n: int, bound: int, seed: int) -> list[LineC3]:
    """n distinct generic lines with bounded random base and direction."""
    if n < 1 or bound < 1:
        raise GeneratorError("need n >= 1 and bound >= 1")
    rng = random.Random(seed)
    seen: dict[LineC3, None] = {}
    guard = 0
    while len(seen) < n:
        line = canonical_line(_random_vec3(rng, bound), _random_nonzero_vec3(rng, bound))
        seen.setdefault(line)
        guard += 1
        if guard > 100 * n + 1000:
            raise GeneratorError("could not draw n distinct lines")
    return list(seen)


def _plane_frame(plane: PlaneC3) -> tuple[Vec3, Vec3, Vec3]:
    """A point on the plane plus two independent in-plane directions."""
    n = plane.normal
    k = next(i for i in range(3) if n[i])
    point = tuple(plane.constant / n[k] if i == k else GR_ZERO for i in range(3))
    basis = mat_nullspace(Matrix.from_rows([list(n)]))
    u, v = basis[0], basis[1]
    return point, u, v


def planted_plane_lines(plane_count: int, per_plane: int, extra: int,
                        seed: int, bound: int = 6) -> tuple[list[LineC3], list[PlaneC3]]:
    """plane_count random planes with per_plane in-plane lines each, plus
    ``extra`` generic lines; all lines distinct and canonical.

    Returns (lines, planted planes); lines are ordered plane by plane,
    then the generic ones.
    """
    if plane_count < 0 or per_plane < 2 or extra < 0:
        raise GeneratorError("need per_plane >= 2 and nonnegative counts")
    rng = random.Random(seed)
    planes: dict[PlaneC3, None] = {}
    guard = 0
    while len(planes) < plane_count:
        normal = _random_nonzero_vec3(rng, bound)
        constant = random_gaussian_rational(rng, bound)
        planes.setdefault(canonical_plane(normal, constant))
        guard += 1
        if guard > 100 * plane_count + 100:
            raise GeneratorError("could not draw distinct planes")
    lines: dict[LineC3, None] = {}
    for plane in planes:
        point, u, v = _plane_frame(plane)
        have = 0
        guard = 0
        while have < per_plane:
            base = v_add(point,
                         v_add(v_scale(random_gaussian_rational(rng, bound), u),
                               v_scale(random_gaussian_rational(rng, bound), v)))
            du = random_gaussian_rational(rng, bound)
            dv = random_gaussian_rational(rng, bound)
            direction = v_add(v_scale(du, u), v_scale(dv, v))
            guard += 1
            if guard > 100 * per_plane + 100:
                raise GeneratorError("could not draw distinct in-plane lines")
            if v_is_zero(direction):
                continue
            line = canonical_line(base, direction)
            if line not in lines:
                lines[line] = None
                have += 1
    have = 0
    guard = 0
    while have < extra:
        line = canonical_line(_random_vec3(rng, bound), _random_nonzero_vec3(rng, bound))
        guard += 1
        if guard > 100 * extra + 100:
            raise GeneratorError("could not draw distinct generic lines")
        if line not in lines:
            lines[line] = None
            have += 1
    return list(lines), list(planes)
