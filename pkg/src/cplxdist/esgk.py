"""The pair-to-line transform from C^2 into lines of C^3, and the exact
constructions attached to it.

An ordered pair (a, c) of plane points maps to the line

    2x = (a_x + c_x) + (a_y - c_y) z
    2y = (a_y + c_y) + (c_x - a_x) z

parametrized by z (for a == c this is the vertical line x = a_x, y = a_y).
The transform turns equal squared complex distances into coplanar line
pairs: delta(a,b) == delta(c,d) iff line(a,c) and line(b,d) are coplanar.
Pairs of points on one isotropic line collapse into the "bad" planes
{y = (+-i)x + k}; for fixed a and c running over one isotropic line the
lines form a pencil through a single special point on {z = -+i} and lie
on a single quadric.

The printed direction field for these pencils in the source derivation
does not match the field obtained by solving the defining equations for c
(and is not linear); this module uses the solved form throughout, which
is verified against the line parametrization itself in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (GR_I, GR_ONE, GR_TWO, GR_ZERO, GaussianRational,
                      MultiPoly)
from .cplane import PointC2, check_distinct, delta
from .lines3 import (Equal, LineC3, Parallel, QuadricC3, Skew, Vec3,
                     canonical_line, canonical_quadric, is_bad_plane,
                     line_pair_relation)


def esgk_line(a: PointC2, c: PointC2) -> LineC3:
    """The canonical line of the ordered pair (a, c)."""
    base = ((a.x + c.x) / GR_TWO, (a.y + c.y) / GR_TWO, GR_ZERO)
    direction = ((a.y - c.y) / GR_TWO, (c.x - a.x) / GR_TWO, GR_ONE)
    return canonical_line(base, direction)


def esgk_line_endpoints(line: LineC3) -> tuple[PointC2, PointC2]:
    """Invert the transform: recover (a, c) from any line with nonzero
    z-direction.  Raises ValueError for lines no pair produces."""
    if not line.direction[2]:
        raise ValueError("line is not in the image of the pair transform")
    d = line.direction
    scale = GR_ONE / d[2]
    dx, dy = scale * d[0], scale * d[1]
    # base point at z = 0
    t = -line.base[2] * scale
    mx = line.base[0] + t * d[0]
    my = line.base[1] + t * d[1]
    a = PointC2(mx - dy, my + dx)
    c = PointC2(mx + dy, my - dx)
    return a, c


@dataclass(frozen=True)
class EsgkFamily:
    """All |P|^2 lines of the ordered pairs of a point set, with the
    inverse map line -> (a, c)."""

    points: tuple[PointC2, ...]
    lines: tuple[LineC3, ...]            # indexed by (i * n + j) for pair (P[i], P[j])
    pair_by_line: dict[LineC3, tuple[PointC2, PointC2]]

    @property
    def n(self) -> int:
        return len(self.points)

    def pair_of(self, line: LineC3) -> tuple[PointC2, PointC2]:
        return self.pair_by_line[line]


def esgk_family(points: Sequence[PointC2]) -> EsgkFamily:
    check_distinct(points)
    pts = tuple(points)
    lines = []
    inverse: dict[LineC3, tuple[PointC2, PointC2]] = {}
    for a in pts:
        for c in pts:
            line = esgk_line(a, c)
            lines.append(line)
            inverse[line] = (a, c)
    if len(inverse) != len(lines):
        raise AssertionError("pair-to-line map must be injective")
    return EsgkFamily(pts, tuple(lines), inverse)


def parallel_pair_count(family: EsgkFamily) -> int:
    """Ordered pairs of distinct parallel lines, via the difference-vector
    histogram: line(a,c) is parallel to a distinct line(b,d) iff
    a - c == b - d, so the count is sum m*(m-1) over difference classes."""
    hist: dict[tuple, int] = {}
    for a in family.points:
        for c in family.points:
            key = (a.x - c.x, a.y - c.y)
            hist[key] = hist.get(key, 0) + 1
    return sum(m * (m - 1) for m in hist.values())


def parallel_pairs_bruteforce(family: EsgkFamily) -> int:
    """Independent oracle: classify every unordered line pair."""
    lines = family.lines
    n = len(lines)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if isinstance(line_pair_relation(lines[i], lines[j]), Parallel):
                count += 2
    return count


@dataclass(frozen=True)
class PairClassCounts:
    """Coplanarity census of the ordered pairs of distinct lines."""

    parallel: int
    bad_plane: int            # pairs whose unique common plane is bad
    coplanar_non_bad: int     # pairs whose unique common plane is not bad
    intersecting: int
    skew: int


def classify_pairs(lines: Sequence[LineC3]) -> PairClassCounts:
    n = len(lines)
    parallel = bad = good = inter = skew = 0
    for i in range(n):
        for j in range(i + 1, n):
            rel = line_pair_relation(lines[i], lines[j])
            if isinstance(rel, Equal):
                raise ValueError("pair classification requires distinct lines")
            if isinstance(rel, Skew):
                skew += 2
                continue
            if isinstance(rel, Parallel):
                parallel += 2
            else:
                inter += 2
            if is_bad_plane(rel.plane) is not None:
                bad += 2
            else:
                good += 2
    return PairClassCounts(parallel, bad, good, inter, skew)


def special_point(a: PointC2, sign: int, k: GaussianRational) -> Vec3:
    """The common point of all lines line(a, c) with c on the isotropic
    line {y = sign*i*x + k}.

    Solved from the line equations at z = -sign*i:
      sign +:  ((a_x - i a_y + i k)/2, (i a_x + a_y + k)/2, -i)
      sign -:  ((a_x + i a_y - i k)/2, (-i a_x + a_y + k)/2, +i)
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    s = GR_I if sign > 0 else -GR_I
    x = (a.x - s * a.y + s * k) / GR_TWO
    y = (s * a.x + a.y + k) / GR_TWO
    return (x, y, -s)


def pencil_quadric(a: PointC2, sign: int, k: GaussianRational) -> QuadricC3:
    """The quadric containing every line(a, c) with c on {y = sign*i*x + k}.

    Derived by eliminating c from the line equations; for sign + the
    polynomial is

      (k - a_y + i a_x) z^2 + 2 (x + i y - a_x - i a_y) z
        + (2 i x - 2 y - i a_x + a_y + k),

    and the sign - case is its image under i -> -i.  The z^2 coefficient
    vanishes iff a itself lies on the isotropic line.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    s = GR_I if sign > 0 else -GR_I
    two = GR_TWO
    z2 = k - a.y + s * a.x
    # coefficient order: 1, z, y, x, z^2, yz, y^2, xz, xy, x^2
    coeffs = (
        -s * a.x + a.y + k,        # 1
        -two * (a.x + s * a.y),    # z
        -two,                      # y
        two * s,                   # x
        z2,                        # z^2
        two * s,                   # yz
        GR_ZERO,                   # y^2
        two,                       # xz
        GR_ZERO,                   # xy
        GR_ZERO,                   # x^2
    )
    return canonical_quadric(coeffs)


def direction_field(a: PointC2, p: Vec3) -> Vec3:
    """Direction of the unique line(a, c) through p, up to scale.

    Solving the line equations for c and clearing the 1 + z^2 denominator
    gives (a_y - p_y + p_z (p_x - a_x), p_x - a_x + p_z (p_y - a_y),
    1 + p_z^2).  Undefined on the planes z = +-i, where no unique c exists.
    """
    pz = p[2]
    w = GR_ONE + pz * pz
    if not w:
        raise ValueError("direction field undefined on z = +-i")
    return (a.y - p[1] + pz * (p[0] - a.x),
            p[0] - a.x + pz * (p[1] - a.y),
            w)


_DF_X = MultiPoly.variable(3, 0)
_DF_Y = MultiPoly.variable(3, 1)
_DF_Z = MultiPoly.variable(3, 2)


def direction_field_polys(a: PointC2) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """The three components of the cleared-denominator direction field as
    polynomials in (x, y, z); quadratic in the point."""
    ax = MultiPoly.constant(3, a.x)
    ay = MultiPoly.constant(3, a.y)
    one = MultiPoly.constant(3, 1)
    return (ay - _DF_Y + _DF_Z * (_DF_X - ax),
            _DF_X - ax + _DF_Z * (_DF_Y - ay),
            one + _DF_Z * _DF_Z)


def tangency_poly(a: PointC2, q: QuadricC3) -> MultiPoly:
    """g_a = (direction field of a) . (gradient of q), a polynomial of
    degree <= 3 vanishing identically on every line(a, c) contained in
    Z(q) (tangency along the line forces vanishing on all of it)."""
    v = direction_field_polys(a)
    grad = q.to_poly().gradient()
    out = MultiPoly.zero(3)
    for vi, gi in zip(v, grad):
        out = out + vi * gi
    return out
