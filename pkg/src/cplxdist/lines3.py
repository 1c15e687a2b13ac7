"""Exact geometry of complex lines, planes, and quadric surfaces in C^3.

Lines are stored parametrically (base point + direction) in a canonical
form that makes point-set equality structural: the direction's first
nonzero coordinate is scaled to 1, and the base point is slid along the
line so its coordinate at that index is 0.  Planes and quadrics are
stored implicitly by coefficient vectors, canonicalized so their first
nonzero coefficient is 1.  With these conventions, deduplication of
geometric objects is dictionary lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (GR_I, GR_ONE, GR_ZERO, GaussianRational, Matrix,
                      MultiPoly, gr, mat_nullspace, mat_rank)

Vec3 = tuple[GaussianRational, GaussianRational, GaussianRational]


def vec3(a, b, c) -> Vec3:
    return (a if isinstance(a, GaussianRational) else gr(a),
            b if isinstance(b, GaussianRational) else gr(b),
            c if isinstance(c, GaussianRational) else gr(c))


def v_sub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def v_add(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def v_scale(k: GaussianRational, v: Vec3) -> Vec3:
    return (k * v[0], k * v[1], k * v[2])


def v_dot(u: Vec3, v: Vec3) -> GaussianRational:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def v_cross(u: Vec3, v: Vec3) -> Vec3:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def v_is_zero(v: Vec3) -> bool:
    return not (v[0] or v[1] or v[2])


def v_sort_key(v: Vec3):
    return v[0].sort_key() + v[1].sort_key() + v[2].sort_key()


def det3(r0: Vec3, r1: Vec3, r2: Vec3) -> GaussianRational:
    return (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
            - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
            + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))


@dataclass(frozen=True)
class LineC3:
    """A complex line in canonical parametric form.

    Invariants: ``direction`` has 1 at its first nonzero index k, and
    ``base[k] == 0``.  Two LineC3 values are equal as point sets iff they
    are structurally equal.  Build via :func:`canonical_line` or
    :meth:`through`.
    """

    base: Vec3
    direction: Vec3

    def __post_init__(self):
        d = self.direction
        k = next((i for i in range(3) if d[i]), None)
        if k is None:
            raise ValueError("zero direction")
        if d[k] != GR_ONE or self.base[k]:
            raise ValueError("line not in canonical form; use canonical_line()")

    @staticmethod
    def through(p: Vec3, q: Vec3) -> "LineC3":
        d = v_sub(q, p)
        if v_is_zero(d):
            raise ValueError("coincident points do not determine a line")
        return canonical_line(p, d)

    def point_at(self, t: GaussianRational) -> Vec3:
        return v_add(self.base, v_scale(t, self.direction))

    def contains_point(self, p: Vec3) -> bool:
        w = v_sub(p, self.base)
        return v_is_zero(v_cross(w, self.direction))

    def is_standard(self) -> bool:
        """Standard = not parallel to the complex z2z3 plane (dir[0] != 0)."""
        return bool(self.direction[0])

    def sort_key(self):
        return v_sort_key(self.base) + v_sort_key(self.direction)


def canonical_line(base: Vec3, direction: Vec3) -> LineC3:
    """Canonicalize (base, direction); idempotent on canonical inputs."""
    k = next((i for i in range(3) if direction[i]), None)
    if k is None:
        raise ValueError("zero direction")
    d = v_scale(GR_ONE / direction[k], direction)
    b = v_sub(base, v_scale(base[k], d))
    # exact arithmetic: d[k] == 1 and b[k] == 0 hold by construction
    return LineC3(b, d)


@dataclass(frozen=True)
class PlaneC3:
    """Plane {a*x + b*y + c*z = d} with (a,b,c) != 0, canonicalized so the
    first nonzero coefficient of the normal is 1."""

    normal: Vec3
    constant: GaussianRational

    def __post_init__(self):
        k = next((i for i in range(3) if self.normal[i]), None)
        if k is None:
            raise ValueError("zero normal")
        if self.normal[k] != GR_ONE:
            raise ValueError("plane not canonical; use canonical_plane()")

    def contains_point(self, p: Vec3) -> bool:
        return v_dot(self.normal, p) == self.constant

    def contains_line(self, line: LineC3) -> bool:
        return (not v_dot(self.normal, line.direction)
                and self.contains_point(line.base))

    def sort_key(self):
        return v_sort_key(self.normal) + self.constant.sort_key()


def canonical_plane(normal: Vec3, constant: GaussianRational) -> PlaneC3:
    k = next((i for i in range(3) if normal[i]), None)
    if k is None:
        raise ValueError("zero normal")
    inv = GR_ONE / normal[k]
    return PlaneC3(v_scale(inv, normal), inv * constant)


def plane_through(point: Vec3, u: Vec3, v: Vec3) -> PlaneC3:
    n = v_cross(u, v)
    if v_is_zero(n):
        raise ValueError("spanning vectors are parallel")
    return canonical_plane(n, v_dot(n, point))


@dataclass(frozen=True)
class BadPlane:
    """A plane of the family {y = (sign*i)*x + k}: the planes into which
    isotropic point pairs collapse under the pair-to-line transform.

    ``sign`` is +1 or -1 and refers to the slope of the matching isotropic
    line in C^2, i.e. the plane is exactly {y = sign*i*x + k}.
    """

    sign: int
    k: GaussianRational


def is_bad_plane(plane: PlaneC3) -> BadPlane | None:
    """Return the (sign, k) of a bad plane, or None.

    A plane a*x + b*y + c*z = d is bad iff c == 0 and a/b == -(sign)*i,
    equivalently the plane rewrites as y = sign*i*x + k with k = d/b.
    """
    a, b, c = plane.normal
    if c or not b or not a:
        return None
    slope = -(a / b)
    if slope == GR_I:
        return BadPlane(+1, plane.constant / b)
    if slope == -GR_I:
        return BadPlane(-1, plane.constant / b)
    return None


def bad_plane(sign: int, k: GaussianRational) -> PlaneC3:
    """The plane {y = sign*i*x + k}."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    s = GR_I if sign > 0 else -GR_I
    return canonical_plane((-s, GR_ONE, GR_ZERO), k)


# ---------------------------------------------------------------------------
# Pair classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class Intersecting:
    point: Vec3
    plane: PlaneC3


@dataclass(frozen=True)
class Parallel:
    plane: PlaneC3


@dataclass(frozen=True)
class Skew:
    pass


LineRelation = Equal | Intersecting | Parallel | Skew


def is_coplanar_relation(rel: LineRelation) -> bool:
    return not isinstance(rel, Skew)


def line_pair_relation(l1: LineC3, l2: LineC3) -> LineRelation:
    """Classify a pair of canonical lines exactly.

    Coincident lines are Equal (never Parallel); distinct lines with
    proportional directions are Parallel with their unique common plane;
    otherwise the pair is Intersecting (with the meeting point and spanned
    plane) or Skew according to the coplanarity determinant
    det(d1, d2, base2 - base1).
    """
    d1, d2 = l1.direction, l2.direction
    w = v_sub(l2.base, l1.base)
    n = v_cross(d1, d2)
    if v_is_zero(n):
        if l1 == l2:
            return Equal()
        return Parallel(plane_through(l1.base, d1, w))
    if det3(d1, d2, w):
        return Skew()
    # solve l1.base + s*d1 = l2.base + t*d2 via a nonsingular 2x2 subsystem
    for (r0, r1) in ((0, 1), (0, 2), (1, 2)):
        a00, a01 = d1[r0], -d2[r0]
        a10, a11 = d1[r1], -d2[r1]
        det = a00 * a11 - a01 * a10
        if det:
            s = (w[r0] * a11 - a01 * w[r1]) / det
            point = l1.point_at(s)
            return Intersecting(point, plane_through(point, d1, d2))
    raise AssertionError("unreachable: independent directions admit a nonsingular 2x2 block")


# ---------------------------------------------------------------------------
# Quadrics
# ---------------------------------------------------------------------------

# global graded-lex (ascending) order on monomials of degree <= 2 in (x, y, z)
QUADRIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (0, 0, 1), (0, 1, 0), (1, 0, 0),
    (0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0),
)


@dataclass(frozen=True)
class QuadricC3:
    """Degree <= 2 surface by its 10 coefficients in the global monomial
    order, canonicalized so the first nonzero coefficient is 1."""

    coeffs: tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError("a quadric has 10 coefficients")
        k = next((i for i, c in enumerate(self.coeffs) if c), None)
        if k is None:
            raise ValueError("zero quadric")
        if self.coeffs[k] != GR_ONE:
            raise ValueError("quadric not canonical; use canonical_quadric()")

    def to_poly(self) -> MultiPoly:
        return MultiPoly(3, zip(QUADRIC_MONOMIALS, self.coeffs))

    def evaluate(self, p: Vec3) -> GaussianRational:
        x, y, z = p
        total = GR_ZERO
        for (ex, ey, ez), c in zip(QUADRIC_MONOMIALS, self.coeffs):
            if not c:
                continue
            v = c
            if ex:
                v = v * (x if ex == 1 else x * x)
            if ey:
                v = v * (y if ey == 1 else y * y)
            if ez:
                v = v * (z if ez == 1 else z * z)
            total = total + v
        return total

    def contains_point(self, p: Vec3) -> bool:
        return not self.evaluate(p)

    def is_irreducible(self) -> bool:
        """Exact irreducibility over C via the rank of the symmetric 4x4
        matrix of the homogenization: rank <= 2 iff the quadric is a
        product of two linear forms."""
        return _quadric_matrix_rank(self.coeffs) >= 3

    def sort_key(self):
        out = ()
        for c in self.coeffs:
            out = out + c.sort_key()
        return out


def canonical_quadric(coeffs: Sequence[GaussianRational]) -> QuadricC3:
    coeffs = tuple(coeffs)
    if len(coeffs) != 10:
        raise ValueError("a quadric has 10 coefficients")
    k = next((i for i, c in enumerate(coeffs) if c), None)
    if k is None:
        raise ValueError("zero quadric")
    inv = GR_ONE / coeffs[k]
    return QuadricC3(tuple(inv * c for c in coeffs))


def quadric_from_poly(f: MultiPoly) -> QuadricC3:
    if f.nvars != 3 or f.degree() > 2:
        raise ValueError("expected a polynomial of degree <= 2 in 3 variables")
    lookup = dict(f.terms)
    return canonical_quadric(tuple(lookup.get(e, GR_ZERO) for e in QUADRIC_MONOMIALS))


_TWO = GaussianRational(2)


def _quadric_matrix_rank(coeffs: Sequence[GaussianRational]) -> int:
    """Rank of the symmetric matrix M with q(x,y,z,1) = v^T M v (v=(x,y,z,1)).

    Entries are doubled (2*diagonal, off-diagonal = mixed coefficient) to
    stay in the Gaussian rationals without introducing halves; doubling
    does not change the rank.
    """
    c = dict(zip(QUADRIC_MONOMIALS, coeffs))

    def g(e):
        return c.get(e, GR_ZERO)

    x2, y2, z2 = g((2, 0, 0)), g((0, 2, 0)), g((0, 0, 2))
    xy, xz, yz = g((1, 1, 0)), g((1, 0, 1)), g((0, 1, 1))
    x1, y1, z1 = g((1, 0, 0)), g((0, 1, 0)), g((0, 0, 1))
    k = g((0, 0, 0))
    rows = [
        [_TWO * x2, xy, xz, x1],
        [xy, _TWO * y2, yz, y1],
        [xz, yz, _TWO * z2, z1],
        [x1, y1, z1, _TWO * k],
    ]
    return mat_rank(Matrix.from_rows([r for r in rows]))


def line_restriction_coeffs(line: LineC3) -> list[tuple[GaussianRational, ...]]:
    """For each quadric monomial m, the univariate coefficients (t^0,t^1,t^2)
    of m(base + t*direction).  Each line imposes these 3 linear conditions
    on the 10 quadric coefficients."""
    b, d = line.base, line.direction
    # restriction of each coordinate: (b_i + t d_i)
    lin = [(b[i], d[i]) for i in range(3)]

    def mono_restriction(e):
        out = (GR_ONE,)
        for i, p in enumerate(e):
            for _ in range(p):
                c0, c1 = lin[i]
                new = [GR_ZERO] * (len(out) + 1)
                for k, ck in enumerate(out):
                    new[k] = new[k] + ck * c0
                    new[k + 1] = new[k + 1] + ck * c1
                out = tuple(new)
        return out + (GR_ZERO,) * (3 - len(out))

    return [mono_restriction(e) for e in QUADRIC_MONOMIALS]


def line_in_quadric(line: LineC3, q: QuadricC3) -> bool:
    """True iff the degree <= 2 restriction of q to the line vanishes
    identically (all three univariate coefficients are zero)."""
    cols = line_restriction_coeffs(line)
    for k in range(3):
        s = GR_ZERO
        for c, col in zip(q.coeffs, cols):
            if c:
                s = s + c * col[k]
        if s:
            return False
    return True


def line_in_plane(line: LineC3, plane: PlaneC3) -> bool:
    return plane.contains_line(line)


def fit_quadrics(lines: Sequence[LineC3]) -> list[QuadricC3]:
    """Basis of the space of quadrics vanishing on every input line.

    Each line contributes 3 linear conditions on the 10 coefficients; with
    at most 3 lines the system has at most 9 conditions, so the basis is
    nonempty.  Basis vectors are canonicalized individually and come from
    the deterministic nullspace of the stacked system.
    """
    if len(lines) > 3:
        raise ValueError("fit_quadrics accepts at most 3 lines")
    rows: list[list[GaussianRational]] = []
    for line in lines:
        cols = line_restriction_coeffs(line)
        for k in range(3):
            rows.append([col[k] for col in cols])
    if not rows:
        basis = [tuple(GR_ONE if j == i else GR_ZERO for j in range(10))
                 for i in range(10)]
    else:
        basis = mat_nullspace(Matrix.from_rows(rows))
    return [canonical_quadric(v) for v in basis]
