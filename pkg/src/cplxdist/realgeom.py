"""The C^3 <-> R^6 identification and the real-side line machinery.

The identification order is fixed globally as
(Re z1, Im z1, Re z2, Im z2, Re z3, Im z3); the operator J realizing
multiplication by i in these coordinates is
J(x1,y1,x2,y2,x3,y3) = (-y1, x1, -y2, x2, -y3, x3).

A complex line is *standard* when it is not parallel to the complex z2z3
plane; every standard line has a unique normal form (0,a,b) + t(1,c,d)
with complex a,b,c,d, and the chart G sends it to the 8 real numbers
(Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d).  The point of the line
at parameter s + it has real coordinates

  phi(G(L), s, t) = (s, t, a1 + s c1 - t c2, a2 + s c2 + t c1,
                           b1 + s d1 - t d2, b2 + s d2 + t d1),

obtained by expanding (s+it)(c1+ic2) and (s+it)(d1+id2); note the t c1
term in the fourth coordinate and the sign pattern, both forced by the
expansion.  Non-standard lines are a hard error in this module (they are
handled fully by the parametric line type itself).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (GR_ONE, GR_ZERO, GaussianRational, Matrix, MultiPoly,
                      mat_nullspace, poly_affine_compose)
from .lines3 import LineC3, Vec3

RealVec6 = tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]
RealVec8 = tuple[Fraction, ...]


class NonStandardLineError(ValueError):
    """The line is parallel to the complex z2z3 plane and has no G chart."""


class SingularPointError(ValueError):
    """The gradient vanishes at the point; tangent data is undefined."""


def real6(*xs) -> RealVec6:
    if len(xs) != 6:
        raise ValueError("expected 6 coordinates")
    return tuple(Fraction(x) for x in xs)


def apply_j(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Multiplication by i under the fixed identification."""
    if len(v) % 2:
        raise ValueError("J acts on even-dimensional vectors")
    out = []
    for k in range(0, len(v), 2):
        out.append(-v[k + 1])
        out.append(v[k])
    return tuple(out)


def c3_to_real(p: Vec3) -> RealVec6:
    return (p[0].re, p[0].im, p[1].re, p[1].im, p[2].re, p[2].im)


def real_to_c3(v: Sequence[Fraction]) -> Vec3:
    return (GaussianRational(v[0], v[1]), GaussianRational(v[2], v[3]),
            GaussianRational(v[4], v[5]))


@dataclass(frozen=True)
class StandardLineCoords:
    """The 8 real coordinates of a standard line: re/im of (a, b, c, d) in
    the normal form (0,a,b) + t(1,c,d)."""

    a1: Fraction
    a2: Fraction
    b1: Fraction
    b2: Fraction
    c1: Fraction
    c2: Fraction
    d1: Fraction
    d2: Fraction

    def as_tuple(self) -> RealVec8:
        return (self.a1, self.a2, self.b1, self.b2,
                self.c1, self.c2, self.d1, self.d2)


def g_coords(line: LineC3) -> StandardLineCoords:
    """Chart a standard line; exact inverse of :func:`g_inverse`."""
    if not line.direction[0]:
        raise NonStandardLineError("line is parallel to the complex z2z3 plane")
    # canonical form of a standard line is exactly (0,a,b) + t(1,c,d)
    a, b = line.base[1], line.base[2]
    c, d = line.direction[1], line.direction[2]
    return StandardLineCoords(a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im)


def g_inverse(coords: StandardLineCoords) -> LineC3:
    base = (GR_ZERO, GaussianRational(coords.a1, coords.a2),
            GaussianRational(coords.b1, coords.b2))
    direction = (GR_ONE, GaussianRational(coords.c1, coords.c2),
                 GaussianRational(coords.d1, coords.d2))
    return LineC3(base, direction)


def phi(coords: StandardLineCoords, s, t) -> RealVec6:
    """Real coordinates of the line point at parameter s + it."""
    s = Fraction(s)
    t = Fraction(t)
    return (s, t,
            coords.a1 + s * coords.c1 - t * coords.c2,
            coords.a2 + s * coords.c2 + t * coords.c1,
            coords.b1 + s * coords.d1 - t * coords.d2,
            coords.b2 + s * coords.d2 + t * coords.d1)


# substitution polynomials of phi in the 10 variables
# (a1, a2, b1, b2, c1, c2, d1, d2, s, t)
def _phi_polys() -> tuple[MultiPoly, ...]:
    def var(i):
        return MultiPoly.variable(10, i)

    a1, a2, b1, b2, c1, c2, d1, d2, s, t = (var(i) for i in range(10))
    return (s, t,
            a1 + s * c1 - t * c2,
            a2 + s * c2 + t * c1,
            b1 + s * d1 - t * d2,
            b2 + s * d2 + t * d1)


_PHI_POLYS = _phi_polys()


def require_real_poly(f: MultiPoly) -> None:
    if any(not c.is_real() for _, c in f.terms):
        raise ValueError("polynomial must have real (rational) coefficients")


def line_membership_conditions(f: MultiPoly) -> list[tuple[int, int, MultiPoly]]:
    """The polynomials Q_{u,v} in the 8 chart variables such that a
    standard line L lies in Z(f) iff every Q_{u,v}(G(L)) == 0.

    Q_{u,v} is the coefficient of s^u t^v in f composed with phi; each has
    degree <= deg f.  Returned sorted by (u, v).
    """
    if f.nvars != 6:
        raise ValueError("f must be a polynomial in 6 real variables")
    require_real_poly(f)
    composed = f.subs(_PHI_POLYS)
    buckets: dict[tuple[int, int], list] = {}
    for e, c in composed.terms:
        u, v = e[8], e[9]
        buckets.setdefault((u, v), []).append((e[:8], c))
    out = []
    for (u, v), terms in sorted(buckets.items()):
        out.append((u, v, MultiPoly(8, terms)))
    return out


def eval_real_poly(f: MultiPoly, p: Sequence[Fraction]) -> Fraction:
    val = f.eval([GaussianRational(x) for x in p])
    if not val.is_real():
        raise AssertionError("real polynomial evaluated to a non-real value")
    return val.re


def _gradient_at(f: MultiPoly, p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(eval_real_poly(g, p) for g in f.gradient())


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class TangentFrame:
    """Exact tangent data of a real hypersurface at a regular point.

    ``v_basis`` spans the complex tangent space V_p = {v : v.grad = 0 and
    v.J(grad) = 0} (dimension 4 whenever the gradient is nonzero);
    ``e_vectors[j]`` is the scaled projection of the j-th unit vector onto
    V_p, orthogonal to both the gradient and its J image.
    """

    gradient: tuple[Fraction, ...]
    j_gradient: tuple[Fraction, ...]
    v_basis: tuple[tuple[Fraction, ...], ...]
    e_vectors: tuple[tuple[Fraction, ...], ...]


def complex_tangent_frame(f: MultiPoly, p: Sequence[Fraction]) -> TangentFrame:
    if f.nvars != 6:
        raise ValueError("f must be a polynomial in 6 real variables")
    require_real_poly(f)
    grad = _gradient_at(f, p)
    if not any(grad):
        raise SingularPointError("gradient vanishes at the point")
    jgrad = apply_j(grad)
    rows = [[GaussianRational(x) for x in grad],
            [GaussianRational(x) for x in jgrad]]
    basis = mat_nullspace(Matrix.from_rows(rows))
    v_basis = tuple(tuple(x.re for x in vec) for vec in basis)
    norm2 = _dot(grad, grad)
    e_vectors = []
    for j in range(6):
        gj = grad[j]
        jj = jgrad[j]
        vec = tuple((norm2 if i == j else Fraction(0)) - gj * grad[i] - jj * jgrad[i]
                    for i in range(6))
        e_vectors.append(vec)
    return TangentFrame(grad, jgrad, v_basis, tuple(e_vectors))


def ruled_at_point(f: MultiPoly, p: Sequence[Fraction]) -> bool:
    """True iff the complex plane p + V_p lies inside Z(f).

    Computed symbolically: with E the tuple of scaled unit-vector
    projections onto V_p, the polynomial W_p(v) = f(p + sum v_j E_j) is
    identically zero iff the plane is contained in the hypersurface.
    Requires f(p) == 0 and a nonzero gradient.
    """
    if eval_real_poly(f, p):
        raise ValueError("point does not lie on Z(f)")
    frame = complex_tangent_frame(f, p)  # raises SingularPointError if singular
    matrix = [[GaussianRational(frame.e_vectors[j][i]) for j in range(6)]
              for i in range(6)]
    offset = [GaussianRational(x) for x in p]
    w = poly_affine_compose(f, matrix, offset)
    return w.is_zero()


def standard_lines_through(p: Vec3, q: Vec3) -> list[LineC3]:
    """The standard lines through two distinct points: at most one, with
    equality iff the line pq is itself standard."""
    if p == q:
        raise ValueError("points must be distinct")
    line = LineC3.through(p, q)
    return [line] if line.is_standard() else []
