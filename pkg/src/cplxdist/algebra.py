"""Exact scalar, vector, matrix, and multivariate polynomial arithmetic.

Every geometric computation in this package runs over the Gaussian
rationals Q(i): complex numbers whose real and imaginary parts are
rational.  A :class:`GaussianRational` is stored as a single canonical
triple of arbitrary-precision integers ``(re_num + im_num*i) / den`` with
``den > 0`` and ``gcd(re_num, im_num, den) == 1``, which makes equality
and hashing structural and keeps the hot arithmetic paths on plain
integer operations (one gcd per result instead of one per Fraction).

The rational (real) scalar type of the package is ``fractions.Fraction``,
aliased :data:`Rational`.  Rationals serialize as ``"num/den"`` strings
(denominator omitted when 1); Gaussian rationals as ``{"re": ..., "im": ...}``.

Polynomials (:class:`MultiPoly`) are stored as canonically ordered term
sequences over a fixed global monomial order: graded lexicographic,
ascending, i.e. terms sorted by (total degree, exponent tuple).  The order
never varies at runtime, so structural equality of polynomials coincides
with mathematical equality and serialized output is reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as ``"num/den"``, omitting ``/den`` when den == 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


class GaussianRational:
    """An exact complex scalar with rational real and imaginary parts.

    Immutable and hashable.  All field operations are exact; division by
    zero raises ``ZeroDivisionError``.  Instances are canonical: two values
    are mathematically equal iff their stored triples are identical.
    """

    __slots__ = ("ren", "imn", "den")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = _lcm(re.denominator, im.denominator)
        _set_canonical(self, re.numerator * (d // re.denominator),
                       im.numerator * (d // im.denominator), d)

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_integers(re_num: int, im_num: int, den: int = 1) -> "GaussianRational":
        """Build (re_num + im_num*i)/den, normalizing to canonical form."""
        if den == 0:
            raise ZeroDivisionError("denominator is zero")
        z = object.__new__(GaussianRational)
        _set_canonical(z, re_num, im_num, den)
        return z

    # -- views -------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self.ren, self.den)

    @property
    def im(self) -> Fraction:
        return Fraction(self.imn, self.den)

    def is_zero(self) -> bool:
        return self.ren == 0 and self.imn == 0

    def is_real(self) -> bool:
        return self.imn == 0

    def conjugate(self) -> "GaussianRational":
        return _gr(self.ren, -self.imn, self.den)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Total order key (lexicographic on (re, im)); used only for
        deterministic output ordering, not for algebra."""
        return (self.re, self.im)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.den, other.den
        return _gr_norm(self.ren * d2 + other.ren * d1,
                        self.imn * d2 + other.imn * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.den, other.den
        return _gr_norm(self.ren * d2 - other.ren * d1,
                        self.imn * d2 - other.imn * d1, d1 * d2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2 = self.ren, self.imn, other.ren, other.imn
        return _gr_norm(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1,
                        self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a2, b2 = other.ren, other.imn
        n = a2 * a2 + b2 * b2
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        a1, b1 = self.ren, self.imn
        # (a1+b1 i)/d1 * d2*(a2-b2 i)/(a2^2+b2^2)
        return _gr_norm((a1 * a2 + b1 * b2) * other.den,
                        (b1 * a2 - a1 * b2) * other.den, self.den * n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return _gr(-self.ren, -self.imn, self.den)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return (self.ren == other.ren and self.imn == other.imn
                    and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            return self.imn == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.imn == 0:
            return hash(Fraction(self.ren, self.den))
        return hash((self.ren, self.imn, self.den))

    def __bool__(self):
        return self.ren != 0 or self.imn != 0

    def __repr__(self):
        if self.imn == 0:
            return f"gr({rational_to_str(self.re)})"
        return f"gr({rational_to_str(self.re)}, {rational_to_str(self.im)})"


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _set_canonical(z: GaussianRational, ren: int, imn: int, den: int) -> None:
    if den < 0:
        ren, imn, den = -ren, -imn, -den
    g = math.gcd(ren, imn, den)
    if g > 1:
        ren //= g
        imn //= g
        den //= g
    z.ren = ren
    z.imn = imn
    z.den = den


def _gr(ren: int, imn: int, den: int) -> GaussianRational:
    """Trusted constructor: (ren, imn, den) already canonical."""
    z = object.__new__(GaussianRational)
    z.ren = ren
    z.imn = imn
    z.den = den
    return z


def _gr_norm(ren: int, imn: int, den: int) -> GaussianRational:
    z = object.__new__(GaussianRational)
    _set_canonical(z, ren, imn, den)
    return z


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return _gr(x, 0, 1)
    if isinstance(x, Fraction):
        return _gr(x.numerator, 0, x.denominator)
    return NotImplemented


def gr(re=0, im=0) -> GaussianRational:
    """Convenience constructor from ints, Fractions, or "num/den" strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


GR_ZERO = _gr(0, 0, 1)
GR_ONE = _gr(1, 0, 1)
GR_I = _gr(0, 1, 1)
GR_TWO = _gr(2, 0, 1)


# ---------------------------------------------------------------------------
# Matrices over the Gaussian rationals
# ---------------------------------------------------------------------------


class Matrix:
    """Dense matrix of GaussianRational entries, row-major, immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[GaussianRational]):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[GaussianRational]]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: list[GaussianRational] = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return Matrix(r, c, flat)

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _rref(rows: list[list[GaussianRational]]) -> tuple[list[list[GaussianRational]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list).

    Pivot choice is the first row with a nonzero entry in the current
    column, so the result is deterministic for equal inputs.
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != GR_ONE:
            inv = GR_ONE / pv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [ri[j] - f * rr[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def mat_rank(m: Matrix) -> int:
    rows = [list(m.row(i)) for i in range(m.rows)]
    _, pivots = _rref(rows)
    return len(pivots)


def mat_nullspace(m: Matrix) -> list[tuple[GaussianRational, ...]]:
    """Deterministic kernel basis of m.

    Reduced row echelon with first-nonzero pivoting; one basis vector per
    free column, in increasing column order, with a 1 in the free slot.
    Returns an empty list when m has full column rank.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    rows, pivots = _rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [GR_ZERO] * m.cols
        v[fc] = GR_ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def mat_vec(m: Matrix, v: Sequence[GaussianRational]) -> tuple[GaussianRational, ...]:
    if len(v) != m.cols:
        raise ValueError("dimension mismatch")
    out = []
    ent = m.entries
    for i in range(m.rows):
        s = GR_ZERO
        base = i * m.cols
        for j in range(m.cols):
            s = s + ent[base + j] * v[j]
        out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


def _grlex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial with GaussianRational coefficients.

    Terms are a tuple of (exponent tuple, coefficient) pairs with nonzero
    coefficients, sorted in ascending graded-lexicographic order.  The zero
    polynomial has an empty term tuple.  Equality is structural and, by
    canonicality, mathematical.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Iterable[tuple[tuple[int, ...], GaussianRational]] = ()):
        acc: dict[tuple[int, ...], GaussianRational] = {}
        for exps, coeff in terms:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong arity for {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if not isinstance(coeff, GaussianRational):
                coeff = _coerce(coeff)
                if coeff is NotImplemented:
                    raise TypeError("coefficient must be GaussianRational-coercible")
            prev = acc.get(exps)
            coeff = coeff if prev is None else prev + coeff
            if coeff:
                acc[exps] = coeff
            elif prev is not None:
                del acc[exps]
        self.nvars = nvars
        self.terms = tuple(sorted(acc.items(), key=lambda t: _grlex_key(t[0])))

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return _mp(nvars, ())

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        c = _coerce(c)
        if not c:
            return _mp(nvars, ())
        return _mp(nvars, (((0,) * nvars, c),))

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError("variable index out of range")
        e = [0] * nvars
        e[i] = 1
        return _mp(nvars, ((tuple(e), GR_ONE),))

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return sum(self.terms[-1][0])

    def coefficient(self, exps: tuple[int, ...]) -> GaussianRational:
        for e, c in self.terms:
            if e == exps:
                return c
        return GR_ZERO

    # -- ring operations ---------------------------------------------------

    def _binop(self, other, sign: int) -> "MultiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiPoly.constant(self.nvars, other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc = dict(self.terms)
        for e, c in other.terms:
            c = c if sign > 0 else -c
            prev = acc.get(e)
            s = c if prev is None else prev + c
            if s:
                acc[e] = s
            elif prev is not None:
                del acc[e]
        return _mp_sorted(self.nvars, acc)

    def __add__(self, other):
        return self._binop(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return _mp(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            k = _coerce(other)
            if not k:
                return MultiPoly.zero(self.nvars)
            return _mp(self.nvars, tuple((e, c * k) for e, c in self.terms))
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: dict[tuple[int, ...], GaussianRational] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                prev = acc.get(e)
                s = p if prev is None else prev + p
                if s:
                    acc[e] = s
                elif prev is not None:
                    del acc[e]
        return _mp_sorted(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        if not self.terms:
            return "poly(0)"
        bits = []
        for e, c in reversed(self.terms):
            mono = "*".join(f"x{i}^{p}" if p > 1 else f"x{i}"
                            for i, p in enumerate(e) if p)
            bits.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return "poly(" + " + ".join(bits) + ")"

    # -- evaluation and substitution ---------------------------------------

    def eval(self, point: Sequence[GaussianRational]) -> GaussianRational:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        point = [_coerce(x) for x in point]
        # cache powers per variable up to the max exponent used
        maxe = [0] * self.nvars
        for e, _ in self.terms:
            for i, p in enumerate(e):
                if p > maxe[i]:
                    maxe[i] = p
        pows: list[list[GaussianRational]] = []
        for i in range(self.nvars):
            col = [GR_ONE]
            for _ in range(maxe[i]):
                col.append(col[-1] * point[i])
            pows.append(col)
        total = GR_ZERO
        for e, c in self.terms:
            v = c
            for i, p in enumerate(e):
                if p:
                    v = v * pows[i][p]
            total = total + v
        return total

    def subs(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute a polynomial for each variable (ring homomorphism).

        All substituted polynomials must share a variable count, which
        becomes the variable count of the result.
        """
        if len(values) != self.nvars:
            raise ValueError("substitution arity mismatch")
        if not values:
            raise ValueError("cannot substitute into a 0-variable polynomial")
        out_nvars = values[0].nvars
        for v in values:
            if v.nvars != out_nvars:
                raise ValueError("substituted polynomials disagree on variable count")
        maxe = [0] * self.nvars
        for e, _ in self.terms:
            for i, p in enumerate(e):
                if p > maxe[i]:
                    maxe[i] = p
        pows: list[list[MultiPoly]] = []
        one = MultiPoly.constant(out_nvars, 1)
        for i in range(self.nvars):
            col = [one]
            for _ in range(maxe[i]):
                col.append(col[-1] * values[i])
            pows.append(col)
        total = MultiPoly.zero(out_nvars)
        for e, c in self.terms:
            term = MultiPoly.constant(out_nvars, c)
            for i, p in enumerate(e):
                if p:
                    term = term * pows[i][p]
            total = total + term
        return total

    # -- calculus -----------------------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        acc = []
        for e, c in self.terms:
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            acc.append((tuple(ne), c * e[i]))
        return _mp_sorted_pairs(self.nvars, acc)

    def gradient(self) -> tuple["MultiPoly", ...]:
        return tuple(self.partial(i) for i in range(self.nvars))


def _mp(nvars: int, terms: tuple) -> MultiPoly:
    """Trusted constructor: terms already canonical."""
    p = object.__new__(MultiPoly)
    p.nvars = nvars
    p.terms = terms
    return p


def _mp_sorted(nvars: int, acc: dict) -> MultiPoly:
    return _mp(nvars, tuple(sorted(acc.items(), key=lambda t: _grlex_key(t[0]))))


def _mp_sorted_pairs(nvars: int, pairs: list) -> MultiPoly:
    return _mp(nvars, tuple(sorted(pairs, key=lambda t: _grlex_key(t[0]))))


def poly_eval(f: MultiPoly, point: Sequence[GaussianRational]) -> GaussianRational:
    return f.eval(point)


def poly_gradient(f: MultiPoly) -> tuple[MultiPoly, ...]:
    return f.gradient()


def poly_affine_compose(f: MultiPoly, matrix: Sequence[Sequence[GaussianRational]],
                        offset: Sequence[GaussianRational]) -> MultiPoly:
    """Compose f with the affine map v -> offset + matrix @ v.

    ``matrix`` has one row per variable of f; the number of columns is the
    variable count of the result.  Satisfies
    ``poly_eval(result, v) == poly_eval(f, offset + matrix @ v)`` exactly,
    and ``result.degree() <= f.degree()``.
    """
    if len(matrix) != f.nvars or len(offset) != f.nvars:
        raise ValueError("affine map output dimension must equal the variable count of f")
    k = len(matrix[0]) if matrix else 0
    values = []
    for i in range(f.nvars):
        row = matrix[i]
        if len(row) != k:
            raise ValueError("ragged matrix")
        terms = [((0,) * k, _coerce(offset[i]))]
        for j in range(k):
            e = [0] * k
            e[j] = 1
            terms.append((tuple(e), _coerce(row[j])))
        values.append(MultiPoly(k, terms))
    return f.subs(values)
