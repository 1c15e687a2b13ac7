"""Point sets in C^2: the squared complex distance, its statistics, and
the difference-based growth sets.

The squared complex distance ``delta(p, q) = (p.x-q.x)^2 + (p.y-q.y)^2``
can vanish for distinct points: exactly when p and q share a line of
slope +i or -i (an isotropic line).  Distance statistics therefore track
the zero pairs separately from the histogram of nonzero distances, and
the quadruple count (ordered quadruples (a,b,c,d) with
``delta(a,b) == delta(c,d) != 0`` and ``(a,b) != (c,d)``) is derived from
the ordered-pair histogram as ``sum N*(N-1)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import GR_I, GR_ZERO, GaussianRational, _gr, gr


class CapExceededError(ValueError):
    """An honest O(n^3)/O(n^4) enumeration was asked to exceed its cap."""


class DuplicatePointsError(ValueError):
    """Input point sequence contains a repeated point."""


@dataclass(frozen=True)
class PointC2:
    x: GaussianRational
    y: GaussianRational

    def __sub__(self, other: "PointC2") -> "PointC2":
        return PointC2(self.x - other.x, self.y - other.y)

    def __add__(self, other: "PointC2") -> "PointC2":
        return PointC2(self.x + other.x, self.y + other.y)

    def sort_key(self):
        return self.x.sort_key() + self.y.sort_key()


def point2(x, y) -> PointC2:
    return PointC2(gr(x) if not isinstance(x, GaussianRational) else x,
                   gr(y) if not isinstance(y, GaussianRational) else y)


def delta(p: PointC2, q: PointC2) -> GaussianRational:
    """Squared complex distance; symmetric and translation invariant."""
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def check_distinct(points: Sequence[PointC2]) -> None:
    if len(set(points)) != len(points):
        raise DuplicatePointsError("points must be pairwise distinct")


@dataclass(frozen=True)
class DistanceStatistics:
    """Exact distance statistics of a point set.

    ``histogram`` maps each nonzero distance value to the number of
    *ordered* pairs attaining it; ``zero_pairs`` counts ordered pairs of
    distinct points at distance 0.  Identities (checked in tests):
    ``sum(histogram.values()) + zero_pairs == n*(n-1)`` and
    ``quadruple_count == sum(N*(N-1) for N in histogram.values())``.
    """

    point_count: int
    distinct_distances: frozenset[GaussianRational]
    histogram: dict[GaussianRational, int]
    quadruple_count: int
    zero_pairs: int

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_distances)


def _scaled_integer_coords(points: Sequence[PointC2]) -> tuple[list[tuple[int, int, int, int]], int]:
    """Rescale all coordinates by the lcm of their denominators.

    Returns Gaussian-integer coordinates (xr, xi, yr, yi) per point plus
    the scale s; squared distances of the scaled set are s^2 times the
    true ones, so exact values are recovered by a single division.
    """
    s = 1
    for p in points:
        s = s // math.gcd(s, p.x.den) * p.x.den
        s = s // math.gcd(s, p.y.den) * p.y.den
    coords = []
    for p in points:
        fx = s // p.x.den
        fy = s // p.y.den
        coords.append((p.x.ren * fx, p.x.imn * fx, p.y.ren * fy, p.y.imn * fy))
    return coords, s


def _pair_histogram_shard(coords, idxs) -> dict[tuple[int, int], int]:
    hist: dict[tuple[int, int], int] = {}
    n = len(coords)
    for i in idxs:
        xr, xi, yr, yi = coords[i]
        for j in range(i + 1, n):
            qxr, qxi, qyr, qyi = coords[j]
            ar = xr - qxr
            ai = xi - qxi
            br = yr - qyr
            bi = yi - qyi
            key = (ar * ar - ai * ai + br * br - bi * bi,
                   2 * (ar * ai + br * bi))
            hist[key] = hist.get(key, 0) + 2  # both orders
    return hist


def distance_statistics(points: Sequence[PointC2], threads: int = 1) -> DistanceStatistics:
    """Exact Delta-set, ordered-pair histogram, and quadruple count, O(n^2).

    The pair loop runs on rescaled Gaussian-integer coordinates (exact;
    arbitrary-precision ints) and may be sharded over threads; the merged
    histogram is identical to the sequential one.
    """
    check_distinct(points)
    n = len(points)
    coords, s = _scaled_integer_coords(points)
    if threads <= 1 or n < 64:
        raw = _pair_histogram_shard(coords, range(n))
    else:
        shards = [range(t, n, threads) for t in range(threads)]
        raw = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda ix: _pair_histogram_shard(coords, ix), shards):
                for k, v in part.items():
                    raw[k] = raw.get(k, 0) + v
    s2 = s * s
    zero_pairs = raw.pop((0, 0), 0)
    hist: dict[GaussianRational, int] = {}
    for (dr, di), cnt in raw.items():
        g = math.gcd(dr, di, s2)
        hist[_gr(dr // g, di // g, s2 // g)] = cnt
    distinct = set(hist)
    if zero_pairs:
        distinct.add(GR_ZERO)
    quadruple_count = sum(c * (c - 1) for c in hist.values())
    return DistanceStatistics(
        point_count=n,
        distinct_distances=frozenset(distinct),
        histogram=hist,
        quadruple_count=quadruple_count,
        zero_pairs=zero_pairs,
    )


def quadruples_bruteforce(points: Sequence[PointC2], cap: int = 50) -> int:
    """Count Q(P) by direct enumeration of ordered quadruples.

    Independent oracle for ``DistanceStatistics.quadruple_count``: walks
    all n^4 ordered quadruples (a,b,c,d), counting those with
    delta(a,b) == delta(c,d) != 0 and (a,b) != (c,d).
    """
    check_distinct(points)
    n = len(points)
    if n > cap:
        raise CapExceededError(f"|P| = {n} exceeds quadruple cap {cap}")
    # interning distances as small ints keeps the n^4 loop on fast comparisons
    ids: dict[GaussianRational, int] = {}
    dmat = []
    for a in points:
        row = []
        for b in points:
            d = delta(a, b)
            key = ids.setdefault(d, len(ids))
            row.append(key if d else -1)  # -1 flags distance zero
        dmat.append(row)
    count = 0
    for i in range(n):
        di = dmat[i]
        for j in range(n):
            dij = di[j]
            if dij < 0:
                continue
            for k in range(n):
                dk = dmat[k]
                for l in range(n):
                    if dk[l] == dij and not (k == i and l == j):
                        count += 1
    return count


@dataclass(frozen=True)
class IsotropicClassification:
    """Partition of a point set by isotropic lines of each slope.

    A point p lies on the slope +i line with key k iff p.y - i*p.x == k,
    and on the slope -i line with key k iff p.y + i*p.x == k.  Covers are
    the largest class sizes (1 for a nonempty set with no collinearity).
    """

    plus_classes: dict[GaussianRational, tuple[PointC2, ...]]
    minus_classes: dict[GaussianRational, tuple[PointC2, ...]]
    plus_cover: int
    minus_cover: int

    def has_origin_keys(self) -> bool:
        """True iff some point lies on y = ix or y = -ix (key 0 present)."""
        return GR_ZERO in self.plus_classes or GR_ZERO in self.minus_classes


def isotropic_classify(points: Sequence[PointC2]) -> IsotropicClassification:
    plus: dict[GaussianRational, list[PointC2]] = {}
    minus: dict[GaussianRational, list[PointC2]] = {}
    for p in points:
        plus.setdefault(p.y - GR_I * p.x, []).append(p)
        minus.setdefault(p.y + GR_I * p.x, []).append(p)
    return IsotropicClassification(
        plus_classes={k: tuple(v) for k, v in plus.items()},
        minus_classes={k: tuple(v) for k, v in minus.items()},
        plus_cover=max((len(v) for v in plus.values()), default=0),
        minus_cover=max((len(v) for v in minus.values()), default=0),
    )


@dataclass(frozen=True)
class GrowthSets:
    """The three quadruple-difference sets of a scalar set A, together with
    the point sets that reduce each of them to a distance set.

    plus_set    = {(a1-a2)^2 + (a3-a4)^2}   <->  Delta(A x A)  u  {0}
    minus_set   = {(a1-a2)^2 - (a3-a4)^2}   <->  Delta(A x iA) u  {0}
    product_set = {(a1-a2)(a3-a4)};  4*product_set = Delta(points_product) u {0}
    """

    plus_set: frozenset[GaussianRational]
    minus_set: frozenset[GaussianRational]
    product_set: frozenset[GaussianRational]
    points_plus: tuple[PointC2, ...]
    points_minus: tuple[PointC2, ...]
    points_product: tuple[PointC2, ...]


def growth_sets(scalars: Iterable[GaussianRational]) -> GrowthSets:
    a = sorted(set(scalars), key=GaussianRational.sort_key)
    diffs = sorted({x - y for x in a for y in a}, key=GaussianRational.sort_key)
    squares = [d * d for d in diffs]
    plus = frozenset(s1 + s2 for s1 in squares for s2 in squares)
    minus = frozenset(s1 - s2 for s1 in squares for s2 in squares)
    product = frozenset(d1 * d2 for d1 in diffs for d2 in diffs)
    pts_plus = tuple(PointC2(x, y) for x in a for y in a)
    pts_minus = tuple(PointC2(x, GR_I * y) for x in a for y in a)
    pts_product = tuple(PointC2(x + y, GR_I * x - GR_I * y) for x in a for y in a)
    return GrowthSets(plus, minus, product, pts_plus, pts_minus, pts_product)
