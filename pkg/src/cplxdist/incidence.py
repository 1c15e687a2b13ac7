"""Rich points, rich surfaces, and desk-scale structure reports for line
sets in C^3.

Richness is computed exactly: every pairwise intersection point is
collected and deduplicated by canonical form, and the set of input lines
through each point is accumulated from the contributing pairs (a line
through a point of richness r appears in r-1 of its pairs, so the union
of pair members is exactly the set of incident lines; the invariant
suite re-verifies this against a direct incidence recount).

Rich plane discovery is complete for thresholds >= 2: any plane with two
or more distinct contained lines is spanned by an intersecting or
parallel pair.  Quadric discovery walks line triples in deterministic
order under an explicit budget, keeping triples whose vanishing-quadric
space is one dimensional; the O(n^3) cost is the honest bound.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .lines3 import (Intersecting, LineC3, Parallel, PlaneC3, QuadricC3,
                     Vec3, fit_quadrics, line_in_quadric, line_pair_relation,
                     v_sort_key)


@dataclass(frozen=True)
class RichPointReport:
    """Exact r-rich points of a line set, for every r >= 2.

    ``points_by_richness[r]`` lists the points incident to exactly r input
    lines; ``incident_lines`` gives the incident line indices per point.
    """

    threshold: int
    points_by_richness: dict[int, tuple[Vec3, ...]]
    incident_lines: dict[Vec3, tuple[int, ...]]
    max_richness: int

    def rich_points(self, r: int | None = None) -> list[Vec3]:
        """Points of richness >= r (default: the report threshold)."""
        r = self.threshold if r is None else r
        out = []
        for rr, pts in self.points_by_richness.items():
            if rr >= r:
                out.extend(pts)
        out.sort(key=v_sort_key)
        return out

    def count_at_least(self, r: int) -> int:
        return sum(len(pts) for rr, pts in self.points_by_richness.items() if rr >= r)


def _check_canonical_distinct(lines: Sequence[LineC3]) -> None:
    if len(set(lines)) != len(lines):
        raise ValueError("lines must be distinct")


def _intersections_shard(lines, idxs) -> dict[Vec3, set[int]]:
    found: dict[Vec3, set[int]] = {}
    n = len(lines)
    for i in idxs:
        li = lines[i]
        for j in range(i + 1, n):
            rel = line_pair_relation(li, lines[j])
            if isinstance(rel, Intersecting):
                s = found.get(rel.point)
                if s is None:
                    found[rel.point] = {i, j}
                else:
                    s.add(i)
                    s.add(j)
    return found


def rich_points(lines: Sequence[LineC3], r: int = 2, threads: int = 1) -> RichPointReport:
    """All pairwise intersection points with exact richness counts."""
    if r < 2:
        raise ValueError("richness threshold must be >= 2")
    _check_canonical_distinct(lines)
    n = len(lines)
    if threads <= 1 or n < 32:
        found = _intersections_shard(lines, range(n))
    else:
        shards = [range(t, n, threads) for t in range(threads)]
        found = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda ix: _intersections_shard(lines, ix), shards):
                for p, s in part.items():
                    if p in found:
                        found[p] |= s
                    else:
                        found[p] = s
    by_rich: dict[int, list[Vec3]] = {}
    incident: dict[Vec3, tuple[int, ...]] = {}
    for p, s in found.items():
        by_rich.setdefault(len(s), []).append(p)
        incident[p] = tuple(sorted(s))
    return RichPointReport(
        threshold=r,
        points_by_richness={rr: tuple(sorted(pts, key=v_sort_key))
                            for rr, pts in sorted(by_rich.items())},
        incident_lines=incident,
        max_richness=max(by_rich, default=0),
    )


@dataclass(frozen=True)
class RichSurfaceReport:
    """Planes and quadrics containing at least ``threshold`` input lines.

    Every listed surface's contained-line index tuple is exact (verified
    by the containment predicate during construction).  ``triples_fitted``
    records how much of the triple budget the quadric search consumed.
    """

    threshold: int
    planes: tuple[tuple[PlaneC3, tuple[int, ...]], ...]
    quadrics: tuple[tuple[QuadricC3, tuple[int, ...]], ...]
    triples_fitted: int
    triple_budget: int


def rich_surfaces(lines: Sequence[LineC3], threshold: int,
                  triple_budget: int = 2000) -> RichSurfaceReport:
    """Discover planes and quadrics rich in input lines.

    Candidate planes are the spanned planes of all intersecting and
    parallel pairs; candidate quadrics come from line triples (in
    lexicographic index order, capped by ``triple_budget``) that do not
    lie inside an already-listed rich plane and whose vanishing space is
    one dimensional.
    """
    if threshold < 2:
        raise ValueError("threshold must be >= 2")
    _check_canonical_distinct(lines)
    n = len(lines)
    candidates: dict[PlaneC3, None] = {}
    for i in range(n):
        for j in range(i + 1, n):
            rel = line_pair_relation(lines[i], lines[j])
            if isinstance(rel, (Intersecting, Parallel)):
                candidates.setdefault(rel.plane)
    rich_planes = []
    for plane in candidates:
        members = tuple(k for k, line in enumerate(lines) if plane.contains_line(line))
        if len(members) >= threshold:
            rich_planes.append((plane, members))
    rich_planes.sort(key=lambda t: t[0].sort_key())

    plane_members = [set(members) for _, members in rich_planes]
    quadrics: dict[QuadricC3, tuple[int, ...]] = {}
    fitted = 0
    for triple in combinations(range(n), 3):
        if fitted >= triple_budget:
            break
        tset = set(triple)
        if any(tset <= m for m in plane_members):
            continue
        fitted += 1
        basis = fit_quadrics([lines[k] for k in triple])
        if len(basis) != 1:
            continue
        q = basis[0]
        if q in quadrics:
            continue
        members = tuple(k for k, line in enumerate(lines) if line_in_quadric(line, q))
        if len(members) >= threshold:
            quadrics[q] = members
    rich_quadrics = sorted(quadrics.items(), key=lambda t: t[0].sort_key())
    return RichSurfaceReport(
        threshold=threshold,
        planes=tuple(rich_planes),
        quadrics=tuple(rich_quadrics),
        triples_fitted=fitted,
        triple_budget=triple_budget,
    )


@dataclass(frozen=True)
class StructureReport:
    """Desk-scale structure decomposition: rich planes above a floating
    threshold plus the residual rich points not absorbed by them.  Ratios
    against the floating reference curve are reported, never asserted."""

    line_count: int
    r: int
    r_prime: int
    epsilon: float
    plane_threshold: int
    planes: tuple[tuple[PlaneC3, tuple[int, ...]], ...]
    rich_point_count: int
    residual_count: int
    residual_points: tuple[Vec3, ...]
    reference: float

    @property
    def residual_ratio(self) -> float:
        return self.residual_count / self.reference if self.reference else math.inf


def structure_report(lines: Sequence[LineC3], r: int, epsilon: float,
                     triple_budget: int = 2000, threads: int = 1) -> StructureReport:
    """Planes containing >= ceil(r * n^(1/2+eps)) lines, and the count of
    r-rich points outside the r'-rich points of those planes, r' = max(2, ceil(r/3)).

    Thresholds are evaluated in floating point (the powers are
    irrational); every count is exact.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    n = len(lines)
    plane_threshold = max(2, math.ceil(r * n ** (0.5 + epsilon)))
    surfaces = rich_surfaces(lines, plane_threshold, triple_budget=triple_budget) \
        if n >= 2 else RichSurfaceReport(plane_threshold, (), (), 0, triple_budget)
    r_prime = max(2, math.ceil(r / 3))
    report = rich_points(lines, 2, threads=threads)
    rich = set(report.rich_points(r))
    absorbed: set[Vec3] = set()
    for plane, members in surfaces.planes:
        sub = [lines[k] for k in members]
        if len(sub) >= 2:
            sub_report = rich_points(sub, 2)
            absorbed.update(sub_report.rich_points(r_prime))
    residual = sorted(rich - absorbed, key=v_sort_key)
    return StructureReport(
        line_count=n,
        r=r,
        r_prime=r_prime,
        epsilon=epsilon,
        plane_threshold=plane_threshold,
        planes=surfaces.planes,
        rich_point_count=len(rich),
        residual_count=len(residual),
        residual_points=tuple(residual),
        reference=float(n) ** (1.5 + epsilon) * float(r) ** (-2.0),
    )
