"""Bound-comparison report tables.

Each report pairs exact desk-scale counts with the floating reference
curves they are conjectured or proved to track asymptotically
(n^(1-eps) for distinct distances, n^(3/2) for 2-rich points,
n^2/r^3 + n/r for r-rich points of plane sections, n^(3/2+eps) r^(-2)
for structure residuals).  Ratios are reported, never asserted: the
asymptotic constants are not determinable at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cplane import distance_statistics
from .esgk import esgk_family
from .generators import (GeneratorError, grid_points, isotropic_points,
                         planted_plane_lines, random_lines, random_points)
from .incidence import rich_points, structure_report
from .algebra import gr


@dataclass(frozen=True)
class ReportTable:
    kind: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "columns": list(self.columns),
                "rows": [list(r) for r in self.rows]}

    def to_csv_rows(self) -> tuple[list[str], list[list[str]]]:
        return list(self.columns), [[_cell(x) for x in row] for row in self.rows]


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def grid_distance_report(k_min: int, k_max: int, epsilon: float) -> ReportTable:
    """|Delta(P)| of the k x k grid against n^(1-eps)."""
    if not 1 <= k_min <= k_max:
        raise GeneratorError("need 1 <= k_min <= k_max")
    rows = []
    for k in range(k_min, k_max + 1):
        pts = grid_points(k)
        stats = distance_statistics(pts)
        n = len(pts)
        ref = float(n) ** (1.0 - epsilon)
        rows.append((k, n, stats.distinct_count, ref, stats.distinct_count / ref))
    return ReportTable("grid-distances",
                       ("k", "n", "distinct_distances", "n^(1-eps)", "ratio"),
                       tuple(rows))


def isotropic_distance_report(m_min: int, m_max: int) -> ReportTable:
    """The degenerate family: every pair at squared distance zero."""
    rows = []
    for m in range(m_min, m_max + 1):
        stats = distance_statistics(isotropic_points(m, +1, gr(0)))
        rows.append((m, stats.distinct_count, stats.zero_pairs))
    return ReportTable("isotropic-distances",
                       ("m", "distinct_distances", "zero_pairs"), tuple(rows))


def rich_point_report(n_points: int, bound: int, seed: int,
                      threads: int = 1) -> ReportTable:
    """|P_r| of the pair-transform family of a random point set, for dyadic
    r up to 2*sqrt(lineCount), against n^2/r^3 + n/r (n = lineCount)."""
    pts = random_points(n_points, bound, seed)
    lines = esgk_family(pts).lines
    n = len(lines)
    report = rich_points(lines, 2, threads=threads)
    rows = []
    r = 2
    while r <= max(2, 2 * math.isqrt(n)):
        count = report.count_at_least(r)
        ref = n * n / r ** 3 + n / r
        rows.append((n, r, count, ref, count / ref))
        r *= 2
    return ReportTable("rich-points",
                       ("lines", "r", "rich_points", "n^2/r^3+n/r", "ratio"),
                       tuple(rows))


def two_rich_report(sizes: Sequence[int], bound: int, seed: int,
                    threads: int = 1) -> ReportTable:
    """|P_2| of generic random line sets against n^(3/2); generic random
    lines keep every plane and quadric far below the n^(1/2) cap."""
    rows = []
    for i, n in enumerate(sizes):
        lines = random_lines(n, bound, seed + i)
        report = rich_points(lines, 2, threads=threads)
        count = report.count_at_least(2)
        ref = float(n) ** 1.5
        rows.append((n, count, ref, count / ref))
    return ReportTable("two-rich", ("lines", "two_rich_points", "n^1.5", "ratio"),
                       tuple(rows))


def structure_residual_report(plane_count: int, per_plane: int, extra: int,
                              r: int, epsilon: float, seed: int,
                              triple_budget: int = 2000,
                              threads: int = 1) -> ReportTable:
    """Structure-decomposition residuals against n^(3/2+eps) r^(-2)."""
    lines, _ = planted_plane_lines(plane_count, per_plane, extra, seed)
    rep = structure_report(lines, r, epsilon, triple_budget=triple_budget,
                           threads=threads)
    rows = [(rep.line_count, r, rep.plane_threshold, len(rep.planes),
             rep.rich_point_count, rep.residual_count, rep.reference,
             rep.residual_ratio)]
    return ReportTable("structure",
                       ("lines", "r", "plane_threshold", "planes",
                        "rich_points", "residual", "n^(3/2+eps)/r^2", "ratio"),
                       tuple(rows))
