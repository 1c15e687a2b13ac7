"""Executable invariant suite over point-set and line-set datasets.

Each check replays one of the exact lemma-level invariants (coplanarity
biconditional, bad-plane characterization, histogram identities, richness
caps, ...) against the supplied dataset and reports violations with exact
witnesses.  All sampling is seeded, so failures replay bit-identically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import GaussianRational
from .cplane import (PointC2, delta, distance_statistics, isotropic_classify,
                     quadruples_bruteforce)
from .esgk import (EsgkFamily, classify_pairs, esgk_family,
                   esgk_line_endpoints, parallel_pair_count,
                   parallel_pairs_bruteforce, special_point)
from .incidence import rich_points, rich_surfaces
from .lines3 import (Equal, Intersecting, LineC3, Parallel, Skew, bad_plane,
                     canonical_line, is_bad_plane, line_pair_relation,
                     v_add, v_scale)
from .serialization import gr_to_json, vec3_to_json


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "detail": self.detail, "witnesses": self.witnesses}


@dataclass
class VerifyReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


POINT_SUITES = ("distance-stats", "isotropic", "esgk-family", "lemma65-caps")
LINE_SUITES = ("lines-distinct", "pair-symmetry", "richness-bounds",
               "rich-completeness", "hairbrush")
CROSS_SUITES = ("esgk-consistency",)
ALL_SUITES = POINT_SUITES + LINE_SUITES + CROSS_SUITES


def _point_json(p: PointC2) -> dict:
    return {"x": gr_to_json(p.x), "y": gr_to_json(p.y)}


def _line_json(line: LineC3) -> dict:
    return {"base": vec3_to_json(line.base), "dir": vec3_to_json(line.direction)}


# ---------------------------------------------------------------------------
# point-set suites
# ---------------------------------------------------------------------------


def _check_distance_stats(points, cap_quadruples, threads) -> list[CheckResult]:
    out = []
    stats = distance_statistics(points, threads=threads)
    n = stats.point_count
    total = sum(stats.histogram.values()) + stats.zero_pairs
    out.append(CheckResult(
        "distance-stats", "ordered-pair-total", total == n * (n - 1),
        f"sum N_j + zeroPairs = {total}, n(n-1) = {n * (n - 1)}"))
    q = sum(c * (c - 1) for c in stats.histogram.values())
    out.append(CheckResult(
        "distance-stats", "quadruple-histogram-identity",
        q == stats.quadruple_count,
        f"sum N(N-1) = {q}, quadrupleCount = {stats.quadruple_count}"))
    t = len(stats.histogram)
    s = sum(stats.histogram.values())
    cs_ok = t * (stats.quadruple_count + s) >= s * s
    out.append(CheckResult(
        "distance-stats", "cauchy-schwarz-chain", cs_ok,
        f"t(Q + S) = {t * (stats.quadruple_count + s)} >= S^2 = {s * s}"))
    if n <= cap_quadruples:
        brute = quadruples_bruteforce(points, cap=cap_quadruples)
        out.append(CheckResult(
            "distance-stats", "quadruple-bruteforce-oracle",
            brute == stats.quadruple_count,
            f"bruteforce = {brute}, histogram = {stats.quadruple_count}"))
    return out


def _check_isotropic(points) -> list[CheckResult]:
    from .algebra import GR_I
    bad = []
    n = len(points)
    for i in range(n):
        p = points[i]
        kp_plus = p.y - GR_I * p.x
        kp_minus = p.y + GR_I * p.x
        for j in range(i + 1, n):
            q = points[j]
            share = (kp_plus == q.y - GR_I * q.x) or (kp_minus == q.y + GR_I * q.x)
            if (not delta(p, q)) != share:
                bad.append({"p": _point_json(p), "q": _point_json(q)})
    return [CheckResult(
        "isotropic", "zero-distance-iff-shared-isotropic-line", not bad,
        f"{len(bad)} violating pairs among {n * (n - 1) // 2}", bad[:5])]


def _sample_indices(rng: random.Random, n: int, count: int) -> list[int]:
    return [rng.randrange(n) for _ in range(count)]


def _check_esgk_family(points, family: EsgkFamily, rng: random.Random,
                       sample: int, small_n: int) -> list[CheckResult]:
    out = []
    n = family.n
    out.append(CheckResult(
        "esgk-family", "injectivity",
        len(set(family.lines)) == n * n,
        f"{len(set(family.lines))} distinct lines from {n * n} ordered pairs"))

    # Lemma-level biconditional: coplanarity iff equal squared distances.
    quads = ([(i, j, k, l) for i in range(n) for j in range(n)
              for k in range(n) for l in range(n)]
             if n ** 4 <= sample else
             [tuple(_sample_indices(rng, n, 4)) for _ in range(sample)])
    bad = []
    for (i, j, k, l) in quads:
        a, b, c, d = points[i], points[j], points[k], points[l]
        lac = family.lines[i * n + k]
        lbd = family.lines[j * n + l]
        coplanar = (lac == lbd) or not isinstance(line_pair_relation(lac, lbd), Skew)
        if coplanar != (delta(a, b) == delta(c, d)):
            bad.append({"a": _point_json(a), "b": _point_json(b),
                        "c": _point_json(c), "d": _point_json(d)})
    out.append(CheckResult(
        "esgk-family", "coplanar-iff-equal-distance", not bad,
        f"{len(bad)} violations over {len(quads)} quadruples", bad[:5]))

    # Bad-plane containment iff both endpoints on the matching isotropic line.
    cls = isotropic_classify(points)
    bad = []
    for sign, classes in ((+1, cls.plus_classes), (-1, cls.minus_classes)):
        for key, members in classes.items():
            plane = bad_plane(sign, key)
            member_set = set(members)
            for a in points:
                for c in points:
                    line = family.lines[points.index(a) * n + points.index(c)]
                    onplane = plane.contains_line(line)
                    both = a in member_set and c in member_set
                    if onplane != both:
                        bad.append({"sign": sign, "k": gr_to_json(key),
                                    "a": _point_json(a), "c": _point_json(c)})
    out.append(CheckResult(
        "esgk-family", "bad-plane-containment-iff-endpoints", not bad,
        f"{len(bad)} violations", bad[:5]))

    # Parallel pairs: histogram versus brute force and the n^3 cap.
    hist = parallel_pair_count(family)
    out.append(CheckResult(
        "esgk-family", "parallel-pairs-cubic-cap", hist <= n ** 3,
        f"{hist} <= {n ** 3}"))
    if n <= small_n:
        brute = parallel_pairs_bruteforce(family)
        out.append(CheckResult(
            "esgk-family", "parallel-pairs-bruteforce", hist == brute,
            f"histogram = {hist}, bruteforce = {brute}"))
        counts = classify_pairs(family.lines)
        stats = distance_statistics(points)
        out.append(CheckResult(
            "esgk-family", "quadruples-below-coplanar-nonbad-pairs",
            stats.quadruple_count <= counts.coplanar_non_bad,
            f"Q = {stats.quadruple_count} <= {counts.coplanar_non_bad}"))

    # Pencil concurrency: all lines with c on one isotropic line meet the
    # special point of (a, sign, k).
    bad = []
    for sign, classes in ((+1, cls.plus_classes), (-1, cls.minus_classes)):
        for key, members in classes.items():
            for a in points:
                p = special_point(a, sign, key)
                i = points.index(a)
                for c in members:
                    line = family.lines[i * n + points.index(c)]
                    if not line.contains_point(p):
                        bad.append({"sign": sign, "k": gr_to_json(key),
                                    "a": _point_json(a), "c": _point_json(c)})
    out.append(CheckResult(
        "esgk-family", "pencil-special-point-membership", not bad,
        f"{len(bad)} violations", bad[:5]))
    return out


def _check_lemma65_caps(points, family: EsgkFamily, triple_budget: int,
                        threads: int) -> list[CheckResult]:
    out = []
    n = family.n
    lines = family.lines
    report = rich_points(lines, 2, threads=threads)
    out.append(CheckResult(
        "lemma65-caps", "max-richness-at-most-n",
        report.max_richness <= n,
        f"maxRichness = {report.max_richness}, |P| = {n}"))
    surfaces = rich_surfaces(lines, 2, triple_budget=triple_budget)
    cls = isotropic_classify(points)
    gate = not cls.has_origin_keys()
    bad = []
    for plane, members in surfaces.planes:
        if is_bad_plane(plane) is None and gate and len(members) > 2 * n:
            bad.append({"plane": {"normal": vec3_to_json(plane.normal),
                                  "constant": gr_to_json(plane.constant)},
                        "lines": len(members)})
    out.append(CheckResult(
        "lemma65-caps", "non-bad-plane-at-most-2n",
        not bad,
        ("gated off: some point lies on y = +-ix" if not gate else
         f"{len(bad)} planes over the 2n = {2 * n} cap"),
        bad[:5]))
    bad = []
    for quadric, members in surfaces.quadrics:
        if quadric.is_irreducible() and len(members) > 6 * n:
            bad.append({"quadric": [gr_to_json(c) for c in quadric.coeffs],
                        "lines": len(members)})
    out.append(CheckResult(
        "lemma65-caps", "irreducible-quadric-at-most-6n", not bad,
        f"{len(bad)} quadrics over the 6n = {6 * n} cap "
        f"({surfaces.triples_fitted} triples fitted)", bad[:5]))
    return out


# ---------------------------------------------------------------------------
# line-set suites
# ---------------------------------------------------------------------------


def _check_lines_distinct(lines) -> list[CheckResult]:
    return [CheckResult(
        "lines-distinct", "canonical-and-distinct",
        len(set(lines)) == len(lines),
        f"{len(set(lines))} distinct of {len(lines)}")]


def _relation_signature(rel):
    if isinstance(rel, Equal):
        return ("equal",)
    if isinstance(rel, Skew):
        return ("skew",)
    if isinstance(rel, Parallel):
        return ("parallel", rel.plane)
    return ("intersecting", rel.point, rel.plane)


def _check_pair_symmetry(lines, rng: random.Random, sample: int) -> list[CheckResult]:
    n = len(lines)
    bad = []
    pairs = ([(i, j) for i in range(n) for j in range(i + 1, n)]
             if n * (n - 1) // 2 <= sample else
             [(rng.randrange(n), rng.randrange(n)) for _ in range(sample)])
    for i, j in pairs:
        if i == j:
            continue
        if _relation_signature(line_pair_relation(lines[i], lines[j])) != \
           _relation_signature(line_pair_relation(lines[j], lines[i])):
            bad.append({"l1": _line_json(lines[i]), "l2": _line_json(lines[j])})
    return [CheckResult(
        "pair-symmetry", "relation-symmetric", not bad,
        f"{len(bad)} asymmetric pairs of {len(pairs)} checked", bad[:5])]


def _check_richness_bounds(lines, triple_budget: int, threads: int) -> list[CheckResult]:
    out = []
    n = len(lines)
    report = rich_points(lines, 2, threads=threads)
    r_big = 2 * n
    cnt = report.count_at_least(r_big)
    out.append(CheckResult(
        "richness-bounds", "pairwise-intersection-cap", cnt <= 2 * n // r_big,
        f"|P_{r_big}| = {cnt} <= 2n/r = {2 * n // r_big}"))
    a1 = max(2, math.ceil(2 * math.sqrt(n)))
    surfaces = rich_surfaces(lines, a1, triple_budget=triple_budget)
    planes1 = len(surfaces.planes)
    out.append(CheckResult(
        "richness-bounds", "rich-plane-count-cap",
        planes1 <= 2 * n / a1,
        f"A = {a1}: {planes1} planes <= 2n/A = {2 * n / a1:.3f}"))
    a2 = max(2, math.ceil(8 * math.sqrt(n)))
    planes2 = sum(1 for _, m in surfaces.planes if len(m) >= a2)
    quads2 = sum(1 for q, m in surfaces.quadrics
                 if len(m) >= a2 and q.is_irreducible())
    out.append(CheckResult(
        "richness-bounds", "rich-surface-count-cap",
        planes2 + quads2 <= 2 * n / a2,
        f"A = {a2}: {planes2}+{quads2} surfaces <= 2n/A = {2 * n / a2:.3f}"))
    return out


def _check_rich_completeness(lines, rng: random.Random, threads: int) -> list[CheckResult]:
    out = []
    report = rich_points(lines, 2, threads=threads)
    pts = list(report.incident_lines.items())
    if len(pts) > 400:
        pts = [pts[rng.randrange(len(pts))] for _ in range(400)]
    bad = []
    for point, incident in pts:
        true_count = sum(1 for l in lines if l.contains_point(point))
        if true_count != len(incident):
            bad.append({"point": vec3_to_json(point), "stored": len(incident),
                        "recount": true_count})
    out.append(CheckResult(
        "rich-completeness", "richness-recount", not bad,
        f"{len(bad)} mismatches over {len(pts)} points", bad[:5]))
    n = len(lines)
    bad = []
    trials = min(100, n * (n - 1) // 2)
    for _ in range(trials):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        rel = line_pair_relation(lines[i], lines[j])
        if isinstance(rel, Intersecting):
            inc = report.incident_lines.get(rel.point)
            if inc is None or i not in inc or j not in inc:
                bad.append({"i": i, "j": j, "point": vec3_to_json(rel.point)})
    out.append(CheckResult(
        "rich-completeness", "pair-intersections-reported", not bad,
        f"{len(bad)} missing of {trials} sampled pairs", bad[:5]))
    return out


def _check_hairbrush(lines, rng: random.Random, sample: int) -> list[CheckResult]:
    """Meeting law for two lines crossing at p and spanning a plane: a third
    line meets both iff it passes through p or lies in the spanned plane
    (plus the two planted sufficient conditions)."""
    n = len(lines)
    meets_cache = {}

    def meets(l1, l2):
        key = (l1, l2)
        if key not in meets_cache:
            rel = line_pair_relation(l1, l2)
            meets_cache[key] = isinstance(rel, (Equal, Intersecting))
        return meets_cache[key]

    bad = []
    checked = 0
    attempts = 0
    while checked < sample and attempts < 40 * sample:
        attempts += 1
        i = rng.randrange(n)
        l1 = lines[i]
        if attempts % 2 and n > 1:
            # pair from the dataset when one intersects l1
            j = rng.randrange(n)
            if j == i:
                continue
            l2 = lines[j]
        else:
            # planted second line through a point of l1 (random dataset
            # lines are generically skew, so intersections must be built)
            meet = l1.point_at(GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4)))
            d = (GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4)),
                 GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4)),
                 GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4)))
            if not any(d):
                continue
            l2 = canonical_line(meet, d)
        rel = line_pair_relation(l1, l2)
        if not isinstance(rel, Intersecting):
            continue
        checked += 1
        p, plane = rel.point, rel.plane
        # (a) planted third line through p
        d = (GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5)),
             GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5)),
             GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5)))
        if any(d):
            m = canonical_line(p, d)
            if not (meets(m, l1) and meets(m, l2)):
                bad.append({"case": "through-p", "m": _line_json(m)})
        # (b) planted third line inside the plane, parallel to neither
        u, v = l1.direction, l2.direction
        alpha = GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4))
        beta = GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4))
        base = v_add(p, v_add(v_scale(alpha, u), v_scale(beta, v)))
        gamma = GaussianRational(rng.randint(1, 4))
        deltac = GaussianRational(rng.randint(1, 4))
        direction = v_add(v_scale(gamma, u), v_scale(deltac, v))
        m = canonical_line(base, direction)
        if m.direction != l1.direction and m.direction != l2.direction:
            if not (meets(m, l1) and meets(m, l2)):
                bad.append({"case": "in-plane", "m": _line_json(m)})
        # (c) all input lines meeting both must contain p or lie in the plane
        for k in range(n):
            mk = lines[k]
            if meets(mk, l1) and meets(mk, l2):
                if not (mk.contains_point(p) or plane.contains_line(mk)):
                    bad.append({"case": "necessity", "m": _line_json(mk),
                                "p": vec3_to_json(p)})
    return [CheckResult(
        "hairbrush", "meet-both-law", not bad,
        f"{len(bad)} violations over {checked} intersecting pairs", bad[:5])]


# ---------------------------------------------------------------------------
# cross suite
# ---------------------------------------------------------------------------


def _check_esgk_consistency(points, lines) -> list[CheckResult]:
    out = []
    n = len(points)
    point_set = set(points)
    expected = {(a, c) for a in points for c in points}
    seen = set()
    bad = []
    for line in lines:
        try:
            a, c = esgk_line_endpoints(line)
        except ValueError:
            bad.append({"line": _line_json(line), "reason": "not a pair line"})
            continue
        if a not in point_set or c not in point_set:
            bad.append({"line": _line_json(line),
                        "decoded": [_point_json(a), _point_json(c)],
                        "reason": "endpoints outside the point set"})
            continue
        seen.add((a, c))
    missing = expected - seen
    out.append(CheckResult(
        "esgk-consistency", "lines-decode-into-point-set", not bad,
        f"{len(bad)} undecodable lines of {len(lines)}", bad[:5]))
    out.append(CheckResult(
        "esgk-consistency", "family-covers-all-pairs",
        not missing and len(lines) == n * n,
        f"{len(seen)} of {n * n} ordered pairs covered by {len(lines)} lines",
        [{"a": _point_json(a), "c": _point_json(c)} for (a, c) in list(missing)[:5]]))
    return out


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def run_verify(points: Sequence[PointC2] | None = None,
               lines: Sequence[LineC3] | None = None,
               suites: Sequence[str] | None = None,
               seed: int = 0,
               cap_quadruples: int = 50,
               triple_budget: int = 300,
               sample: int = 1500,
               small_n: int = 8,
               threads: int = 1) -> VerifyReport:
    """Run the selected invariant suites against the dataset.

    ``suites`` defaults to everything applicable to the provided inputs.
    Heavy oracles respect their caps: the quadruple loop runs only when
    |P| <= cap_quadruples, the quadric search fits at most triple_budget
    triples, and randomized checks draw ``sample`` cases from Random(seed).
    """
    if points is None and lines is None:
        raise ValueError("nothing to verify: provide points and/or lines")
    selected = tuple(suites) if suites else ALL_SUITES
    unknown = [s for s in selected if s not in ALL_SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}; available: {ALL_SUITES}")
    checks: list[CheckResult] = []
    rng = random.Random(seed)
    family = None
    if points is not None:
        points = list(points)
        if "distance-stats" in selected:
            checks.extend(_check_distance_stats(points, cap_quadruples, threads))
        if "isotropic" in selected:
            checks.extend(_check_isotropic(points))
        if "esgk-family" in selected or "lemma65-caps" in selected:
            family = esgk_family(points)
        if "esgk-family" in selected:
            checks.extend(_check_esgk_family(points, family, rng, sample, small_n))
        if "lemma65-caps" in selected:
            checks.extend(_check_lemma65_caps(points, family, triple_budget, threads))
    if lines is not None:
        lines = list(lines)
        if "lines-distinct" in selected:
            checks.extend(_check_lines_distinct(lines))
        if "pair-symmetry" in selected:
            checks.extend(_check_pair_symmetry(lines, rng, sample))
        if "richness-bounds" in selected:
            checks.extend(_check_richness_bounds(lines, triple_budget, threads))
        if "rich-completeness" in selected:
            checks.extend(_check_rich_completeness(lines, rng, threads))
        if "hairbrush" in selected:
            checks.extend(_check_hairbrush(lines, rng, max(3, sample // 500)))
    if points is not None and lines is not None and "esgk-consistency" in selected:
        checks.extend(_check_esgk_consistency(points, lines))
    return VerifyReport(checks)
