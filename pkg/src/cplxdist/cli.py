"""Command-line interface.

Subcommands: gen, distances, esgk, rich, surfaces, structure, sumprod,
verify, report.  Exit codes: 0 = success / all checks pass, 1 = an
invariant was violated, 2 = usage or dataset error.  All outputs are
canonical bytes: a fixed seed and config reproduce files exactly,
independent of --threads.
"""

from __future__ import annotations

import argparse
import sys
from . import reports
from .algebra import GaussianRational, rational_from_str
from .cplane import (CapExceededError, DuplicatePointsError,
                     distance_statistics, growth_sets)
from .esgk import classify_pairs, esgk_family, parallel_pair_count
from .generators import (GeneratorError, grid_points, isotropic_points,
                         planted_plane_lines, product_point_sets,
                         random_lines, random_points)
from .incidence import rich_points, rich_surfaces, structure_report
from .serialization import (DatasetError, dump_csv_bytes, dump_json_bytes,
                            gr_to_json, lines_from_json, lines_to_json,
                            load_json_file, points_from_json, points_to_json,
                            statistics_to_csv_rows, statistics_to_json,
                            vec3_to_json, write_bytes)
from .verify import ALL_SUITES, run_verify


class UsageError(ValueError):
    pass


def _parse_scalar(text: str) -> GaussianRational:
    """Parse "re" or "re+im*i" written as num/den[,num/den] pairs."""
    try:
        if "," in text:
            re_s, im_s = text.split(",", 1)
            return GaussianRational(rational_from_str(re_s.strip()),
                                    rational_from_str(im_s.strip()))
        return GaussianRational(rational_from_str(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad scalar {text!r}: {exc}") from exc


def _parse_scalar_list(text: str) -> list[GaussianRational]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            out.append(_parse_scalar(chunk))
    if not out:
        raise UsageError("empty scalar list")
    return out


def _emit(args, payload_json, payload_csv=None) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        if payload_csv is None:
            raise UsageError("this command has no CSV form")
        data = dump_csv_bytes(*payload_csv)
    else:
        data = dump_json_bytes(payload_json)
    if getattr(args, "out", None):
        write_bytes(args.out, data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _load_points(path: str):
    return points_from_json(load_json_file(path))


def _load_lines(path: str):
    return lines_from_json(load_json_file(path))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "grid":
        data = points_to_json(grid_points(args.size))
    elif kind == "isotropic":
        sign = +1 if args.sign == "+" else -1
        data = points_to_json(isotropic_points(args.count, sign,
                                               _parse_scalar(args.k)))
    elif kind == "random":
        data = points_to_json(random_points(args.count, args.bound, args.seed))
    elif kind == "random-lines":
        data = lines_to_json(random_lines(args.count, args.bound, args.seed))
    elif kind == "planted-planes":
        lines, _ = planted_plane_lines(args.planes, args.per_plane,
                                       args.extra, args.seed)
        data = lines_to_json(lines)
    elif kind == "product":
        sets = product_point_sets(_parse_scalar_list(args.scalars))
        if not args.out:
            raise UsageError("product generation writes three files; --out is required")
        for name, pts in sorted(sets.items()):
            write_bytes(f"{args.out}.{name}.json",
                        dump_json_bytes(points_to_json(pts)))
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    if args.out:
        write_bytes(args.out, dump_json_bytes(data))
    else:
        sys.stdout.write(dump_json_bytes(data).decode("utf-8"))
    return 0


def _cmd_distances(args) -> int:
    points = _load_points(args.points)
    stats = distance_statistics(points, threads=args.threads)
    _emit(args, statistics_to_json(stats), statistics_to_csv_rows(stats))
    return 0


def _cmd_esgk(args) -> int:
    points = _load_points(args.points)
    family = esgk_family(points)
    stats = distance_statistics(points, threads=args.threads)
    counts = classify_pairs(family.lines)
    summary = {
        "n": family.n,
        "lineCount": len(family.lines),
        "parallelPairs": parallel_pair_count(family),
        "badPlanePairs": counts.bad_plane,
        "coplanarNonBadPairs": counts.coplanar_non_bad,
        "quadrupleCount": stats.quadruple_count,
    }
    if args.out:
        write_bytes(args.out, dump_json_bytes(lines_to_json(family.lines)))
    sys.stdout.write(dump_json_bytes(summary).decode("utf-8"))
    return 0


def _cmd_rich(args) -> int:
    lines = _load_lines(args.lines)
    report = rich_points(lines, args.r, threads=args.threads)
    payload = {
        "lineCount": len(lines),
        "threshold": report.threshold,
        "maxRichness": report.max_richness,
        "countAtThreshold": report.count_at_least(args.r),
        "pointsByRichness": {
            str(r): [vec3_to_json(p) for p in pts]
            for r, pts in report.points_by_richness.items()
        },
    }
    header = ["richness", "points"]
    rows = [[str(r), str(len(pts))] for r, pts in report.points_by_richness.items()]
    _emit(args, payload, (header, rows))
    return 0


def _cmd_surfaces(args) -> int:
    lines = _load_lines(args.lines)
    report = rich_surfaces(lines, args.threshold, triple_budget=args.cap_triples)
    payload = {
        "lineCount": len(lines),
        "threshold": report.threshold,
        "triplesFitted": report.triples_fitted,
        "planes": [{"normal": vec3_to_json(p.normal),
                    "constant": gr_to_json(p.constant),
                    "lines": list(members)}
                   for p, members in report.planes],
        "quadrics": [{"coefficients": [gr_to_json(c) for c in q.coeffs],
                      "irreducible": q.is_irreducible(),
                      "lines": list(members)}
                     for q, members in report.quadrics],
    }
    header = ["surface", "contained_lines"]
    rows = ([["plane", str(len(m))] for _, m in report.planes]
            + [["quadric", str(len(m))] for _, m in report.quadrics])
    _emit(args, payload, (header, rows))
    return 0


def _cmd_structure(args) -> int:
    lines = _load_lines(args.lines)
    rep = structure_report(lines, args.r, args.epsilon,
                           triple_budget=args.cap_triples, threads=args.threads)
    payload = {
        "lineCount": rep.line_count,
        "r": rep.r,
        "rPrime": rep.r_prime,
        "epsilon": rep.epsilon,
        "planeThreshold": rep.plane_threshold,
        "planeCount": len(rep.planes),
        "planes": [{"normal": vec3_to_json(p.normal),
                    "constant": gr_to_json(p.constant),
                    "lines": list(members)}
                   for p, members in rep.planes],
        "richPointCount": rep.rich_point_count,
        "residualCount": rep.residual_count,
        "reference": rep.reference,
        "residualRatio": rep.residual_ratio,
    }
    header = ["lines", "r", "r_prime", "plane_threshold", "planes",
              "rich_points", "residual", "reference", "ratio"]
    rows = [[str(rep.line_count), str(rep.r), str(rep.r_prime),
             str(rep.plane_threshold), str(len(rep.planes)),
             str(rep.rich_point_count), str(rep.residual_count),
             f"{rep.reference:.6g}", f"{rep.residual_ratio:.6g}"]]
    _emit(args, payload, (header, rows))
    return 0


def _cmd_sumprod(args) -> int:
    scalars = _parse_scalar_list(args.scalars)
    g = growth_sets(scalars)
    payload = {
        "inputSize": len(set(scalars)),
        "plusSize": len(g.plus_set),
        "minusSize": len(g.minus_set),
        "productSize": len(g.product_set),
        "plusSet": [gr_to_json(x) for x in sorted(g.plus_set, key=GaussianRational.sort_key)],
        "minusSet": [gr_to_json(x) for x in sorted(g.minus_set, key=GaussianRational.sort_key)],
        "productSet": [gr_to_json(x) for x in sorted(g.product_set, key=GaussianRational.sort_key)],
    }
    header = ["set", "size"]
    rows = [["plus", str(len(g.plus_set))], ["minus", str(len(g.minus_set))],
            ["product", str(len(g.product_set))]]
    _emit(args, payload, (header, rows))
    return 0


def _cmd_verify(args) -> int:
    points = _load_points(args.points) if args.points else None
    lines = _load_lines(args.lines) if args.lines else None
    suites = args.suites.split(",") if args.suites else None
    try:
        report = run_verify(points=points, lines=lines, suites=suites,
                            seed=args.seed, cap_quadruples=args.cap_quadruples,
                            triple_budget=args.cap_triples, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = report.to_json()
    header = ["suite", "check", "passed", "detail"]
    rows = [[c.suite, c.name, str(c.passed), c.detail] for c in report.checks]
    _emit(args, payload, (header, rows))
    return 0 if report.passed else 1


def _cmd_report(args) -> int:
    kind = args.kind
    if kind == "grid-distances":
        table = reports.grid_distance_report(args.kmin, args.kmax, args.epsilon)
    elif kind == "isotropic-distances":
        table = reports.isotropic_distance_report(args.kmin, args.kmax)
    elif kind == "rich-points":
        table = reports.rich_point_report(args.count, args.bound, args.seed,
                                          threads=args.threads)
    elif kind == "two-rich":
        sizes = [int(s) for s in args.sizes.split(",")]
        table = reports.two_rich_report(sizes, args.bound, args.seed,
                                        threads=args.threads)
    elif kind == "structure":
        table = reports.structure_residual_report(
            args.planes, args.per_plane, args.extra, args.r, args.epsilon,
            args.seed, triple_budget=args.cap_triples, threads=args.threads)
    else:  # pragma: no cover
        raise UsageError(f"unknown report kind {kind}")
    _emit(args, table.to_json(), table.to_csv_rows())
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p, out=True):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    if out:
        p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cplxdist",
        description="Exact geometry of complex distances and lines in C^3")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a dataset")
    p.add_argument("kind", choices=("grid", "isotropic", "random",
                                    "random-lines", "planted-planes", "product"))
    p.add_argument("--size", type=int, default=3, help="grid side")
    p.add_argument("--count", type=int, default=8, help="points/lines to draw")
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--k", default="0", help="isotropic line intercept")
    p.add_argument("--planes", type=int, default=3)
    p.add_argument("--per-plane", dest="per_plane", type=int, default=20)
    p.add_argument("--extra", type=int, default=40)
    p.add_argument("--scalars", default="0;1;2", help="semicolon-separated scalar set")
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("distances", help="distance statistics of a point set")
    p.add_argument("points")
    _add_common(p)
    p.set_defaults(func=_cmd_distances)

    p = sub.add_parser("esgk", help="pair-transform line family and summary")
    p.add_argument("points")
    _add_common(p)
    p.set_defaults(func=_cmd_esgk)

    p = sub.add_parser("rich", help="r-rich points of a line set")
    p.add_argument("lines")
    p.add_argument("-r", type=int, default=2)
    _add_common(p)
    p.set_defaults(func=_cmd_rich)

    p = sub.add_parser("surfaces", help="rich planes and quadrics of a line set")
    p.add_argument("lines")
    p.add_argument("-A", "--threshold", dest="threshold", type=int, default=2)
    p.add_argument("--cap-triples", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=_cmd_surfaces)

    p = sub.add_parser("structure", help="structure decomposition report")
    p.add_argument("lines")
    p.add_argument("-r", type=int, default=3)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--cap-triples", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("sumprod", help="growth sets of a scalar set")
    p.add_argument("scalars", help="semicolon-separated scalars, e.g. '0;1;2'")
    _add_common(p)
    p.set_defaults(func=_cmd_sumprod)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--points", default=None)
    p.add_argument("--lines", default=None)
    p.add_argument("--suites", default=None,
                   help=f"comma-separated subset of {','.join(ALL_SUITES)}")
    p.add_argument("--cap-quadruples", type=int, default=50)
    p.add_argument("--cap-triples", type=int, default=300)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="bound-comparison tables")
    p.add_argument("kind", choices=("grid-distances", "isotropic-distances",
                                    "rich-points", "two-rich", "structure"))
    p.add_argument("--kmin", type=int, default=3)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--sizes", default="8,16,32")
    p.add_argument("--planes", type=int, default=3)
    p.add_argument("--per-plane", dest="per_plane", type=int, default=10)
    p.add_argument("--extra", type=int, default=20)
    p.add_argument("-r", type=int, default=3)
    p.add_argument("--cap-triples", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DatasetError, GeneratorError, DuplicatePointsError,
            CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
