"""Dataset file formats and deterministic writers.

Scalars serialize as "num/den" strings (denominator omitted when 1);
Gaussian rationals as {"re": ..., "im": ...}.  Point-set files are JSON
arrays of {"x": scalar, "y": scalar}; line-set files are JSON arrays of
{"base": [3 scalars], "dir": [3 scalars]} and are canonicalized on load.
Real polynomials serialize as term lists {"exponents": [...], "coeff": "num/den"}.

All writers emit canonical bytes (sorted keys, fixed separators, trailing
newline) so identical data yields identical files.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .algebra import (GaussianRational, MultiPoly, rational_from_str,
                      rational_to_str)
from .cplane import DistanceStatistics, PointC2
from .lines3 import LineC3, Vec3, canonical_line


class DatasetError(ValueError):
    """A dataset file failed to parse or violated its schema."""


def gr_to_json(z: GaussianRational) -> dict:
    return {"re": rational_to_str(z.re), "im": rational_to_str(z.im)}


def gr_from_json(obj) -> GaussianRational:
    try:
        if isinstance(obj, str):
            return GaussianRational(rational_from_str(obj))
        return GaussianRational(rational_from_str(obj["re"]),
                                rational_from_str(obj["im"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DatasetError(f"bad scalar {obj!r}: {exc}") from exc


def vec3_to_json(v: Vec3) -> list:
    return [gr_to_json(x) for x in v]


def vec3_from_json(obj) -> Vec3:
    if not isinstance(obj, list) or len(obj) != 3:
        raise DatasetError(f"expected a 3-vector, got {obj!r}")
    a, b, c = (gr_from_json(x) for x in obj)
    return (a, b, c)


def points_to_json(points: Sequence[PointC2]) -> list:
    return [{"x": gr_to_json(p.x), "y": gr_to_json(p.y)} for p in points]


def points_from_json(data) -> list[PointC2]:
    if not isinstance(data, list):
        raise DatasetError("point-set file must be a JSON array")
    out = []
    for item in data:
        try:
            out.append(PointC2(gr_from_json(item["x"]), gr_from_json(item["y"])))
        except (KeyError, TypeError) as exc:
            raise DatasetError(f"bad point {item!r}") from exc
    return out


def lines_to_json(lines: Sequence[LineC3]) -> list:
    return [{"base": vec3_to_json(l.base), "dir": vec3_to_json(l.direction)}
            for l in lines]


def lines_from_json(data) -> list[LineC3]:
    if not isinstance(data, list):
        raise DatasetError("line-set file must be a JSON array")
    out = []
    for item in data:
        try:
            base = vec3_from_json(item["base"])
            direction = vec3_from_json(item["dir"])
        except (KeyError, TypeError) as exc:
            raise DatasetError(f"bad line {item!r}") from exc
        try:
            out.append(canonical_line(base, direction))
        except ValueError as exc:
            raise DatasetError(f"bad line {item!r}: {exc}") from exc
    return out


def real_poly_to_json(f: MultiPoly) -> list:
    out = []
    for e, c in f.terms:
        if not c.is_real():
            raise ValueError("only real polynomials have this serialization")
        out.append({"exponents": list(e), "coeff": rational_to_str(c.re)})
    return out


def real_poly_from_json(data, nvars: int = 6) -> MultiPoly:
    if not isinstance(data, list):
        raise DatasetError("polynomial file must be a JSON array of terms")
    terms = []
    for item in data:
        try:
            exps = tuple(int(x) for x in item["exponents"])
            coeff = GaussianRational(rational_from_str(item["coeff"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DatasetError(f"bad term {item!r}") from exc
        terms.append((exps, coeff))
    try:
        return MultiPoly(nvars, terms)
    except ValueError as exc:
        raise DatasetError(str(exc)) from exc


def statistics_to_json(stats: DistanceStatistics) -> dict:
    hist = sorted(stats.histogram.items(), key=lambda kv: kv[0].sort_key())
    return {
        "pointCount": stats.point_count,
        "distinctDistances": [gr_to_json(d) for d in
                              sorted(stats.distinct_distances,
                                     key=GaussianRational.sort_key)],
        "distinctCount": stats.distinct_count,
        "histogram": [{"distance": gr_to_json(d), "orderedPairs": c}
                      for d, c in hist],
        "quadrupleCount": stats.quadruple_count,
        "zeroPairs": stats.zero_pairs,
    }


def statistics_to_csv_rows(stats: DistanceStatistics) -> tuple[list[str], list[list[str]]]:
    header = ["distance_re", "distance_im", "ordered_pairs"]
    rows = []
    for d, c in sorted(stats.histogram.items(), key=lambda kv: kv[0].sort_key()):
        rows.append([rational_to_str(d.re), rational_to_str(d.im), str(c)])
    return header, rows


def dump_json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def dump_csv_bytes(header: list[str], rows: Sequence[Sequence[str]]) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def load_json_file(path: str):
    try:
        with open(path, "rb") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path} is not valid JSON: {exc}") from exc


def write_bytes(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)
