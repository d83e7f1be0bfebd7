"""Channel/conditional file formats and frontier CSV emission.

Channel files are JSON documents::

    {
      "card_s": 2, "card_x": 2, "card_y1": 2, "card_y2": 2,
      "state_pmf": [0.5, 0.5],
      "kernel": [
        {"x": 0, "s": 0, "p": [[1.0, 0.0], [0.0, 0.0]]},
        ...                                  # one entry per (x, s) pair
      ],
      "cost": [0.0, 1.0],
      "cost_budget": 1.0
    }

``p[y1][y2]`` is P(y1, y2 | x, s).  ``cost`` and ``cost_budget`` are
optional (defaults: zero cost, unlimited budget).

Auxiliary conditional files hold ``{"cond": [...]}`` nested as
``cond[s][w][u][v][x]`` = P(w, u, v, x | s).
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import IO, Union

import numpy as np

from .discrete.frontier import RateQuintuple, RegionFrontier, make_frontier
from .probcore import ChannelSpec, ValidationError

FRONTIER_HEADER = ("r0", "r1", "r2", "e1", "e2", "provenance_id")
GAUSSIAN_HEADER = ("gamma", "rho1", "rho2", "r1", "r2", "e1", "e2")

PathLike = Union[str, Path]


class ParseError(ValidationError):
    pass


def fmt(x: float) -> str:
    """12 significant digits, with signed zero normalized."""
    x = float(x)
    if x == 0:
        x = 0.0
    return f"{x:.12g}"


def _read_text(path: PathLike) -> tuple[str, str]:
    if str(path) == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as fh:
        return fh.read(), str(path)


def _load_json(text: str, origin: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _require(doc: dict, key: str, origin: str):
    if key not in doc:
        raise ParseError(f"{origin}: missing field {key!r}")
    return doc[key]


def channel_from_dict(doc: dict, origin: str = "<channel>") -> ChannelSpec:
    if not isinstance(doc, dict):
        raise ParseError(f"{origin}: top level must be an object")
    cs, cx, c1, c2 = (int(_require(doc, k, origin)) for k in ("card_s", "card_x", "card_y1", "card_y2"))
    if min(cs, cx, c1, c2) < 1:
        raise ValidationError(f"{origin}: cardinalities must be positive")
    ps = np.asarray(_require(doc, "state_pmf", origin), dtype=float)
    if ps.shape != (cs,):
        raise ValidationError(f"{origin}: state_pmf has length {ps.size}, expected {cs}")
    kernel = np.full((cx, cs, c1, c2), np.nan)
    for n, row in enumerate(_require(doc, "kernel", origin)):
        try:
            x, s, p = int(row["x"]), int(row["s"]), np.asarray(row["p"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{origin}: kernel entry {n} is malformed ({exc})") from None
        if not (0 <= x < cx and 0 <= s < cs):
            raise ValidationError(f"{origin}: kernel entry {n} has (x={x}, s={s}) out of range")
        if p.shape != (c1, c2):
            raise ValidationError(
                f"{origin}: kernel row (x={x}, s={s}) has shape {p.shape}, expected ({c1}, {c2})")
        if not np.all(np.isnan(kernel[x, s])):
            raise ValidationError(f"{origin}: kernel row (x={x}, s={s}) given twice")
        kernel[x, s] = p
    missing = [(x, s) for x in range(cx) for s in range(cs) if np.any(np.isnan(kernel[x, s]))]
    if missing:
        raise ValidationError(f"{origin}: kernel rows missing for (x, s) in {missing}")
    cost = np.asarray(doc.get("cost", [0.0] * cx), dtype=float)
    budget = float(doc.get("cost_budget", math.inf))
    try:
        return ChannelSpec(ps, kernel, cost, budget)
    except ValidationError as exc:
        raise ValidationError(f"{origin}: {exc}") from None


def parse_channel_file(path: PathLike) -> ChannelSpec:
    """Read and validate a channel file (``-`` reads stdin)."""
    text, origin = _read_text(path)
    return channel_from_dict(_load_json(text, origin), origin)


def channel_to_dict(ch: ChannelSpec) -> dict:
    doc = {
        "card_s": ch.card_s, "card_x": ch.card_x,
        "card_y1": ch.card_y1, "card_y2": ch.card_y2,
        "state_pmf": ch.state_pmf.tolist(),
        "kernel": [{"x": x, "s": s, "p": ch.kernel[x, s].tolist()}
                   for x in range(ch.card_x) for s in range(ch.card_s)],
        "cost": ch.cost.tolist(),
    }
    if math.isfinite(ch.cost_budget):
        doc["cost_budget"] = ch.cost_budget
    return doc


def write_channel_file(ch: ChannelSpec, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(channel_to_dict(ch), fh, indent=2)
        fh.write("\n")


def parse_conditional_file(path: PathLike) -> np.ndarray:
    text, origin = _read_text(path)
    doc = _load_json(text, origin)
    cond = _require(doc, "cond", origin) if isinstance(doc, dict) else doc
    try:
        arr = np.asarray(cond, dtype=float)
    except ValueError:
        raise ParseError(f"{origin}: 'cond' is not a rectangular numeric array") from None
    if arr.ndim != 5:
        raise ValidationError(f"{origin}: 'cond' must be nested as [s][w][u][v][x]")
    return arr


def write_conditional_file(cond, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"cond": np.asarray(cond).tolist()}, fh)
        fh.write("\n")


def _frontier_rows(frontier: RegionFrontier):
    rows = [([fmt(v) for v in p], i) for i, p in enumerate(frontier.points)]
    rows.sort(key=lambda r: tuple(float(v) for v in r[0]))
    return rows


def frontier_csv_text(frontier: RegionFrontier) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FRONTIER_HEADER)
    for vals, pid in _frontier_rows(frontier):
        w.writerow(vals + [str(pid)])
    return buf.getvalue()


def emit_frontier_csv(frontier: RegionFrontier, path: Union[PathLike, IO]) -> None:
    """Write ``r0,r1,r2,e1,e2,provenance_id`` rows, sorted lexicographically.

    ``provenance_id`` indexes ``frontier.provenance``.
    """
    text = frontier_csv_text(frontier)
    if hasattr(path, "write"):
        path.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_frontier_csv(path: PathLike) -> RegionFrontier:
    text, origin = _read_text(path)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header[:5]) != FRONTIER_HEADER[:5]:
        raise ParseError(f"{origin}:1: expected header {','.join(FRONTIER_HEADER)}")
    pts = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            pts.append(RateQuintuple(*(float(v) for v in row[:5])))
        except (TypeError, ValueError):
            raise ParseError(f"{origin}:{lineno}: malformed row {row!r}") from None
    return RegionFrontier(points=pts, provenance=[None] * len(pts))


def write_provenance(frontier: RegionFrontier, path: PathLike) -> None:
    doc = [{"provenance_id": i, "cond": None if c is None else np.asarray(c).tolist()}
           for i, c in enumerate(frontier.provenance)]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def gaussian_csv_text(params: np.ndarray, values: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GAUSSIAN_HEADER)
    for prm, val in zip(params, values):
        w.writerow([fmt(v) for v in (*prm, *val)])
    return buf.getvalue()


def gnuplot_text(columns: tuple, rows) -> str:
    """Whitespace-separated columns with a commented header line."""
    lines = ["# " + " ".join(columns)]
    lines += [" ".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def refilter(frontier: RegionFrontier) -> RegionFrontier:
    """Re-apply Pareto filtering (used to check CSV idempotence)."""
    return make_frontier(frontier.as_array(), frontier.provenance)
