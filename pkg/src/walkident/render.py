"""ASCII pictures of walks and CSV / JSON-lines reports.

A walk is drawn on a grid with one column per time (0..N) and one row per
position, higher positions on top.  Column 0 holds the start marker ``o``;
column ``i`` holds ``/`` if step ``i`` went up (``L``) and ``\\`` if it went
down (``R``), placed at the position reached.  A barrier row is filled with
``-`` and the reflected tail (mirror image in the barrier of everything
after the last visit) is drawn with the same glyphs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .exact import POLE, as_rational, format_rational, parse_rational
from .reports import CheckReport
from .walks import positions

__all__ = ["GridScene", "scene_for", "render_walk", "emit_report", "parse_report_csv", "FIELDS"]

FIELDS = ("identity", "n", "m", "r", "lhs", "rhs", "status")


@dataclass(frozen=True)
class GridScene:
    steps: int
    lo: int
    hi: int
    path: Optional[str] = None
    barrier: Optional[int] = None
    reflect: bool = False


def scene_for(path: str, barrier: Optional[int] = None, reflect: bool = False,
              margin: int = 1) -> GridScene:
    """Scene sized to fit ``path`` (and its reflection) with ``margin`` rows spare."""
    pos = positions(path)
    extra = [barrier] if barrier is not None else []
    if reflect and barrier is not None and barrier in pos:
        last = max(t for t, p in enumerate(pos) if p == barrier)
        extra += [2 * barrier - p for p in pos[last:]]
    return GridScene(len(path), min(pos + extra) - margin, max(pos + extra) + margin,
                     path, barrier, reflect)


def _glyph(prev: int, cur: int) -> str:
    return "/" if cur > prev else "\\"


def render_walk(scene: GridScene) -> str:
    N, lo, hi = scene.steps, scene.lo, scene.hi
    if N < 0 or lo > 0 or hi < 0:
        raise ValueError("the grid must contain the start (time 0, position 0)")
    cells = {}
    if scene.path is not None:
        if len(scene.path) != N:
            raise ValueError(f"path has {len(scene.path)} steps, scene has {N}")
        pos = positions(scene.path)
        if min(pos) < lo or max(pos) > hi:
            raise ValueError(f"path leaves the position range [{lo}, {hi}]")
        for t in range(1, N + 1):
            cells[t, pos[t]] = _glyph(pos[t - 1], pos[t])
        if scene.reflect:
            if scene.barrier is None or scene.barrier not in pos:
                raise ValueError("a reflected tail needs a barrier that the path visits")
            last = max(t for t, p in enumerate(pos) if p == scene.barrier)
            mirror = [2 * scene.barrier - p for p in pos]
            if any(not lo <= y <= hi for y in mirror[last:]):
                raise ValueError(f"reflected tail leaves the position range [{lo}, {hi}]")
            for t in range(last + 1, N + 1):
                cells[t, mirror[t]] = _glyph(mirror[t - 1], mirror[t])
    elif scene.reflect:
        raise ValueError("a reflected tail needs a path")
    if scene.barrier is not None and not lo <= scene.barrier <= hi:
        raise ValueError(f"barrier {scene.barrier} outside [{lo}, {hi}]")
    cells[0, 0] = "o"

    width = max(len(str(lo)), len(str(hi)))
    lines = ["position"]
    for y in range(hi, lo - 1, -1):
        fill = "-" if y == scene.barrier else " "
        row = "".join(cells.get((t, y), fill) for t in range(N + 1))
        lines.append(f"{y:>{width}} |{row}")
    pad = " " * width
    lines.append(f"{pad} +" + "-" * (N + 1))
    lines.append(f"{pad}  " + "".join(str(t % 10) for t in range(N + 1)))
    lines.append(f"{pad}  " + "step".rjust(N + 1))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return format_rational(v)


def _row(rep: CheckReport) -> dict:
    return {
        "identity": rep.label,
        "n": rep.n,
        "m": _cell(rep.m),
        "r": _cell(rep.r),
        "lhs": _cell(rep.lhs),
        "rhs": _cell(rep.rhs),
        "status": rep.status,
    }


def emit_report(reports: Iterable[CheckReport], fmt: str = "csv", header: bool = True) -> str:
    """Serialize reports in input order.

    ``csv``: columns ``identity,n,m,r,lhs,rhs,status``; ``jsonl``: one object
    per line with the same keys (``m``/``r`` null when not free).  Rationals
    are ``"p"`` or ``"p/q"`` strings.
    """
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        if header:
            w.writeheader()
        for rep in reports:
            w.writerow(_row(rep))
        return buf.getvalue()
    if fmt in ("jsonl", "json-lines"):
        out = []
        for rep in reports:
            row = _row(rep)
            row["m"] = row["m"] or None
            row["r"] = row["r"] or None
            out.append(json.dumps(row, separators=(",", ":")) + "\n")
        return "".join(out)
    raise ValueError(f"unknown report format {fmt!r}")


def _value(text: str):
    if text == "":
        return None
    if text == "pole":
        return POLE
    return as_rational(parse_rational(text))


def parse_report_csv(text: str) -> list:
    """Inverse of :func:`emit_report` for CSV with a header row."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(CheckReport(
            row["identity"], int(row["n"]),
            _value(row["m"]), _value(row["r"]),
            _value(row["lhs"]), _value(row["rhs"]), row["status"],
        ))
    return out
