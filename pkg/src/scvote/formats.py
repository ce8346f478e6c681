"""Plain-text metric and election files.

Metric file::

    points 3
    a
    b
    c
    0 1 2
    1 0 1
    2 1 0
    coords 0 1 2        # optional: line coordinates of every point

Election file::

    metric path/to/file.metric    # relative to the election file
    candidates 0 2
    actions 0 1 1

Blank lines and ``#`` comments are ignored; numbers may be written as
fractions (``1/2``).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .election import Election, Outcome, Prob
from .metric import FiniteMetric, MetricError


class FormatError(ValueError):
    pass


def _num(tok: str) -> float:
    try:
        return float(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a number: {tok!r}") from None


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_metric(text: str) -> FiniteMetric:
    lines = _lines(text)
    if not lines or not lines[0].startswith("points"):
        raise FormatError("metric file must start with 'points <n>'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError("malformed 'points' line") from None
    if len(lines) < 1 + 2 * n:
        raise FormatError(f"expected {n} labels and {n} matrix rows")
    labels = lines[1:1 + n]
    rows = [[_num(t) for t in line.split()] for line in lines[1 + n:1 + 2 * n]]
    if any(len(r) != n for r in rows):
        raise MetricError(f"distance matrix is not {n}x{n}")
    coords = None
    for line in lines[1 + 2 * n:]:
        key, *rest = line.split()
        if key == "coords":
            coords = [_num(t) for t in rest]
        else:
            raise FormatError(f"unexpected line in metric file: {line!r}")
    return FiniteMetric(tuple(labels), np.array(rows, dtype=float),
                        tuple(coords) if coords is not None else None)


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def dump_metric(metric: FiniteMetric) -> str:
    out = [f"points {metric.size}", *metric.labels]
    out += [" ".join(_fmt(v) for v in row) for row in metric.dist]
    if metric.coords is not None:
        out.append("coords " + " ".join(_fmt(c) for c in metric.coords))
    return "\n".join(out) + "\n"


def read_metric(path) -> FiniteMetric:
    return parse_metric(Path(path).read_text())


def write_metric(metric: FiniteMetric, path):
    Path(path).write_text(dump_metric(metric))


def read_election(path) -> Election:
    path = Path(path)
    fields = {}
    for line in _lines(path.read_text()):
        key, _, rest = line.partition(" ")
        fields[key] = rest.strip()
    missing = {"metric", "candidates", "actions"} - fields.keys()
    if missing:
        raise FormatError(f"election file lacks {sorted(missing)}")
    mpath = Path(fields["metric"])
    if not mpath.is_absolute():
        mpath = path.parent / mpath
    metric = read_metric(mpath)
    try:
        candidates = tuple(int(t) for t in fields["candidates"].split())
        actions = tuple(int(t) for t in fields["actions"].split())
    except ValueError:
        raise FormatError("candidates and actions must be integers") from None
    return Election(metric, candidates, actions)


def write_election(e: Election, path, metric_path=None) -> tuple[Path, Path]:
    """Write the election and its metric; the metric goes next to it by default."""
    path = Path(path)
    metric_path = path.with_suffix(".metric") if metric_path is None else Path(metric_path)
    write_metric(e.metric, metric_path)
    try:
        ref = metric_path.relative_to(path.parent)
    except ValueError:
        ref = metric_path.resolve()
    path.write_text(f"metric {ref}\n"
                    f"candidates {' '.join(map(str, e.candidates))}\n"
                    f"actions {' '.join(map(str, e.actions))}\n")
    return path, metric_path


def format_prob(p: Prob) -> str:
    if isinstance(p, Fraction):
        return str(p)
    return f"{float(p):.12f}"


def format_outcome(o: Outcome) -> str:
    lines = [f"{W} {format_prob(p)}" for W, p in o.items()]
    lines += [f"# {flag}" for flag in o.flags]
    return "\n".join(lines)
