"""Finite metric spaces: construction, validation and distance queries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

EPS_METRIC = 1e-9


class MetricError(ValueError):
    """Raised for structurally malformed metrics or bad queries."""


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A finite point set with a pairwise distance matrix.

    ``coords`` is set for metrics built from points on the real line and is
    carried along so line mechanisms can read candidate coordinates.
    """

    labels: tuple[str, ...]
    dist: np.ndarray
    coords: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        d = np.array(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise MetricError(f"distance matrix must be square, got shape {d.shape}")
        if len(self.labels) != d.shape[0]:
            raise MetricError(
                f"{len(self.labels)} labels for a {d.shape[0]}-point matrix")
        if self.coords is not None and len(self.coords) != d.shape[0]:
            raise MetricError("coords length does not match number of points")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if self.coords is not None:
            object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    def __len__(self) -> int:
        return self.dist.shape[0]

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def d(self, p: int, q: int) -> float:
        return float(self.dist[p, q])

    @property
    def is_integral(self) -> bool:
        """True when every distance is an integer (enables exact arithmetic)."""
        return bool(np.all(self.dist == np.round(self.dist)))

    def __repr__(self):
        return f"FiniteMetric(points={self.size}, labels={self.labels!r})"


@dataclass
class ValidationResult:
    triangle: list[tuple[int, int, int]] = field(default_factory=list)
    asymmetric: list[tuple[int, int]] = field(default_factory=list)
    nonzero_diagonal: list[int] = field(default_factory=list)
    negative: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.triangle or self.asymmetric
                    or self.nonzero_diagonal or self.negative)

    def __bool__(self):
        return self.ok


def validate(metric: FiniteMetric | np.ndarray, eps: float = EPS_METRIC) -> ValidationResult:
    """Check the metric axioms exhaustively.

    Triangle violations are reported as ``(p, q, r)`` with
    ``d(p, q) > d(p, r) + d(r, q) + eps``.
    """
    d = metric.dist if isinstance(metric, FiniteMetric) else np.asarray(metric, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricError(f"distance matrix must be square, got shape {d.shape}")
    res = ValidationResult()
    res.negative = [(int(p), int(q)) for p, q in np.argwhere(d < -eps)]
    res.nonzero_diagonal = [int(p) for p in np.flatnonzero(np.abs(np.diag(d)) > eps)]
    res.asymmetric = [(int(p), int(q)) for p, q in np.argwhere(np.abs(d - d.T) > eps)]
    # via[p, r, q] = d(p, r) + d(r, q)
    via = d[:, :, None] + d[None, :, :]
    bad = d[:, None, :] > via + eps
    res.triangle = sorted((int(p), int(q), int(r)) for p, r, q in np.argwhere(bad))
    return res


def line_metric(positions: Sequence[float], labels: Sequence[str] | None = None) -> FiniteMetric:
    pos = np.asarray(list(positions), dtype=float)
    if labels is None:
        labels = [_fmt_num(p) for p in pos]
    return FiniteMetric(tuple(labels), np.abs(pos[:, None] - pos[None, :]), tuple(pos))


def simplex_metric(m: int, side: float = 2.0) -> FiniteMetric:
    if m < 1:
        raise MetricError("simplex needs at least one point")
    if side <= 0:
        raise MetricError("simplex side must be positive")
    d = np.full((m, m), float(side))
    np.fill_diagonal(d, 0.0)
    return FiniteMetric(tuple(f"y{j + 1}" for j in range(m)), d)


def distance_to_set(metric: FiniteMetric, p: int, V: Iterable[int]) -> float:
    """``d(p, V) = min over v in V of d(p, v)``."""
    V = list(V)
    if not V:
        raise MetricError("distance to an empty set is undefined")
    n = metric.size
    if not 0 <= p < n or any(not 0 <= v < n for v in V):
        raise MetricError("point id out of range")
    return float(metric.dist[p, V].min())


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))
