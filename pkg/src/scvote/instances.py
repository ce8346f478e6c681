"""Worst-case instance constructions and seeded random elections."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .election import Election, nearest_candidates
from .metric import FiniteMetric, line_metric

METRIC_KINDS = ("line", "simplex", "random_metric")


@dataclass(frozen=True)
class InstanceBundle:
    election: Election
    universe: tuple[int, ...]
    notes: str = ""
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)


def gen_line_lower_bound(m: int, L: float | None = None) -> InstanceBundle:
    """Candidates at 0, 2, L, 2L, ..., (m-2)L on a line, one vote each.

    A voter slot at 1 is added.  Whichever of the two near candidates a
    deterministic mechanism keeps, one witness pushes the cost ratio to 3.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    L = 100.0 * m if L is None else float(L)
    if L <= 4:
        raise ValueError("L must exceed 4")
    far = [j * L for j in range(1, m - 1)]
    coords = [0.0, 1.0, 2.0] + far
    metric = line_metric(coords)
    candidates = (0, 2) + tuple(range(3, 3 + len(far)))
    e = Election(metric, candidates, tuple(range(m)))
    tail = tuple(range(3, 3 + len(far)))
    witnesses = {
        "keeps_y1": (1, 2) + tail,   # bad when y1 stays: SC = 3, OPT = 1
        "keeps_y2": (0, 1) + tail,   # bad when y2 stays
    }
    return InstanceBundle(e, tuple(range(metric.size)),
                          f"line lower bound for deterministic cost, m={m}, L={L:g}",
                          witnesses)


def gen_simplex_lower_bound(m: int) -> InstanceBundle:
    """m candidates pairwise at distance 2 plus one point at distance 1 from all."""
    if m < 2:
        raise ValueError("need m >= 2")
    d = np.full((m + 1, m + 1), 2.0)
    d[m, :] = d[:, m] = 1.0
    np.fill_diagonal(d, 0.0)
    labels = tuple(f"y{j + 1}" for j in range(m)) + ("x_center",)
    metric = FiniteMetric(labels, d)
    e = Election(metric, tuple(range(m)), tuple(range(m)))
    return InstanceBundle(e, tuple(range(m + 1)),
                          f"simplex lower bound for randomized cost, m={m}",
                          {"last_voter_centered": tuple(range(m - 1)) + (m,)})


def gen_utility_lower_bound(m: int) -> InstanceBundle:
    """Two voters on candidates at 0 and 2 of a line, with a slot at 1.

    Candidates y3..ym sit at 2 next to y2 and receive no votes, so they are
    interchangeable with y2.  Keeping the candidate at 0 loses against
    witness (1, 2); keeping those at 2 loses against (0, 1).  Either way a
    deterministic choice has utility ratio 3, and no distribution beats 3/2.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    coords = [0.0, 1.0] + [2.0] * (m - 1)
    labels = ["y1@0", "slot@1", "y2@2"] + [f"y{j}@2" for j in range(3, m + 1)]
    metric = line_metric(coords, labels)
    candidates = (0,) + tuple(range(2, m + 1))
    e = Election(metric, candidates, (0, 1))
    witnesses = {
        "eliminates_near_2": (1, 2),  # SU(elim y1) = 3, SU(elim y2) = 1
        "eliminates_near_0": (0, 1),  # SU(elim y2) = 3, SU(elim y1) = 1
    }
    return InstanceBundle(e, tuple(range(metric.size)),
                          f"utility lower bound, m={m}", witnesses)


def _repair(d: np.ndarray) -> np.ndarray:
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return shortest_path(d, method="FW", directed=False)


def gen_random_election(seed: int, m: int, n: int, universe_size: int,
                        metric_kind: str = "line") -> InstanceBundle:
    """A reproducible election whose votes come from an actual location profile.

    ``line`` draws distinct integer coordinates; ``simplex`` fixes the first m
    points as candidates pairwise at distance 2 and draws the rest at
    distance 1 to 3 from them; ``random_metric`` draws integer weights and
    completes them to a metric with shortest paths.
    """
    if metric_kind not in METRIC_KINDS:
        raise ValueError(f"metric_kind must be one of {METRIC_KINDS}")
    if m < 2 or n < 1 or universe_size < m:
        raise ValueError("need m >= 2, n >= 1 and universe_size >= m")
    rng = np.random.default_rng(seed)
    U = universe_size
    if metric_kind == "line":
        coords = np.sort(rng.choice(4 * U + 1, size=U, replace=False)).astype(float)
        metric = line_metric(coords)
        candidates = tuple(sorted(int(c) for c in rng.choice(U, size=m, replace=False)))
    elif metric_kind == "simplex":
        halves = np.arange(2, 7) / 2          # 1.0 .. 3.0
        d = rng.choice(np.arange(1, 9) / 2, size=(U, U))
        d[:m, :m] = 2.0
        d[m:, :m] = rng.choice(halves, size=(U - m, m))
        d[:m, m:] = d[m:, :m].T
        metric = FiniteMetric(tuple(f"y{j + 1}" for j in range(m)) +
                              tuple(f"p{j}" for j in range(U - m)), _repair(d))
        candidates = tuple(range(m))
    else:
        d = rng.integers(1, 11, size=(U, U)).astype(float)
        metric = FiniteMetric(tuple(f"p{j}" for j in range(U)), _repair(d))
        candidates = tuple(sorted(int(c) for c in rng.choice(U, size=m, replace=False)))

    probe = Election(metric, candidates, (0,))
    locations = rng.integers(U, size=n)
    actions = tuple(int(rng.choice(nearest_candidates(probe, int(p)))) for p in locations)
    e = Election(metric, candidates, actions)
    return InstanceBundle(e, tuple(range(U)),
                          f"random {metric_kind} election, seed={seed}",
                          {"generating_profile": tuple(int(p) for p in locations)})


def line_grid_election(candidate_steps, action_candidates, L: float = 8.0, steps: int = 8) -> Election:
    """A line election on the grid ``{0, L/steps, ..., L}``.

    ``candidate_steps`` are grid indices of the candidates (in order);
    every grid point is a potential voter location.
    """
    coords = [L * i / steps for i in range(steps + 1)]
    metric = line_metric(coords)
    return Election(metric, tuple(candidate_steps), tuple(action_candidates))

