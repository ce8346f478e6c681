"""Elections, committees, outcomes and the cost/utility functionals on them."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .metric import EPS_METRIC, FiniteMetric

EPS_PROB = 1e-9

Prob = Union[Fraction, float]
LocationProfile = tuple[int, ...]


class ElectionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Committee:
    """A size-k committee, identified by the sorted set of eliminated candidates."""

    eliminated: tuple[int, ...]
    m: int

    def __post_init__(self):
        elim = tuple(sorted(set(int(j) for j in self.eliminated)))
        if not elim:
            raise ElectionError("a committee must eliminate at least one candidate")
        if len(elim) >= self.m:
            raise ElectionError("a committee must keep at least one candidate")
        if elim[0] < 0 or elim[-1] >= self.m:
            raise ElectionError(f"eliminated set {elim} out of range for m={self.m}")
        object.__setattr__(self, "eliminated", elim)

    @property
    def k(self) -> int:
        return self.m - len(self.eliminated)

    @property
    def winners(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.m) if j not in self.eliminated)

    def __str__(self):
        return "{" + ",".join(map(str, self.eliminated)) + "}"


def eliminate(m: int, *ys: int) -> Committee:
    """Shorthand for the committee ``M minus {ys}``."""
    return Committee(tuple(ys), m)


def all_committees(m: int, k: int | None = None) -> list[Committee]:
    """Every size-k committee, in canonical (lexicographic eliminated-set) order."""
    k = m - 1 if k is None else k
    if not 1 <= k <= m - 1:
        raise ElectionError(f"committee size k={k} must satisfy 1 <= k <= m-1 (m={m})")
    return [Committee(E, m) for E in itertools.combinations(range(m), m - k)]


@dataclass(frozen=True, eq=False)
class Election:
    metric: FiniteMetric
    candidates: tuple[int, ...]
    actions: tuple[int, ...]

    def __post_init__(self):
        cands = tuple(int(c) for c in self.candidates)
        acts = tuple(int(a) for a in self.actions)
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "actions", acts)
        if len(cands) < 2:
            raise ElectionError("an election needs at least two candidates")
        if len(set(cands)) != len(cands):
            raise ElectionError("candidate point ids must be distinct")
        if any(not 0 <= c < self.metric.size for c in cands):
            raise ElectionError("candidate point id out of range")
        if len(acts) < 1:
            raise ElectionError("an election needs at least one voter")
        if any(not 0 <= a < len(cands) for a in acts):
            raise ElectionError("action does not index a candidate")

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return len(self.actions)

    @cached_property
    def cand_dist(self) -> np.ndarray:
        """m x m distances between candidates."""
        c = list(self.candidates)
        return self.metric.dist[np.ix_(c, c)]

    @cached_property
    def point_to_cand(self) -> np.ndarray:
        """|S| x m distances from every point of the metric to every candidate."""
        return self.metric.dist[:, list(self.candidates)]

    def with_actions(self, actions: Sequence[int]) -> "Election":
        return Election(self.metric, self.candidates, tuple(actions))

    def __repr__(self):
        return f"Election(m={self.m}, n={self.n}, candidates={self.candidates}, actions={self.actions})"


@dataclass(frozen=True)
class Outcome:
    """A probability distribution over committees of a common size.

    ``flags`` carries notes a mechanism wants surfaced in reports, such as a
    limit convention having been applied.
    """

    probs: Mapping[Committee, Prob]
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        probs = {c: p for c, p in sorted(self.probs.items()) if p != 0}
        if not probs:
            raise ElectionError("outcome has no committee with positive probability")
        ks = {(c.m, c.k) for c in self.probs}
        if len(ks) != 1:
            raise ElectionError("all committees of an outcome must share m and k")
        if any(p < -EPS_PROB or p > 1 + EPS_PROB for p in probs.values()):
            raise ElectionError("probabilities must lie in [0, 1]")
        total = sum(probs.values())
        if abs(float(total) - 1.0) > EPS_PROB:
            raise ElectionError(f"probabilities sum to {float(total)}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def point_mass(cls, committee: Committee, flags: Iterable[str] = ()) -> "Outcome":
        return cls({committee: Fraction(1)}, tuple(flags))

    @property
    def m(self) -> int:
        return next(iter(self.probs)).m

    @property
    def k(self) -> int:
        return next(iter(self.probs)).k

    @property
    def is_deterministic(self) -> bool:
        return len(self.probs) == 1

    def prob(self, committee: Committee) -> Prob:
        return self.probs.get(committee, 0)

    def items(self) -> Iterator[tuple[Committee, Prob]]:
        return iter(self.probs.items())

    def support(self) -> list[Committee]:
        return list(self.probs)

    def total(self) -> Prob:
        return sum(self.probs.values())


def is_consistent(e: Election, x: Sequence[int], eps: float = EPS_METRIC) -> bool:
    """True iff every voter's action is one of her nearest candidates."""
    if len(x) != e.n:
        return False
    D = e.point_to_cand
    for xi, ai in zip(x, e.actions):
        if D[xi, ai] > D[xi].min() + eps:
            return False
    return True


def feasible_points(e: Election, candidate: int, universe: Iterable[int],
                    eps: float = EPS_METRIC) -> list[int]:
    """Points of ``universe`` at which voting for ``candidate`` is truthful."""
    D = e.point_to_cand
    return [u for u in universe if D[u, candidate] <= D[u].min() + eps]


def nearest_candidates(e: Election, point: int, eps: float = EPS_METRIC) -> list[int]:
    row = e.point_to_cand[point]
    return [int(j) for j in np.flatnonzero(row <= row.min() + eps)]


def _check_profile(e: Election, x: Sequence[int]):
    if len(x) != e.n:
        raise ElectionError(f"profile has {len(x)} voters, election has {e.n}")


def social_cost(e: Election, W: Committee, x: Sequence[int]) -> float:
    _check_profile(e, x)
    D = e.point_to_cand[np.ix_(list(x), list(W.winners))]
    return float(D.min(axis=1).sum())


def social_utility(e: Election, W: Committee, x: Sequence[int]) -> float:
    """Sum over voters of the distance to the eliminated (loser) set."""
    _check_profile(e, x)
    D = e.point_to_cand[np.ix_(list(x), list(W.eliminated))]
    return float(D.min(axis=1).sum())


def projection_distance_set(e: Election, W: Iterable[int]) -> float:
    """Social cost of ``W`` if every voter sat on the candidate she voted for."""
    W = list(W)
    if not W:
        raise ElectionError("projection distance of an empty set is undefined")
    return float(e.cand_dist[np.ix_(list(e.actions), W)].min(axis=1).sum())


def projection_distance_point(e: Election, y: int) -> float:
    if not 0 <= y < e.m:
        raise ElectionError("candidate index out of range")
    return float(e.cand_dist[list(e.actions), y].sum())


def tally(e: Election) -> dict[int, int]:
    counts = Counter(e.actions)
    return {y: counts.get(y, 0) for y in range(e.m)}


def voter_cost(e: Election, outcome: Outcome, point: int) -> float:
    row = e.point_to_cand[point]
    return sum(float(p) * float(row[list(W.winners)].min()) for W, p in outcome.items())


def voter_utility(e: Election, outcome: Outcome, point: int) -> float:
    row = e.point_to_cand[point]
    return sum(float(p) * float(row[list(W.eliminated)].min()) for W, p in outcome.items())
