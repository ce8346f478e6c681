"""Expected objectives, optimal benchmarks, and worst-case distortion search.

The oracle enumerates every location profile over a finite universe that is
consistent with the election.  Voters who cast the same vote have the same
feasible locations and enter both objectives symmetrically, so profiles are
enumerated up to permutation inside each vote group: one sorted multiset of
locations per group.  The maximum ratio is unaffected.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .election import (Committee, Election, ElectionError, Outcome,
                       all_committees, feasible_points, social_cost,
                       social_utility, tally)
from .mechanisms import Mechanism, get_mechanism, mechanism_name
from .metric import EPS_METRIC

DEFAULT_BUDGET = 10**7
OBJECTIVES = ("cost", "utility")


class DistortionError(RuntimeError):
    pass


class EmptyConsistentSet(DistortionError):
    """No location profile over the universe is consistent with the votes."""


class BudgetExceeded(DistortionError):
    pass


def _check_objective(objective: str):
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")


# ---------------------------------------------------------------- objectives

def expected_cost(e: Election, o: Outcome, x: Sequence[int]) -> float:
    return sum(float(p) * social_cost(e, W, x) for W, p in o.items())


def expected_utility(e: Election, o: Outcome, x: Sequence[int]) -> float:
    return sum(float(p) * social_utility(e, W, x) for W, p in o.items())


def opt_cost(e: Election, x: Sequence[int], k: int | None = None) -> tuple[float, Committee]:
    best = None
    for W in all_committees(e.m, k):
        v = social_cost(e, W, x)
        if best is None or v < best[0] - EPS_METRIC:
            best = (v, W)
    return best


def opt_utility(e: Election, x: Sequence[int], k: int | None = None) -> tuple[float, Committee]:
    best = None
    for W in all_committees(e.m, k):
        v = social_utility(e, W, x)
        if best is None or v > best[0] + EPS_METRIC:
            best = (v, W)
    return best


def ratio(num: float, den: float) -> float:
    """Distortion ratio with the zero conventions: 0/0 is 1, positive/0 is inf."""
    if den > EPS_METRIC:
        return num / den
    return math.inf if num > EPS_METRIC else 1.0


def profile_ratio(e: Election, o: Outcome, x: Sequence[int], objective: str) -> float:
    """Ratio of one profile, computed from scratch (used to replay witnesses)."""
    _check_objective(objective)
    if objective == "cost":
        return ratio(expected_cost(e, o, x), opt_cost(e, x, o.k)[0])
    return ratio(opt_utility(e, x, o.k)[0], expected_utility(e, o, x))


# ---------------------------------------------------------------- enumeration

def _point_values(e: Election, committees: list[Committee], objective: str) -> np.ndarray:
    """values[c, u]: cost or utility of committee c for a voter at point u."""
    P = e.point_to_cand
    sets = [W.winners if objective == "cost" else W.eliminated for W in committees]
    return np.stack([P[:, list(S)].min(axis=1) for S in sets])


@dataclass
class _Group:
    action: int
    voters: list[int]
    points: np.ndarray          # feasible points
    combos: np.ndarray          # (c, size) indices into points, sorted multisets
    values: np.ndarray          # (K, c) summed objective per multiset


def _groups(e: Election, universe: Sequence[int]) -> list[_Group]:
    by_action: dict[int, list[int]] = {}
    for i, a in enumerate(e.actions):
        by_action.setdefault(a, []).append(i)
    groups = []
    for a, voters in sorted(by_action.items()):
        pts = np.array(feasible_points(e, a, universe), dtype=int)
        if pts.size == 0:
            raise EmptyConsistentSet(
                f"no point of the universe is consistent with a vote for candidate {a}")
        groups.append(_Group(a, voters, pts, None, None))
    return groups


def _fill_groups(groups: list[_Group], vals: np.ndarray):
    for g in groups:
        combos = np.array(list(itertools.combinations_with_replacement(
            range(len(g.points)), len(g.voters))), dtype=int)
        g.combos = combos
        g.values = vals[:, g.points[combos]].sum(axis=2)


def _count_profiles(e: Election, universe: Sequence[int]) -> int:
    total = 1
    by_action: dict[int, int] = {}
    for a in e.actions:
        by_action[a] = by_action.get(a, 0) + 1
    for a, s in by_action.items():
        f = len(feasible_points(e, a, universe))
        if f == 0:
            raise EmptyConsistentSet(
                f"no point of the universe is consistent with a vote for candidate {a}")
        total *= math.comb(f + s - 1, s)
    return total


def count_profiles(e: Election, universe: Iterable[int] | None = None) -> int:
    """Number of consistent profiles, up to reordering voters with equal votes."""
    universe = list(range(e.metric.size)) if universe is None else list(universe)
    return _count_profiles(e, universe)


def _blocks(groups: list[_Group], chunk: int):
    """Yield (prefix choice, tail shape, block) covering every profile once.

    ``block[:, t]`` is the summed value of the prefix choice combined with
    tail combination ``t``; ``tail shape`` decodes ``t`` per tail group.
    """
    j = len(groups) - 1
    size = groups[j].values.shape[1]
    while j > 0 and size * groups[j - 1].values.shape[1] <= chunk:
        j -= 1
        size *= groups[j].values.shape[1]
    tail = groups[j].values
    for g in groups[j + 1:]:
        tail = (tail[:, :, None] + g.values[:, None, :]).reshape(tail.shape[0], -1)
    shape = tuple(g.values.shape[1] for g in groups[j:])
    prefix = groups[:j]
    for choice in itertools.product(*(range(g.values.shape[1]) for g in prefix)):
        if prefix:
            base = sum(g.values[:, c] for g, c in zip(prefix, choice))
            yield choice, shape, tail + base[:, None]
        else:
            yield choice, shape, tail


def _decode(e: Election, groups: list[_Group], choice: tuple, shape: tuple, col: int) -> tuple[int, ...]:
    tail_choice = np.unravel_index(col, shape) if shape else ()
    picks = tuple(choice) + tuple(int(t) for t in tail_choice)
    x = [0] * e.n
    for g, c in zip(groups, picks):
        for voter, idx in zip(g.voters, g.combos[c]):
            x[voter] = int(g.points[idx])
    return tuple(x)


def _ratios(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    safe = np.where(den > EPS_METRIC, den, 1.0)
    return np.where(den > EPS_METRIC, num / safe,
                    np.where(num > EPS_METRIC, np.inf, 1.0))


# ---------------------------------------------------------------- reports

@dataclass
class DistortionReport:
    mechanism: str
    objective: str
    k: int
    worst_ratio: float
    witness: tuple[int, ...]
    analytic_bound: float | None
    profiles_searched: int
    outcome: Outcome
    flags: tuple[str, ...] = field(default=())
    election: Election | None = None

    label = "distortion over the given universe"

    @property
    def within_bound(self) -> bool | None:
        if self.analytic_bound is None:
            return None
        return self.worst_ratio <= self.analytic_bound + 1e-6


def _resolve_outcome(mech, e: Election, k: int | None) -> tuple[str, Outcome]:
    if isinstance(mech, Outcome):
        return "fixed_outcome", mech
    name = mechanism_name(mech)
    return name, get_mechanism(mech)(e, k)


def worst_case_distortion(e: Election, mech: str | Mechanism | Outcome, objective: str,
                          universe: Iterable[int] | None = None, k: int | None = None,
                          budget: int = DEFAULT_BUDGET, chunk: int = 1 << 16) -> DistortionReport:
    """Exact maximum ratio over all consistent profiles on ``universe``.

    ``mech`` may be a registered mechanism name, any callable
    ``(election, k) -> Outcome``, or a fixed :class:`Outcome`.
    """
    _check_objective(objective)
    universe = list(range(e.metric.size)) if universe is None else sorted(set(universe))
    name, outcome = _resolve_outcome(mech, e, k)
    k = outcome.k
    total = _count_profiles(e, universe)
    if total > budget:
        raise BudgetExceeded(f"{total} consistent profiles exceed the budget of {budget}")

    committees = all_committees(e.m, k)
    vals = _point_values(e, committees, objective)
    groups = _groups(e, universe)
    _fill_groups(groups, vals)
    probs = np.array([float(outcome.prob(W)) for W in committees])

    best = (-1.0, None)
    for choice, shape, block in _blocks(groups, chunk):
        mech_val = probs @ block
        bench = block.min(axis=0) if objective == "cost" else block.max(axis=0)
        r = _ratios(mech_val, bench) if objective == "cost" else _ratios(bench, mech_val)
        col = int(np.argmax(r))
        if r[col] > best[0]:
            best = (float(r[col]), (choice, shape, col))
    worst, (choice, shape, col) = best
    witness = _decode(e, groups, choice, shape, col)
    return DistortionReport(
        mechanism=name, objective=objective, k=k, worst_ratio=worst, witness=witness,
        analytic_bound=analytic_bound(name, e, objective, k),
        profiles_searched=total, outcome=outcome, flags=outcome.flags, election=e)


def profile_table(e: Election, objective: str, universe: Iterable[int] | None = None,
                  k: int | None = None, budget: int = 10**6):
    """All canonical consistent profiles with every committee's objective value.

    Returns ``(committees, values, profiles)`` where ``values[c, p]`` is the
    objective of committee ``c`` on profile ``profiles[p]``.
    """
    _check_objective(objective)
    universe = list(range(e.metric.size)) if universe is None else sorted(set(universe))
    total = _count_profiles(e, universe)
    if total > budget:
        raise BudgetExceeded(f"{total} consistent profiles exceed the budget of {budget}")
    committees = all_committees(e.m, k)
    vals = _point_values(e, committees, objective)
    groups = _groups(e, universe)
    _fill_groups(groups, vals)
    blocks, profiles = [], []
    for choice, shape, block in _blocks(groups, chunk=total):
        blocks.append(block)
        profiles.extend(_decode(e, groups, choice, shape, c) for c in range(block.shape[1]))
    return committees, np.concatenate(blocks, axis=1), profiles


def best_achievable_ratio(e: Election, objective: str, universe: Iterable[int] | None = None,
                          k: int | None = None, deterministic: bool = False):
    """Smallest worst-case ratio any mechanism can reach on this one election.

    Any mechanism's behavior on a fixed vote profile is a single outcome, so
    this is a lower bound on the distortion of every (deterministic or
    randomized) mechanism.  Returns ``(ratio, outcome)``.
    """
    from scipy.optimize import linprog

    committees, S, _ = profile_table(e, objective, universe, k)
    K = len(committees)
    bench = S.min(axis=0) if objective == "cost" else S.max(axis=0)
    if deterministic:
        best = None
        for c in range(K):
            r = _ratios(S[c], bench) if objective == "cost" else _ratios(bench, S[c])
            worst = float(r.max())
            if best is None or worst < best[0] - EPS_METRIC:
                best = (worst, Outcome.point_mass(committees[c]))
        return best
    # variables: p_0..p_{K-1}, t
    A_eq = np.append(np.ones(K), 0.0)[None, :]
    bounds = [(0, 1)] * K + [(0, None)]
    if objective == "cost":
        # sum_c p_c S[c, x] - t * opt(x) <= 0, minimize t
        A_ub = np.hstack([S.T, -bench[:, None]])
        c_obj = np.append(np.zeros(K), 1.0)
    else:
        # s * opt(x) - sum_c p_c S[c, x] <= 0, maximize s; ratio = 1 / s
        A_ub = np.hstack([-S.T, bench[:, None]])
        c_obj = np.append(np.zeros(K), -1.0)
    res = linprog(c_obj, A_ub=A_ub, b_ub=np.zeros(len(bench)), A_eq=A_eq, b_eq=[1.0],
                  bounds=bounds, method="highs")
    if not res.success:
        return math.inf, None
    p = np.clip(res.x[:K], 0, None)
    p /= p.sum()
    outcome = Outcome({committees[c]: float(p[c]) for c in range(K) if p[c] > 1e-12})
    t = float(res.x[K])
    value = t if objective == "cost" else (math.inf if t <= EPS_METRIC else 1.0 / t)
    return value, outcome


# ---------------------------------------------------------------- analytic bounds

def is_simplex(e: Election, eps: float = EPS_METRIC) -> bool:
    D = e.cand_dist[~np.eye(e.m, dtype=bool)]
    return bool(np.all(np.abs(D - D[0]) <= eps)) and D[0] > eps


def analytic_bound(mech: str, e: Election, objective: str, k: int | None = None) -> float | None:
    """The proven distortion upper bound for this mechanism/objective/instance, if any."""
    m = e.m
    single = k is None or k == m - 1
    if mech == "min_projection" and objective == "cost":
        return 3.0
    if mech == "max_projection" and objective == "utility":
        return 3.0
    if not single:
        return None
    if mech == "power_proportionality" and objective == "cost":
        return 3.0 - 2.0 / m
    if mech == "proportionality" and objective == "utility":
        bounds = []
        if m == 2:
            bounds.append((5 + 4 * math.sqrt(2)) / 7)
        if is_simplex(e):
            bounds.append(3.0 - 4.0 / (m + 2))
        return min(bounds) if bounds else None
    if mech == "left_or_right" and objective == "utility" and e.metric.coords is not None:
        return 13 / 7
    return None


def _single_loser_probs(e: Election, o: Outcome) -> list[float]:
    if o.k != e.m - 1 or o.m != e.m:
        raise ElectionError("the bound lemmas apply to single-loser outcomes (k = m-1)")
    return [float(o.prob(Committee((y,), e.m))) for y in range(e.m)]


def _gaps(e: Election) -> np.ndarray:
    D = e.cand_dist.copy()
    np.fill_diagonal(D, np.inf)
    return D.min(axis=1)


def cost_bound_lemma(e: Election, o: Outcome, y_star: int) -> float:
    """Upper bound on E[SC] / SC(M_{y*}) when M_{y*} is an optimal committee.

    ``1 + 2 sum_{y != y*} P(M_y) |N_y| d(y, M_y) / (|N_{y*}| d(y*, M_{y*}))``;
    infinite when the denominator vanishes.
    """
    P = _single_loser_probs(e, o)
    counts = tally(e)
    gap = _gaps(e)
    den = counts[y_star] * gap[y_star]
    if den <= EPS_METRIC:
        return math.inf
    num = sum(P[y] * counts[y] * gap[y] for y in range(e.m) if y != y_star)
    return 1.0 + 2.0 * num / den


def utility_bound_lemma(e: Election, o: Outcome, y_star: int) -> float:
    """Lower bound on E[SU] / SU(M_{y*}) when M_{y*} is an optimal committee.

    A summand with a vanishing denominator is charged its full probability,
    which keeps the bound conservative.
    """
    P = _single_loser_probs(e, o)
    counts = tally(e)
    D = e.cand_dist
    n = e.n
    loss = 0.0
    for y in range(e.m):
        if y == y_star or P[y] == 0:
            continue
        den = 2.0 * (n - counts[y_star]) * D[y, y_star]
        if den <= EPS_METRIC:
            loss += P[y]
            continue
        num = sum(counts[z] * D[z, y] for z in range(e.m))
        loss += P[y] / (1.0 + num / den)
    return 1.0 - loss


def g_function(alphas: Sequence) -> float | Fraction:
    """``1 + 2 a_1 sum_{i>=2} a_i^(m-1) / sum_i a_i^m``; exact for int/Fraction input."""
    alphas = list(alphas)
    m = len(alphas)
    if m < 1:
        raise ValueError("g needs at least one argument")
    if any(a <= 0 for a in alphas):
        raise ValueError("g is defined for positive arguments only")
    if all(isinstance(a, (int, Fraction)) for a in alphas):
        a = [Fraction(v) for v in alphas]
        return 1 + 2 * a[0] * sum(v ** (m - 1) for v in a[1:]) / sum(v ** m for v in a)
    return float(g_function_batch(np.asarray(alphas, dtype=float)[None, :])[0])


def g_function_batch(alphas: np.ndarray) -> np.ndarray:
    """Vectorized g over the rows of an (N, m) array."""
    A = np.asarray(alphas, dtype=float)
    if np.any(A <= 0):
        raise ValueError("g is defined for positive arguments only")
    m = A.shape[1]
    # scale rows by their max; g is homogeneous of degree 0
    A = A / A.max(axis=1, keepdims=True)
    return 1.0 + 2.0 * A[:, 0] * (A[:, 1:] ** (m - 1)).sum(axis=1) / (A ** m).sum(axis=1)
