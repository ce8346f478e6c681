"""Exhaustive unilateral-deviation audits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .distortion import (DEFAULT_BUDGET, BudgetExceeded, _check_objective,
                         _point_values)
from .election import (Committee, Election, all_committees,
                       nearest_candidates, voter_cost, voter_utility)
from .mechanisms import Mechanism, get_mechanism, proportionality
from .metric import EPS_METRIC


@dataclass(frozen=True)
class Violation:
    voter: int
    profile: tuple[int, ...]
    actions: tuple[int, ...]        # truthful action profile
    truthful_action: int
    better_action: int
    truthful_value: float
    deviant_value: float
    objective: str

    def as_row(self) -> list:
        return [self.voter, " ".join(map(str, self.profile)), " ".join(map(str, self.actions)),
                self.truthful_action, self.better_action,
                f"{self.truthful_value:.12g}", f"{self.deviant_value:.12g}", self.objective]


VIOLATION_HEADER = ["voter", "profile", "actions", "truthful_action", "better_action",
                    "truthful_value", "deviant_value", "objective"]


def _better(dev: float, truth: float, objective: str) -> bool:
    if objective == "cost":
        return dev < truth - EPS_METRIC
    return dev > truth + EPS_METRIC


def audit(mech: str | Mechanism, template: Election, universe: Iterable[int] | None = None,
          objective: str = "cost", k: int | None = None, n: int | None = None,
          budget: int = DEFAULT_BUDGET) -> list[Violation]:
    """Search every unilateral deviation for a profitable misreport.

    Only the metric and candidates of ``template`` are used; ``n`` defaults
    to its number of voters.  For each voter and every report vector of the
    others (all of ``M^(n-1)``; each such report is truthful for voters
    sitting on their reported candidates), the voter is placed at every
    universe point and every nearest-candidate report is compared with every
    alternative.  One violation is recorded per beaten truthful report,
    naming the best deviation.
    """
    _check_objective(objective)
    f = get_mechanism(mech)
    m = template.m
    n = template.n if n is None else n
    universe = list(range(template.metric.size)) if universe is None else sorted(set(universe))
    evaluations = n * m ** n
    if evaluations * max(1, len(universe)) > budget:
        raise BudgetExceeded(f"audit needs {evaluations} mechanism runs over "
                             f"{len(universe)} points, over the budget of {budget}")

    cache: dict[tuple[int, ...], np.ndarray] = {}
    vals = None

    def point_values(actions: tuple[int, ...]) -> np.ndarray:
        # expected cost/utility at each metric point under the outcome for `actions`
        nonlocal vals
        if actions not in cache:
            o = f(template.with_actions(actions), k)
            if vals is None:
                committees = all_committees(m, o.k)
                vals = (committees, _point_values(template, committees, objective))
            committees, V = vals
            probs = np.array([float(o.prob(W)) for W in committees])
            cache[actions] = probs @ V
        return cache[actions]

    truthful = {u: nearest_candidates(template, u) for u in universe}
    violations = []
    for i in range(n):
        for others in itertools.product(range(m), repeat=n - 1):
            per_report = [point_values(others[:i] + (a,) + others[i:]) for a in range(m)]
            for u in universe:
                values = [float(v[u]) for v in per_report]
                pick = min if objective == "cost" else max
                best = pick(range(m), key=lambda a: values[a])
                for t in truthful[u]:
                    if _better(values[best], values[t], objective):
                        actions = others[:i] + (t,) + others[i:]
                        profile = tuple(u if j == i else template.candidates[actions[j]]
                                        for j in range(n))
                        violations.append(Violation(i, profile, actions, t, best,
                                                    values[t], values[best], objective))
    return violations


def replay(v: Violation, mech: str | Mechanism, template: Election, k: int | None = None) -> bool:
    """Recompute both sides of a violation from scratch; True if it still holds."""
    f = get_mechanism(mech)
    truth_e = template.with_actions(v.actions)
    dev_actions = list(v.actions)
    dev_actions[v.voter] = v.better_action
    dev_e = template.with_actions(dev_actions)
    point = v.profile[v.voter]
    value = voter_cost if v.objective == "cost" else voter_utility
    t = value(truth_e, f(truth_e, k), point)
    d = value(dev_e, f(dev_e, k), point)
    return (v.truthful_action in nearest_candidates(template, point)
            and _better(d, t, v.objective))


def audit_proportionality_monotonicity(e: Election, voter: int,
                                       new_action: int | None = None) -> bool:
    """Check the monotonicity facts behind Proportionality's strategy-proofness.

    Moving ``voter``'s report from y to y' must raise P(M_y), lower
    P(M_y') and leave every other committee's probability untouched.
    """
    m = e.m
    y = e.actions[voter]
    before = proportionality(e)
    targets = [new_action] if new_action is not None else [z for z in range(m) if z != y]
    for z in targets:
        if z == y:
            continue
        acts = list(e.actions)
        acts[voter] = z
        after = proportionality(e.with_actions(acts))
        for w in range(m):
            c = Committee((w,), m)
            p0, p1 = before.prob(c), after.prob(c)
            if w == y and not p1 > p0:
                return False
            if w == z and not p1 < p0:
                return False
            if w not in (y, z) and p1 != p0:
                return False
    return True
