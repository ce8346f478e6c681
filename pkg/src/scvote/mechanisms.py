"""Single-candidate-vote mechanisms.

Every mechanism is a pure map from an :class:`Election` to an
:class:`Outcome`; randomized mechanisms return the distribution itself and
never sample.  Probabilities are :class:`~fractions.Fraction` whenever the
inputs allow exact arithmetic, otherwise floats.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .election import (Committee, Election, ElectionError, Outcome,
                       all_committees, tally)
from .metric import EPS_METRIC

Mechanism = Callable[..., Outcome]

FLAG_INFINITE_WEIGHT = "infinite-weight limit convention applied"
FLAG_DEGENERATE_LINE = "degenerate: all candidates co-located"


def _resolve_k(e: Election, k: int | None) -> int:
    k = e.m - 1 if k is None else int(k)
    if not 1 <= k <= e.m - 1:
        raise ElectionError(f"committee size k={k} must satisfy 1 <= k <= m-1 (m={e.m})")
    return k


def _require_single_loser(e: Election, k: int | None, name: str):
    if k is not None and k != e.m - 1:
        raise ElectionError(f"{name} is defined only for k = m-1")


def _action_to_set_distance(e: Election, S: Sequence[int]) -> float:
    return float(e.cand_dist[np.ix_(list(e.actions), list(S))].min(axis=1).sum())


def _best_eliminated_set(e: Election, k: int, score, maximize: bool) -> tuple[int, ...]:
    # combinations() yields eliminated sets in lexicographic order; keeping the
    # first strict improvement breaks ties towards the smallest set.
    best, best_val = None, None
    for E in itertools.combinations(range(e.m), e.m - k):
        val = score(E)
        if best is None:
            improved = True
        elif maximize:
            improved = val > best_val + EPS_METRIC
        else:
            improved = val < best_val - EPS_METRIC
        if improved:
            best, best_val = E, val
    return best


def min_projection(e: Election, k: int | None = None) -> Outcome:
    """Keep the size-k committee whose projection distance is smallest."""
    k = _resolve_k(e, k)
    E = _best_eliminated_set(
        e, k, lambda E: _action_to_set_distance(e, [j for j in range(e.m) if j not in E]),
        maximize=False)
    return Outcome.point_mass(Committee(E, e.m))


def max_projection(e: Election, k: int | None = None) -> Outcome:
    """Eliminate the (m-k)-set that is farthest, in projection, from the votes."""
    k = _resolve_k(e, k)
    E = _best_eliminated_set(e, k, lambda E: _action_to_set_distance(e, E), maximize=True)
    return Outcome.point_mass(Committee(E, e.m))


def _exact(x: float):
    return Fraction(int(round(x))) if float(x).is_integer() else None


def power_proportionality(e: Election, k: int | None = None) -> Outcome:
    """Eliminate y with probability proportional to ``(|N_y| * d(y, M_y)) ** -m``.

    A zero product means infinite weight; the mass is then split evenly over
    the infinite-weight candidates, which is the limit of the formula.
    """
    _require_single_loser(e, k, "power_proportionality")
    m = e.m
    counts = tally(e)
    D = e.cand_dist.copy()
    np.fill_diagonal(D, np.inf)
    gap = D.min(axis=1)  # d(y, M_y)
    prods = [counts[y] * float(gap[y]) for y in range(m)]
    zero = [y for y in range(m) if prods[y] <= EPS_METRIC]
    if zero:
        share = Fraction(1, len(zero))
        probs = {Committee((y,), m): share for y in zero}
        return Outcome(probs, (FLAG_INFINITE_WEIGHT,))
    exact = [_exact(p) for p in prods]
    if all(v is not None for v in exact):
        w = [v ** -m for v in exact]
        total = sum(w)
        return Outcome({Committee((y,), m): w[y] / total for y in range(m)})
    # normalize by the smallest product so the largest weight is 1
    base = min(prods)
    w = np.array([(base / p) ** m for p in prods])
    w /= w.sum()
    return Outcome({Committee((y,), m): float(w[y]) for y in range(m)})


def proportionality(e: Election, k: int | None = None) -> Outcome:
    """Eliminate y with probability ``(n - |N_y|) / ((m - 1) n)``."""
    _require_single_loser(e, k, "proportionality")
    m, n = e.m, e.n
    counts = tally(e)
    return Outcome({Committee((y,), m): Fraction(n - counts[y], (m - 1) * n)
                    for y in range(m)})


def candidate_positions(e: Election) -> tuple[float, ...]:
    if e.metric.coords is None:
        raise ElectionError("election is not embedded on a line (metric has no coords)")
    return tuple(e.metric.coords[c] for c in e.candidates)


def left_or_right(e: Election, k: int | None = None,
                  positions: Sequence[float] | None = None) -> Outcome:
    """Eliminate the leftmost or rightmost candidate, leaning on the vote split.

    With candidates spanning ``[0, L]``, ``n1`` counts votes for candidates
    in ``[0, L/2]`` and ``n2`` those in ``(L/2, L]``.  The endpoint on the
    heavier side is eliminated with probability 6/13, the other with 7/13;
    an even split gives 1/2 each.
    """
    _require_single_loser(e, k, "left_or_right")
    pos = candidate_positions(e) if positions is None else tuple(float(p) for p in positions)
    if len(pos) != e.m:
        raise ElectionError("need one coordinate per candidate")
    m = e.m
    lo, hi = min(pos), max(pos)
    left = min(j for j in range(m) if pos[j] == lo)
    L = hi - lo
    if L <= EPS_METRIC:
        right = m - 1 if left != m - 1 else 0
        half = Fraction(1, 2)
        return Outcome({Committee((left,), m): half, Committee((right,), m): half},
                       (FLAG_DEGENERATE_LINE,))
    right = min(j for j in range(m) if pos[j] == hi)
    n1 = sum(1 for a in e.actions if pos[a] - lo <= L / 2 + EPS_METRIC)
    n2 = e.n - n1
    if n1 > n2:
        p_left = Fraction(6, 13)
    elif n1 < n2:
        p_left = Fraction(7, 13)
    else:
        p_left = Fraction(1, 2)
    return Outcome({Committee((left,), m): p_left, Committee((right,), m): 1 - p_left})


def uniform(e: Election, k: int | None = None) -> Outcome:
    """Every size-k committee equally likely (a reference baseline)."""
    cs = all_committees(e.m, _resolve_k(e, k))
    return Outcome({c: Fraction(1, len(cs)) for c in cs})


MECHANISMS: dict[str, Mechanism] = {
    "min_projection": min_projection,
    "power_proportionality": power_proportionality,
    "max_projection": max_projection,
    "proportionality": proportionality,
    "left_or_right": left_or_right,
}

# objective each mechanism is designed for
NATURAL_OBJECTIVE = {
    "min_projection": "cost",
    "power_proportionality": "cost",
    "max_projection": "utility",
    "proportionality": "utility",
    "left_or_right": "utility",
}

SIZE_K_MECHANISMS = {"min_projection", "max_projection"}


def get_mechanism(mech: str | Mechanism) -> Mechanism:
    if callable(mech):
        return mech
    try:
        return MECHANISMS[mech]
    except KeyError:
        raise ValueError(f"unknown mechanism {mech!r}; choose from {sorted(MECHANISMS)}") from None


def mechanism_name(mech: str | Mechanism) -> str:
    return mech if isinstance(mech, str) else getattr(mech, "__name__", repr(mech))


def run(mech: str | Mechanism, e: Election, k: int | None = None) -> Outcome:
    return get_mechanism(mech)(e, k)
