"""Independent reference computations used as oracles across the suite.

These deliberately avoid the package's vectorized paths: plain loops over
``itertools.product`` and direct distance lookups.
"""

import itertools
import math

import pytest

from scvote.election import Committee, Election


def d(e: Election, p: int, q: int) -> float:
    return float(e.metric.dist[p][q])


def naive_consistent(e: Election, x) -> bool:
    for xi, ai in zip(x, e.actions):
        mine = d(e, xi, e.candidates[ai])
        if any(mine > d(e, xi, c) + 1e-9 for c in e.candidates):
            return False
    return True


def naive_sc(e: Election, W: Committee, x) -> float:
    return sum(min(d(e, xi, e.candidates[j]) for j in W.winners) for xi in x)


def naive_su(e: Election, W: Committee, x) -> float:
    return sum(min(d(e, xi, e.candidates[j]) for j in W.eliminated) for xi in x)


def naive_committees(m: int, k: int):
    return [Committee(E, m) for E in itertools.combinations(range(m), m - k)]


def naive_worst(e: Election, outcome, objective: str, universe=None):
    """Max ratio by enumerating the full product universe^n."""
    universe = range(e.metric.size) if universe is None else universe
    cs = naive_committees(e.m, outcome.k)
    f = naive_sc if objective == "cost" else naive_su
    worst, arg = -1.0, None
    for x in itertools.product(universe, repeat=e.n):
        if not naive_consistent(e, x):
            continue
        vals = {W: f(e, W, x) for W in cs}
        mech = sum(float(p) * vals[W] for W, p in outcome.items())
        bench = min(vals.values()) if objective == "cost" else max(vals.values())
        num, den = (mech, bench) if objective == "cost" else (bench, mech)
        if den > 1e-9:
            r = num / den
        else:
            r = math.inf if num > 1e-9 else 1.0
        if r > worst:
            worst, arg = r, x
    return worst, arg


def naive_pd_set(e: Election, W) -> float:
    return sum(min(d(e, e.candidates[a], e.candidates[j]) for j in W) for a in e.actions)


@pytest.fixture
def line_lb():
    """Candidates at 0, 2, 100 with one vote each; a voter slot at 1."""
    from scvote.instances import gen_line_lower_bound
    return gen_line_lower_bound(3, 100)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
