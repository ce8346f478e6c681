from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_pd_set, naive_sc
from scvote.election import (Committee, Election, ElectionError, Outcome,
                             all_committees, eliminate, is_consistent,
                             projection_distance_point, projection_distance_set,
                             social_cost, social_utility, tally)
from scvote.instances import gen_random_election, gen_simplex_lower_bound
from scvote.metric import line_metric


def test_consistency_on_line_instance(line_lb):
    e = line_lb.election  # points: 0 -> 0, 1 -> 1, 2 -> 2, 3 -> 100
    assert is_consistent(e, (1, 2, 3))
    assert not is_consistent(e, (2, 2, 3))
    assert is_consistent(e, tuple(e.candidates[a] for a in e.actions))


def test_social_cost_on_line_instance(line_lb):
    e = line_lb.election
    x = (1, 2, 3)
    assert social_cost(e, eliminate(3, 1), x) == 3
    assert social_cost(e, eliminate(3, 0), x) == 1
    on_winners = (2, 2, 3)
    assert social_cost(e, eliminate(3, 0), on_winners) == 0


def test_social_utility():
    e = Election(line_metric([0, 4, 6, 8]), (0, 1, 3), (2, 2))
    assert social_utility(e, eliminate(3, 0), (2, 3)) == 14
    assert social_utility(e, eliminate(3, 0), (0, 0)) == 0
    fig = gen_simplex_lower_bound(3).election
    assert social_utility(fig, eliminate(3, 2), (0, 1, 3)) == 5


def test_projection_distances(line_lb):
    e = line_lb.election
    assert projection_distance_set(e, [1, 2]) == 2
    assert projection_distance_set(e, [0, 1]) == 98
    assert projection_distance_set(e, [0, 1, 2]) == 0
    assert projection_distance_point(e, 2) == 198
    assert projection_distance_point(e, 0) == 102
    assert projection_distance_point(e.with_actions((1, 1, 1)), 1) == 0


def test_tally():
    e = Election(line_metric([0, 1, 2]), (0, 1, 2), (0, 1, 2))
    assert tally(e) == {0: 1, 1: 1, 2: 1}
    assert tally(e.with_actions((0, 0, 0, 0))) == {0: 4, 1: 0, 2: 0}
    assert tally(e.with_actions((0, 0, 1, 2))) == {0: 2, 1: 1, 2: 1}


def test_committee_canonical_form():
    assert Committee((2, 0), 4).eliminated == (0, 2)
    assert Committee((2, 0), 4) == Committee((0, 2), 4)
    assert Committee((0, 2), 4).winners == (1, 3)
    assert Committee((0, 2), 4).k == 2
    with pytest.raises(ElectionError):
        Committee((), 3)          # the full candidate set is not a committee
    with pytest.raises(ElectionError):
        Committee((0, 1, 2), 3)   # nobody left
    with pytest.raises(ElectionError):
        Committee((3,), 3)


def test_all_committees_order():
    assert [c.eliminated for c in all_committees(4, 2)] == [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    with pytest.raises(ElectionError):
        all_committees(3, 3)


def test_election_validation():
    m = line_metric([0, 1, 2])
    with pytest.raises(ElectionError):
        Election(m, (0,), (0,))
    with pytest.raises(ElectionError):
        Election(m, (0, 1), ())
    with pytest.raises(ElectionError):
        Election(m, (0, 1), (2,))
    with pytest.raises(ElectionError):
        Election(m, (0, 0), (0,))


def test_outcome_validation():
    c0, c1 = eliminate(2, 0), eliminate(2, 1)
    o = Outcome({c0: Fraction(1, 3), c1: Fraction(2, 3)})
    assert o.total() == 1
    with pytest.raises(ElectionError):
        Outcome({c0: 0.5, c1: 0.4})
    with pytest.raises(ElectionError):
        Outcome({c0: 0.5, eliminate(3, 1): 0.5})
    # zero-probability entries are dropped
    assert Outcome({c0: 1, c1: 0}).support() == [c0]


seeds = st.integers(0, 10**6)
kinds = st.sampled_from(["line", "simplex", "random_metric"])


@settings(max_examples=60, deadline=None)
@given(seeds, kinds, st.integers(2, 5), st.integers(1, 5))
def test_projection_equals_cost_when_voters_sit_on_votes(seed, kind, m, n):
    e = gen_random_election(seed, m, n, m + 3, kind).election
    x = tuple(e.candidates[a] for a in e.actions)
    for k in range(1, m):
        for W in all_committees(m, k):
            pd = projection_distance_set(e, W.winners)
            assert pd == pytest.approx(social_cost(e, W, x), abs=1e-9)
            assert pd == pytest.approx(naive_pd_set(e, W.winners), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(seeds, kinds, st.integers(2, 5), st.integers(1, 5))
def test_votes_are_nearest_for_consistent_profiles(seed, kind, m, n):
    bundle = gen_random_election(seed, m, n, m + 3, kind)
    e, x = bundle.election, bundle.witnesses["generating_profile"]
    assert is_consistent(e, x)
    counts = tally(e)
    assert sum(counts.values()) == n and min(counts.values()) >= 0
    for i, (xi, ai) in enumerate(zip(x, e.actions)):
        mine = e.metric.d(xi, e.candidates[ai])
        for W in all_committees(m):
            assert mine <= min(e.metric.d(xi, e.candidates[j]) for j in W.winners) + 1e-9
    for W in all_committees(m):
        assert social_cost(e, W, x) == pytest.approx(naive_sc(e, W, x))
