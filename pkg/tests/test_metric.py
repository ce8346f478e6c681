import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scvote.metric import (FiniteMetric, MetricError, distance_to_set,
                           line_metric, simplex_metric, validate)


def _metric(rows):
    return FiniteMetric(tuple(str(i) for i in range(len(rows))), np.array(rows, dtype=float))


def test_two_point_metric_is_valid():
    assert validate(_metric([[0, 2], [2, 0]])).ok


def test_equidistant_center_metric_is_valid():
    # a center at distance 1 from two candidates spaced 2 apart
    assert validate(_metric([[0, 1, 1], [1, 0, 2], [1, 2, 0]])).ok


def test_triangle_violation_reported():
    res = validate(_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]]))
    assert not res.ok
    assert (0, 2, 1) in res.triangle
    assert (2, 0, 1) in res.triangle
    assert len(res.triangle) == 2


def test_other_axioms_reported():
    res = validate(np.array([[0.0, 1.0], [2.0, 0.0]]))
    assert res.asymmetric == [(0, 1), (1, 0)]
    res = validate(np.array([[1.0, 1.0], [1.0, 0.0]]))
    assert res.nonzero_diagonal == [0]
    res = validate(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    assert res.negative


def test_non_square_is_structural_error():
    with pytest.raises(MetricError):
        validate(np.zeros((2, 3)))
    with pytest.raises(MetricError):
        FiniteMetric(("a", "b"), np.zeros((2, 3)))


def test_line_metric():
    m = line_metric([0, 2, 100])
    assert m.d(0, 1) == 2 and m.d(1, 2) == 98 and m.d(0, 2) == 100
    assert line_metric([0, 4, 8]).d(0, 2) == 8
    one = line_metric([5])
    assert one.dist.shape == (1, 1) and one.dist[0, 0] == 0


def test_simplex_metric():
    m = simplex_metric(3, 2)
    off = m.dist[~np.eye(3, dtype=bool)]
    assert np.all(off == 2)
    assert simplex_metric(1, 2).dist.tolist() == [[0.0]]
    assert validate(simplex_metric(4, 2)).ok
    with pytest.raises(MetricError):
        simplex_metric(3, 0)


def test_distance_to_set():
    m = line_metric([0, 1, 2, 100])
    assert distance_to_set(m, 1, [0, 3]) == 1
    assert distance_to_set(m, 2, [2, 3]) == 0
    center = _metric([[0, 2, 2, 1], [2, 0, 2, 1], [2, 2, 0, 1], [1, 1, 1, 0]])
    assert distance_to_set(center, 3, [0, 1]) == 1
    with pytest.raises(MetricError):
        distance_to_set(m, 0, [])


def test_metric_is_immutable():
    m = line_metric([0, 1])
    with pytest.raises(ValueError):
        m.dist[0, 1] = 5


coords = st.lists(st.integers(-50, 50), min_size=1, max_size=8)


@given(coords)
def test_line_metrics_always_validate(xs):
    assert validate(line_metric(xs)).ok


@given(st.integers(1, 10), st.floats(0.1, 100))
def test_simplex_metrics_always_validate(m, side):
    assert validate(simplex_metric(m, side)).ok


@given(coords, st.data())
def test_distance_to_set_is_a_min_and_antitone(xs, data):
    m = line_metric(xs)
    n = len(xs)
    p = data.draw(st.integers(0, n - 1))
    V = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    extra = data.draw(st.sets(st.integers(0, n - 1)))
    dv = distance_to_set(m, p, V)
    assert all(dv <= m.d(p, v) for v in V)
    assert any(dv == m.d(p, v) for v in V)
    assert distance_to_set(m, p, V | extra) <= dv
