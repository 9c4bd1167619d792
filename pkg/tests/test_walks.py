import math
from fractions import Fraction

import pytest

from butson.census import count_two_prime_m2
from butson.matrices import BudgetExceeded
from butson.walks import (
    IncrementSampler,
    diagonal_point_count,
    diagonal_return_count,
    exact_diagonal_return,
    exact_origin_return,
    mc_return_estimate,
    mc_return_probability,
    walk_distribution,
)


def test_small_exact_values():
    assert exact_diagonal_return(3, 1) == 0
    assert exact_diagonal_return(3, 2) == Fraction(1, 6)
    assert exact_diagonal_return(3, 3) == Fraction(1, 18)


def test_distribution_totals():
    dist = walk_distribution(2, 4)
    assert dist.total() == dist.denominator == 4**4
    assert dist.at((0, 0)) == 36
    assert dist.at((5, 0)) == 0
    assert sum(dist.weights.values()) == 256


def test_dp_matches_two_prime_census():
    for n in range(1, 9):
        assert exact_diagonal_return(3, n) == count_two_prime_m2(6, n).probability
    for n in range(1, 6):
        assert exact_diagonal_return(5, n) == count_two_prime_m2(10, n).probability


def test_dp_matches_one_dimensional_route():
    for p, n in ((3, 6), (5, 4), (2, 9)):
        dist = walk_distribution(p, n)
        for t in range(-n, n + 1):
            assert dist.at((t,) * p) == diagonal_point_count(p, n, t)


def test_big_integer_path():
    # (2p)^N overflows int64, counts must stay exact
    n = 25
    assert diagonal_return_count(2, n) == sum(diagonal_point_count(2, n, t) for t in range(-n, n + 1))


def test_dp_budget():
    with pytest.raises(BudgetExceeded):
        walk_distribution(5, 10, budget=1000)


def test_increments():
    s = IncrementSampler(5, 3, seed=1)
    assert s.D == 3 and s.pairs == [(0, 1), (0, 2), (1, 2)]
    import numpy as np

    e = np.array([[1, 4, 2]])
    assert s.increments(e).tolist() == [[(1 - 4) % 5, (1 - 2) % 5, (4 - 2) % 5]]
    # scaling e by a common shift does not change T(e)
    assert (s.increments(e) == s.increments((e + 3) % 5)).all()


def test_mc_is_reproducible_and_close():
    a = mc_return_estimate(3, 2, 3, 50_000, seed=7)
    b = mc_return_estimate(3, 2, 3, 50_000, seed=7)
    assert a == b
    exact = float(exact_origin_return(3, 2, 3))
    assert abs(a.estimate - exact) < 4 * math.sqrt(exact * (1 - exact) / a.samples)
    assert mc_return_estimate(3, 2, 3, 50_000, seed=7, workers=2) == mc_return_estimate(3, 2, 3, 50_000, seed=7, workers=2)
    est, se = mc_return_probability(2, 2, 2, 20_000, seed=1)
    assert abs(est - 0.5) < 4 * se


def test_mc_validates():
    with pytest.raises(ValueError):
        mc_return_estimate(3, 2, 3, 0)
    with pytest.raises(ValueError):
        mc_return_estimate(3, 1, 3, 10)
