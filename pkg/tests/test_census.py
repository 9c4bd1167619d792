import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from butson.census import (
    UnsupportedFamily,
    check_two_prime_structure,
    closed_form_census,
    closed_form_method,
    compositions,
    count_m3_prime,
    count_prime_power_m2,
    count_q2,
    count_two_prime_m2,
    multinomial,
    multinomial_power_sum,
    two_prime_array,
    two_prime_m2_terms,
)
from butson.cyclotomic import MultiplicityVector, is_vanishing_sum
from butson.matrices import brute_force_census


def test_multinomial_basics():
    assert multinomial(4, (2, 2)) == 6
    assert multinomial(0, ()) == 1
    assert multinomial(10, (3, 3, 4)) == 4200
    with pytest.raises(ValueError):
        multinomial(5, (2, 2))
    with pytest.raises(ValueError):
        multinomial(2, (3, -1))


@pytest.mark.parametrize("total,parts", [(0, 1), (0, 3), (3, 1), (4, 3), (6, 4)])
def test_compositions_complete_and_distinct(total, parts):
    got = list(compositions(total, parts))
    assert len(got) == len(set(got)) == math.comb(total + parts - 1, parts - 1)
    assert all(sum(c) == total and len(c) == parts for c in got)
    assert got[0] == (total,) + (0,) * (parts - 1)


def test_q2_values():
    assert count_q2(2, 4).total == 96
    assert count_q2(3, 4).total == 384
    assert count_q2(4, 8).dephased == 45360
    assert count_q2(3, 6).dephased == 0
    with pytest.raises(UnsupportedFamily):
        count_q2(5, 8)


def test_prime_power_values():
    assert count_prime_power_m2(2, 4).dephased == 6
    assert count_prime_power_m2(3, 3).dephased == 6
    assert count_prime_power_m2(4, 4).dephased == 36
    assert count_prime_power_m2(9, 6).dephased == 2430
    assert count_prime_power_m2(4, 3).dephased == 0
    with pytest.raises(UnsupportedFamily):
        count_prime_power_m2(6, 2)


def test_two_prime_values():
    assert [count_two_prime_m2(6, n).dephased for n in range(2, 9)] == [6, 12, 90, 360, 2040, 10080, 54810]
    with pytest.raises(UnsupportedFamily):
        count_two_prime_m2(30, 5)


def test_q6_both_readings_agree():
    for n in range(1, 16):
        assert count_two_prime_m2(6, n, small=2) == count_two_prime_m2(6, n, small=3)


@pytest.mark.parametrize("q", [10, 15, 21])
def test_two_prime_against_brute(q):
    for n in range(1, 5 if q < 20 else 4):
        assert count_two_prime_m2(q, n).dephased == brute_force_census(q, 2, n).dephased


def test_two_prime_terms_against_direct_classification():
    # classify every vanishing row of length 6 over Z_10 by its row offset t
    q, n = 10, 5
    by_t = {}
    for row in product(range(q), repeat=n):
        counts = np.bincount(row, minlength=q)
        if is_vanishing_sum(MultiplicityVector(q, tuple(int(c) for c in counts))):
            A = two_prime_array(counts, 2)
            t = abs(int(A[1, 0]) - int(A[0, 0]))
            by_t[(t,)] = by_t.get((t,), 0) + 1
    assert by_t == two_prime_m2_terms(q, n)


def test_m3_prime_values():
    assert count_m3_prime(3, 3).dephased == 18
    assert count_m3_prime(3, 6).dephased == 2430
    assert count_m3_prime(5, 5).dephased == 1800
    assert count_m3_prime(5, 4).dephased == 0


def test_closed_form_dispatch():
    assert closed_form_method(2, 4) == "closed_q2"
    assert closed_form_method(9, 2) == "closed_prime_power"
    assert closed_form_method(6, 2) == "closed_two_prime"
    assert closed_form_method(7, 3) == "closed_tristochastic"
    assert closed_form_method(30, 2) is None
    assert closed_form_method(4, 3) is None
    with pytest.raises(UnsupportedFamily, match="closed forms cover"):
        closed_form_census(12, 3, 4)


@pytest.mark.parametrize("q,M", [(2, 2), (3, 2), (4, 2), (5, 2), (9, 2), (6, 2), (2, 3), (3, 3), (5, 3), (2, 4)])
def test_closed_forms_equal_brute_force(q, M):
    for n in range(1, 7):
        if q ** ((M - 1) * n) > 10**7:
            break
        assert closed_form_census(q, M, n).dephased == brute_force_census(q, M, n).dephased


def test_multinomial_power_sum_identities():
    for n in range(0, 30):
        assert multinomial_power_sum(2, 2, n) == math.comb(2 * n, n)
        assert multinomial_power_sum(3, 1, n) == 3**n
    assert multinomial_power_sum(1, 5, 7) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 12))
def test_multinomial_power_sum_routes_agree(s, p, n):
    assert multinomial_power_sum(s, p, n) == multinomial_power_sum(s, p, n, method="compositions")


def test_two_prime_structure_checks():
    assert check_two_prime_structure(np.array([[1, 1, 1], [0, 0, 0]]), 6)
    assert check_two_prime_structure(np.array([[1, 0, 0], [1, 0, 0]]), 6)
    assert not check_two_prime_structure(np.array([[1, 0, 0], [0, 1, 0]]), 6)
    # transposed orientation is read from the shape
    assert check_two_prime_structure(np.array([[1, 0], [1, 0], [1, 0]]), 6)
    with pytest.raises(ValueError):
        check_two_prime_structure(np.zeros((2, 2)), 6)


def test_structure_holds_exactly_for_vanishing_rows():
    q = 12
    for counts in product(range(2), repeat=q):
        v = MultiplicityVector(q, counts)
        A = two_prime_array(counts, 2)
        if check_two_prime_structure(A, q):
            assert is_vanishing_sum(v)
        if is_vanishing_sum(v):
            assert check_two_prime_structure(A, q)
