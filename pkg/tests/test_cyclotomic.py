import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from butson.cyclotomic import (
    IntPolynomial,
    MultiplicityVector,
    admissible_length,
    cycle_decomposition,
    cyclotomic_polynomial,
    factorization,
    is_prime,
    is_vanishing_sum,
    prime_factors,
    remainder_matrix,
    vanishing_vectors,
)


def float_vanishes(q, exps):
    return abs(sum(cmath.exp(2j * cmath.pi * e / q) for e in exps)) < 1e-9


def test_small_cyclotomic_polynomials():
    assert str(cyclotomic_polynomial(6)) == "x^2 - x + 1"
    assert cyclotomic_polynomial(2).coefficients == (1, 1)
    assert cyclotomic_polynomial(5).coefficients == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(12).coefficients == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("q", range(1, 31))
def test_product_over_divisors_is_x_q_minus_1(q):
    prod = IntPolynomial((1,))
    for d in range(1, q + 1):
        if q % d == 0:
            prod = prod * cyclotomic_polynomial(d)
    assert prod.coefficients == (-1,) + (0,) * (q - 1) + (1,)


def test_cyclotomic_roots_are_primitive():
    for q in (7, 9, 10, 15):
        phi = cyclotomic_polynomial(q)
        assert abs(phi(cmath.exp(2j * cmath.pi / q))) < 1e-9


def test_factoring_helpers():
    assert prime_factors(360) == [2, 3, 5]
    assert factorization(72) == [(2, 3), (3, 2)]
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_remainder_matrix_is_read_only():
    R = remainder_matrix(6)
    assert R.shape == (6, 2)
    with pytest.raises(ValueError):
        R[0, 0] = 5


def test_known_vanishing_examples():
    assert is_vanishing_sum(MultiplicityVector.from_exponents(6, [0, 3]))
    assert is_vanishing_sum(MultiplicityVector.from_exponents(6, [0, 2, 4]))
    assert not is_vanishing_sum(MultiplicityVector.from_exponents(6, [0, 1]))
    assert not is_vanishing_sum(MultiplicityVector.from_exponents(4, [0]))


def test_q30_vanishing_without_cycle_decomposition():
    v = MultiplicityVector.from_exponents(30, [5, 6, 12, 18, 24, 25])
    assert is_vanishing_sum(v)
    assert float_vanishes(30, [5, 6, 12, 18, 24, 25])
    assert cycle_decomposition(v) is None


def test_decomposition_examples():
    dec = cycle_decomposition(MultiplicityVector.from_exponents(6, [0, 2, 4]))
    assert dec.terms == ((3, 0, 1),)
    dec = cycle_decomposition(MultiplicityVector.from_exponents(6, [0, 3]))
    assert dec.terms == ((2, 0, 1),)
    assert cycle_decomposition(MultiplicityVector.from_exponents(6, [0, 1])) is None


def test_decomposition_expands_back():
    for q in (6, 10, 12):
        for v in vanishing_vectors(q, 6):
            dec = cycle_decomposition(v)
            assert dec is not None
            assert dec.expand() == v


def test_admissible_length():
    assert not admissible_length(4, 3)
    assert admissible_length(6, 5)
    assert admissible_length(2, 2)
    assert not admissible_length(2, 3)
    assert admissible_length(30, 5)
    assert not admissible_length(30, 1)
    assert admissible_length(30, 4)
    assert not admissible_length(15, 4)


def test_admissible_length_matches_existence():
    for q in (2, 3, 4, 6, 9, 10):
        for N in range(1, 8):
            found = next(vanishing_vectors(q, N), None) is not None
            assert found == admissible_length(q, N), (q, N)


def test_multiplicity_vector_validation():
    with pytest.raises(ValueError):
        MultiplicityVector(3, (1, -1, 0))
    with pytest.raises(ValueError):
        MultiplicityVector(3, (1, 1))
    v = MultiplicityVector.from_exponents(5, [0, 0, 7])
    assert v.counts == (2, 0, 1, 0, 0)
    assert v.total() == 3


def test_exhaustive_small_against_float_oracle():
    for q in range(2, 9):
        for k in range(1, 5):
            for exps in itertools.combinations_with_replacement(range(q), k):
                v = MultiplicityVector.from_exponents(q, exps)
                assert is_vanishing_sum(v) == float_vanishes(q, exps)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 24).flatmap(lambda q: st.tuples(st.just(q), st.lists(st.integers(0, q - 1), min_size=1, max_size=10))))
def test_vanishing_matches_float_oracle(case):
    q, exps = case
    assert is_vanishing_sum(MultiplicityVector.from_exponents(q, exps)) == float_vanishes(q, exps)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 18).flatmap(lambda q: st.tuples(st.just(q), st.lists(st.integers(0, q - 1), min_size=1, max_size=8), st.integers(0, q - 1))))
def test_rotation_invariance(case):
    q, exps, r = case
    v = MultiplicityVector.from_exponents(q, exps)
    assert is_vanishing_sum(v) == is_vanishing_sum(v.rotate(r))
    assert np.isclose(v.rotate(r).complex_sum(), v.complex_sum() * cmath.exp(2j * cmath.pi * r / q))
