import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from butson.matrices import (
    BudgetExceeded,
    CensusRecord,
    ExponentMatrix,
    brute_force_census,
    dephase,
    is_partial_butson,
    standard_form,
    vanishing_rows,
)


def naive_count(q, M, N):
    """Odometer over every dephased matrix, float orthogonality test."""
    w = np.exp(2j * np.pi * np.arange(q) / q)
    rows = list(itertools.product(range(q), repeat=N))
    count = 0
    for rest in itertools.product(rows, repeat=M - 1):
        X = w[np.array([(0,) * N] + list(rest))]
        G = X @ X.conj().T
        if np.allclose(G - np.diag(np.diag(G)), 0, atol=1e-9):
            count += 1
    return count


@pytest.mark.parametrize("q,M,N", [(2, 2, 2), (2, 2, 4), (3, 2, 3), (4, 2, 4), (6, 2, 3), (2, 3, 4), (3, 3, 3), (4, 3, 2), (2, 4, 4)])
def test_brute_force_matches_naive_odometer(q, M, N):
    assert brute_force_census(q, M, N).dephased == naive_count(q, M, N)


@pytest.mark.parametrize(
    "q,M,N,dephased",
    [(2, 2, 2, 2), (6, 2, 2, 6), (6, 2, 3, 12), (6, 2, 4, 90), (6, 2, 5, 360), (3, 3, 3, 18), (3, 3, 6, 2430), (2, 4, 8, 45360)],
)
def test_known_counts(q, M, N, dephased):
    assert brute_force_census(q, M, N).dephased == dephased


def test_totals_and_probability_string():
    rec = brute_force_census(2, 2, 4)
    assert rec.total == 96
    assert brute_force_census(2, 3, 4).total == 384
    rec = CensusRecord(6, 2, 5, 360, "closed_two_prime")
    assert rec.probability_str == "360/7776"
    assert rec.to_dict() == {
        "q": 6,
        "m": 2,
        "n": 5,
        "dephased": "360",
        "total": "2799360",
        "probability": "360/7776",
        "probability_float": pytest.approx(0.0462962963),
        "method": "closed_two_prime",
    }
    json.loads(rec.to_json())


def test_single_row_and_inadmissible():
    assert brute_force_census(5, 1, 3).dephased == 1
    assert brute_force_census(4, 2, 3).dephased == 0


def test_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceeded):
        brute_force_census(3, 3, 6, budget=100)
    monkeypatch.setenv("BUTSON_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        brute_force_census(2, 2, 8)


def test_workers_do_not_change_counts():
    assert brute_force_census(6, 2, 6, workers=1) == brute_force_census(6, 2, 6, workers=3)
    a = vanishing_rows(3, 6, workers=1)
    b = vanishing_rows(3, 6, workers=2)
    assert np.array_equal(a, b)


def test_exponent_matrix_roundtrips():
    H = ExponentMatrix(4, [[0, 0, 0, 0], [0, 1, 2, 3]])
    assert ExponentMatrix.from_json(H.to_json()) == H
    assert ExponentMatrix.from_text(4, H.to_text()) == H
    with pytest.raises(ValueError):
        ExponentMatrix(3, [[0, 3]])
    with pytest.raises(ValueError):
        ExponentMatrix.from_json(json.dumps({"q": 2, "m": 1, "n": 3, "rows": [[0, 1]]}))


def test_fourier_matrix_is_butson():
    for q in (2, 3, 5, 6):
        F = ExponentMatrix(q, np.outer(np.arange(q), np.arange(q)) % q)
        assert is_partial_butson(F)
    assert not is_partial_butson(ExponentMatrix(2, [[0, 0], [0, 0]]))


matrices = st.integers(2, 7).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.integers(1, 4).flatmap(lambda m: st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=m, max_size=m))),
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_equivalence_invariants(case, rnd):
    q, rows = case
    H = ExponentMatrix(q, rows)
    E = H.entries
    perm = list(range(H.n))
    rnd.shuffle(perm)
    shift_rows = np.array([rnd.randrange(q) for _ in range(H.m)])[:, None]
    shift_cols = np.array([rnd.randrange(q) for _ in range(H.n)])[None, :]
    G = ExponentMatrix(q, (E[:, perm] + shift_rows + shift_cols) % q)
    # row phases are global per row, column phases cancel after dephasing
    assert is_partial_butson(G) == is_partial_butson(H)
    assert standard_form(ExponentMatrix(q, E[:, perm])) == standard_form(H)
    D = dephase(H)
    assert (D.entries[0] == 0).all()
    assert dephase(D) == D
    S = standard_form(H)
    assert standard_form(S) == S
    cols = [tuple(c) for c in S.entries.T]
    assert cols == sorted(cols)
