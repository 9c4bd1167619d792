"""Partial Butson matrices in exponent form, and the brute-force census.

An M x N matrix over the q-th roots of unity is stored by its exponents,
``E[i, j]`` standing for ``w**E[i, j]`` with ``w = exp(2*pi*i/q)``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import MultiplicityVector, is_vanishing_sum, remainder_matrix

__all__ = [
    "BudgetExceeded",
    "ExponentMatrix",
    "CensusRecord",
    "METHODS",
    "DEFAULT_BUDGET",
    "default_budget",
    "is_partial_butson",
    "dephase",
    "standard_form",
    "vanishing_rows",
    "brute_force_census",
]

DEFAULT_BUDGET = 10**8
METHODS = ("brute", "closed_prime_power", "closed_two_prime", "closed_tristochastic", "closed_q2")

_CHUNK = 1 << 17


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "candidate evaluations"):
        self.required = required
        self.budget = budget
        super().__init__(f"needs {required} {what}, budget is {budget}")


def default_budget() -> int:
    env = os.environ.get("BUTSON_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    q: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] < 1 or e.shape[1] < 1:
            raise ValueError(f"entries must be a nonempty 2-d array, got shape {e.shape}")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if e.min() < 0 or e.max() >= self.q:
            raise ValueError(f"exponents must lie in [0, {self.q})")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        if not isinstance(other, ExponentMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.q, self.entries.tobytes(), self.entries.shape))

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.entries / self.q)

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "m": self.m, "n": self.n, "rows": self.entries.tolist()})

    @classmethod
    def from_json(cls, text: str) -> ExponentMatrix:
        d = json.loads(text)
        mat = cls(d["q"], np.array(d["rows"], dtype=np.int64))
        if (mat.m, mat.n) != (d["m"], d["n"]):
            raise ValueError("declared shape does not match rows")
        return mat

    def to_text(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.entries.tolist())

    @classmethod
    def from_text(cls, q: int, text: str) -> ExponentMatrix:
        rows = [[int(v) for v in line.split(",")] for line in text.strip().splitlines() if line.strip()]
        return cls(q, np.array(rows, dtype=np.int64))


@dataclass(frozen=True)
class CensusRecord:
    """Exact count of dephased M x N partial Butson matrices over Z_q.

    ``total = q**N * dephased`` counts all matrices; ``probability`` is the
    chance that a uniformly random M x N matrix is partial Butson.
    """

    q: int
    m: int
    n: int
    dephased: int
    method: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.dephased < 0:
            raise ValueError("counts are nonnegative")

    @property
    def total(self) -> int:
        return self.q**self.n * self.dephased

    @property
    def denominator(self) -> int:
        return self.q ** ((self.m - 1) * self.n)

    @property
    def probability(self) -> Fraction:
        return Fraction(self.total, self.q ** (self.m * self.n))

    @property
    def probability_str(self) -> str:
        # dephased / q**((M-1)N), deliberately not reduced
        return f"{self.dephased}/{self.denominator}"

    @property
    def probability_float(self) -> float:
        p = self.probability
        if p == 0:
            return 0.0
        try:
            return float(p)
        except OverflowError:
            return 0.0

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "dephased": str(self.dephased),
            "total": str(self.total),
            "probability": self.probability_str,
            "probability_float": self.probability_float,
            "method": self.method,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _pair_vanishes(q: int, a: np.ndarray, b: np.ndarray) -> bool:
    v = MultiplicityVector.from_exponents(q, ((a - b) % q).tolist())
    return is_vanishing_sum(v)


def is_partial_butson(H: ExponentMatrix) -> bool:
    E = H.entries
    return all(_pair_vanishes(H.q, E[i], E[k]) for i in range(H.m) for k in range(i + 1, H.m))


def dephase(H: ExponentMatrix) -> ExponentMatrix:
    return ExponentMatrix(H.q, (H.entries - H.entries[0]) % H.q)


def standard_form(H: ExponentMatrix) -> ExponentMatrix:
    """Dephase, then sort columns lexicographically with the top row most significant."""
    D = dephase(H).entries
    order = np.lexsort(D[::-1])
    return ExponentMatrix(H.q, D[:, order])


def _rows_in_range(q: int, n: int, start: int, stop: int) -> np.ndarray:
    # row number k spells its exponents in base q, most significant first
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def _vanishing_mask(q: int, rows: np.ndarray) -> np.ndarray:
    R = remainder_matrix(q)
    acc = np.zeros((rows.shape[0], R.shape[1]), dtype=np.int64)
    for j in range(rows.shape[1]):
        acc += R[rows[:, j]]
    return ~acc.any(axis=1)


def _scan(args) -> np.ndarray:
    q, n, start, stop = args
    found = []
    for lo in range(start, stop, _CHUNK):
        rows = _rows_in_range(q, n, lo, min(stop, lo + _CHUNK))
        found.append(rows[_vanishing_mask(q, rows)])
    if not found:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(found)


def _adjacency_block(args) -> np.ndarray:
    q, S, lo, hi = args
    block = np.zeros((hi - lo, len(S)), dtype=bool)
    for k in range(lo, hi):
        block[k - lo] = _vanishing_mask(q, (S - S[k]) % q)
    return block


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def _map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def vanishing_rows(q: int, n: int, workers: int = 1) -> np.ndarray:
    """All length-n exponent rows orthogonal to the all-ones row, in lex order.

    The q**n candidates are split into contiguous index ranges; the
    concatenation is identical for every worker count.
    """
    jobs = [(q, n, lo, hi) for lo, hi in _split(q**n, max(1, workers) * 4)]
    parts = _map(_scan, jobs, workers)
    return np.concatenate(parts) if parts else np.empty((0, n), dtype=np.int64)


def _count_cliques(adj: np.ndarray, cand: np.ndarray, k: int) -> int:
    """Ordered k-tuples from ``cand`` that are pairwise adjacent."""
    if k == 0:
        return 1
    if k == 1:
        return len(cand)
    if k == 2:
        return int(adj[np.ix_(cand, cand)].sum())
    total = 0
    for u in cand:
        total += _count_cliques(adj, cand[adj[u, cand]], k - 1)
    return total


def brute_force_census(q: int, M: int, N: int, budget: int | None = None, workers: int = 1) -> CensusRecord:
    """Count dephased M x N partial Butson matrices by exhaustive search.

    Rows 2..M each range over the q**N exponent rows.  A row survives only if
    it is orthogonal to the first (all-zero) row, and tuples of surviving rows
    are then accepted pairwise, which is the same search with early
    rejection.  Raises :class:`BudgetExceeded` when ``q**((M-1)N)`` is over
    budget.
    """
    if q < 2 or M < 1 or N < 1:
        raise ValueError(f"need q >= 2, M >= 1, N >= 1; got q={q}, M={M}, N={N}")
    budget = default_budget() if budget is None else budget
    required = q ** ((M - 1) * N)
    if required > budget:
        raise BudgetExceeded(required, budget)
    if M == 1:
        return CensusRecord(q, M, N, 1, "brute")
    S = vanishing_rows(q, N, workers)
    if M == 2 or len(S) == 0:
        return CensusRecord(q, M, N, len(S), "brute")
    jobs = [(q, S, lo, hi) for lo, hi in _split(len(S), max(1, workers) * 4)]
    adj = np.concatenate(_map(_adjacency_block, jobs, workers))
    count = _count_cliques(adj, np.arange(len(S)), M - 1)
    return CensusRecord(q, M, N, count, "brute")
