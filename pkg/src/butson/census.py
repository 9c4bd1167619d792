"""Exact closed-form counts of dephased partial Butson matrices.

Every counter sums multinomial coefficients over the block multiplicities
of the matrix in standard form, so all arithmetic is on Python integers.
Each one is checked against :func:`butson.matrices.brute_force_census`.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import factorization, is_prime, prime_factors
from .matrices import CensusRecord
from .tristochastic import iter_tristochastic

__all__ = [
    "UnsupportedFamily",
    "FactorialTable",
    "multinomial",
    "compositions",
    "count_q2",
    "count_prime_power_m2",
    "count_two_prime_m2",
    "two_prime_m2_terms",
    "count_m3_prime",
    "multinomial_power_sum",
    "check_two_prime_structure",
    "two_prime_array",
    "closed_form_method",
    "closed_form_census",
]


class UnsupportedFamily(ValueError):
    """No closed form applies to the requested (q, M)."""


class FactorialTable:
    def __init__(self, n: int):
        self.fact = [1] * (n + 1)
        for k in range(2, n + 1):
            self.fact[k] = self.fact[k - 1] * k

    def multinomial(self, n: int, parts: Sequence[int]) -> int:
        den = 1
        for a in parts:
            den *= self.fact[a]
        return self.fact[n] // den


def multinomial(N: int, parts: Sequence[int]) -> int:
    """N! / prod(a!) for a composition ``parts`` of N."""
    if any(a < 0 for a in parts) or sum(parts) != N:
        raise ValueError(f"parts {tuple(parts)} do not form a composition of {N}")
    den = 1
    for a in parts:
        den *= math.factorial(a)
    return math.factorial(N) // den


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` nonnegative parts, colex order.

    Starts at (total, 0, ..., 0).  The successor moves one unit from the
    leftmost nonzero part j < parts-1 into part j+1 and dumps the rest of
    part j into part 0.
    """
    if parts < 1 or total < 0:
        if parts == 0 and total == 0:
            yield ()
        return
    c = [0] * parts
    c[0] = total
    while True:
        yield tuple(c)
        j = next((i for i, v in enumerate(c) if v), parts - 1)
        if j == parts - 1:
            return
        v = c[j]
        c[j] = 0
        c[0] = v - 1
        c[j + 1] += 1


def _record(q, M, N, dephased, method):
    return CensusRecord(q, M, N, dephased, method)


def count_q2(M: int, N: int) -> CensusRecord:
    """Partial Hadamard matrices with M = 2, 3, 4 rows."""
    if M not in (2, 3, 4):
        raise UnsupportedFamily(f"q=2 closed forms exist for M in (2, 3, 4), not M={M}")
    if M == 2:
        n = N // 2 if N % 2 == 0 else None
        dephased = math.comb(N, n) if n is not None else 0
    elif N % 4:
        dephased = 0
    elif M == 3:
        k = N // 4
        dephased = multinomial(N, (k, k, k, k))
    else:
        F = FactorialTable(N)
        dephased = 0
        for a, b in compositions(N // 4, 2):
            dephased += F.multinomial(N, (a, b, b, a, b, a, a, b))
    return _record(2, M, N, dephased, "closed_q2")


def _prime_power(q: int) -> tuple[int, int]:
    f = factorization(q)
    if len(f) != 1:
        raise UnsupportedFamily(f"q={q} is not a prime power")
    return f[0]


def count_prime_power_m2(q: int, N: int) -> CensusRecord:
    """Two-row matrices over Z_q, q = p^k.

    The second row of a dephased matrix is a union of p-cycles: exponent m
    and its translates m + j*q/p all appear a_m times, with sum a = N/p.
    """
    p, _ = _prime_power(q)
    if N % p:
        return _record(q, 2, N, 0, "closed_prime_power")
    F = FactorialTable(N)
    total = 0
    for a in compositions(N // p, q // p):
        total += F.multinomial(N, a * p)
    return _record(q, 2, N, total, "closed_prime_power")


def _two_prime_shape(q: int, small: int | None) -> tuple[int, int]:
    candidates = []
    for r in (2, 3):
        if q % r == 0:
            p = q // r
            if is_prime(p) and p != r and (r == 3 or p % 2 == 1):
                candidates.append((r, p))
    if small is not None:
        candidates = [c for c in candidates if c[0] == small]
    if not candidates:
        want = f"{small}p" if small else "2p or 3p"
        raise UnsupportedFamily(f"q={q} is not of the form {want} with p a suitable prime")
    return candidates[0]


def two_prime_m2_terms(q: int, N: int, small: int | None = None) -> dict[tuple[int, ...], int]:
    """Contributions to the dephased two-row count, keyed by row offsets.

    For q = 2p the multiplicity matrix A (2 x p) has rows a and a + t, keyed
    by ``(t,)`` with t >= 0 and both row orders folded in.  For q = 3p the
    rows are a, a + t, a + s + t, keyed by ``(s, t)``; the row orders give
    weight 6 when s, t >= 1, weight 3 when exactly one vanishes, 1 otherwise.
    """
    r, p = _two_prime_shape(q, small)
    F = FactorialTable(N)
    terms: dict[tuple[int, ...], int] = {}
    if r == 2:
        for t in range(0, N // p + 1):
            rest = N - p * t
            if rest % 2:
                continue
            acc = 0
            for a in compositions(rest // 2, p):
                acc += F.multinomial(N, [x for ai in a for x in (ai, ai + t)])
            if acc:
                terms[(t,)] = acc * (1 if t == 0 else 2)
        return terms
    for t in range(0, N // (2 * p) + 1):
        for s in range(0, (N - 2 * p * t) // p + 1):
            rest = N - p * (s + 2 * t)
            if rest % 3:
                continue
            acc = 0
            for a in compositions(rest // 3, p):
                acc += F.multinomial(N, [x for ai in a for x in (ai, ai + t, ai + s + t)])
            if acc:
                weight = 6 if (s and t) else (3 if (s or t) else 1)
                terms[(s, t)] = acc * weight
    return terms


def count_two_prime_m2(q: int, N: int, small: int | None = None) -> CensusRecord:
    """Two-row matrices over Z_q for q = 2p (p odd prime) or q = 3p (p prime, p != 3).

    ``small`` picks the reading when both apply (q = 6): 2 for 2 * 3, 3 for 3 * 2.
    """
    total = sum(two_prime_m2_terms(q, N, small).values())
    return _record(q, 2, N, total, "closed_two_prime")


def count_m3_prime(p: int, N: int) -> CensusRecord:
    """Three-row matrices over Z_p, p prime, indexed by tristochastic matrices with line sum N/p."""
    if not is_prime(p):
        raise UnsupportedFamily(f"p={p} is not prime")
    if N % p:
        return _record(p, 3, N, 0, "closed_tristochastic")
    F = FactorialTable(N)
    total = 0
    for A in iter_tristochastic(p, N // p):
        total += F.multinomial(N, A.flat())
    return _record(p, 3, N, total, "closed_tristochastic")


def multinomial_power_sum(s: int, p: int, n: int, method: str = "recursive") -> int:
    """Sum over compositions a of n into s parts of multinomial(n; a) ** p.

    ``method="compositions"`` walks every composition.  The default peels
    off the first part, multinomial(m; a, rest) = C(m, a) multinomial(m - a; rest),
    giving S_k(m) = sum_a C(m, a)**p S_{k-1}(m - a) in O(s n^2) binomials.
    """
    if s < 1 or n < 0:
        raise ValueError(f"need s >= 1 and n >= 0, got s={s}, n={n}")
    if method == "compositions":
        F = FactorialTable(n)
        return sum(F.multinomial(n, a) ** p for a in compositions(n, s))
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    if s == 1:
        return 1
    if s == 2:
        return sum(c**p for c in _binomial_row(n))
    # levels[k - 3][m] = S_k(m) for 3 <= k < s, filled as Pascal rows stream by
    levels = [[0] * (n + 1) for _ in range(s - 3)]
    two = [0] * (n + 1)  # S_2(m)
    row = [1]
    for m in range(n + 1):
        pw = [c**p for c in row]
        two[m] = sum(pw)
        prev = two
        for level in levels:
            level[m] = sum(pw[a] * prev[m - a] for a in range(m + 1))
            prev = level
        if m == n:
            return sum(pw[a] * prev[m - a] for a in range(m + 1))
        row = [1] + [row[a] + row[a + 1] for a in range(m)] + [1]
    raise AssertionError("unreachable")


def _binomial_row(n: int) -> list[int]:
    row = [1] * (n + 1)
    for a in range(n):
        row[a + 1] = row[a] * (n - a) // (a + 1)
    return row


def two_prime_array(counts: Sequence[int], p1: int) -> np.ndarray:
    """Arrange a length-q multiplicity vector as the CRT array A[z mod p1^k1, z mod p2^k2]."""
    q = len(counts)
    f = dict(factorization(q))
    if len(f) != 2 or p1 not in f:
        raise ValueError(f"q={q} must have exactly two prime factors including {p1}")
    (p2,) = [p for p in f if p != p1]
    P, Q = p1 ** f[p1], p2 ** f[p2]
    A = np.zeros((P, Q), dtype=np.int64)
    for z, c in enumerate(counts):
        A[z % P, z % Q] = c
    return A


def check_two_prime_structure(A, q: int) -> bool:
    """Decide whether A[(i,j),(x,y)] = B[i,j,y] + C[j,x,y] with B, C >= 0.

    Row index u of A splits as u = i * p1^(k1-1) + j, column v as
    v = x * p2^(k2-1) + y.  For fixed (j, y) the p1 x p2 slice must be of
    the form B_i + C_x; with A >= 0 such a splitting can always be chosen
    nonnegative (take B_i relative to the smallest row).
    """
    A = np.asarray(A, dtype=np.int64)
    f = factorization(q)
    if len(f) != 2:
        raise ValueError(f"q={q} must have exactly two prime factors")
    (pa, ka), (pb, kb) = f
    if A.shape == (pa**ka, pb**kb):
        (p1, k1), (p2, k2) = (pa, ka), (pb, kb)
    elif A.shape == (pb**kb, pa**ka):
        (p1, k1), (p2, k2) = (pb, kb), (pa, ka)
    else:
        raise ValueError(f"shape {A.shape} does not match q={q}")
    if (A < 0).any():
        raise ValueError("A must be nonnegative")
    P, Q = p1 ** (k1 - 1), p2 ** (k2 - 1)
    for j in range(P):
        for y in range(Q):
            S = A[j::P, y::Q]  # rows i*P + j, columns x*Q + y
            if not (S - S[:, :1] == S[:1, :] - S[0, 0]).all():
                return False
            lo = S[:, 0].argmin()
            B = S[:, 0] - S[lo, 0]
            C = S[lo, :]
            if (B < 0).any() or (C < 0).any():
                return False
    return True


def closed_form_method(q: int, M: int) -> str | None:
    """Name of the closed-form counter that applies to (q, M), if any."""
    if q == 2 and M in (2, 3, 4):
        return "closed_q2"
    if M == 2:
        if len(prime_factors(q)) == 1:
            return "closed_prime_power"
        try:
            _two_prime_shape(q, None)
            return "closed_two_prime"
        except UnsupportedFamily:
            return None
    if M == 3 and is_prime(q):
        return "closed_tristochastic"
    return None


def closed_form_census(q: int, M: int, N: int) -> CensusRecord:
    method = closed_form_method(q, M)
    if method == "closed_q2":
        return count_q2(M, N)
    if method == "closed_prime_power":
        return count_prime_power_m2(q, N)
    if method == "closed_two_prime":
        return count_two_prime_m2(q, N)
    if method == "closed_tristochastic":
        return count_m3_prime(q, N)
    raise UnsupportedFamily(
        f"no closed form for q={q}, M={M}; closed forms cover q=2 with M<=4, "
        "M=2 with q a prime power, 2p or 3p, and M=3 with q prime"
    )
