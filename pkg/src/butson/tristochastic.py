"""Tristochastic matrices: equal row, column and broken-diagonal sums.

Diagonal d of a p x p matrix is the set of cells ``(i, (i + d) % p)``;
anti-diagonals are not constrained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "TristochasticMatrix",
    "is_tristochastic",
    "enumerate_tristochastic",
    "iter_tristochastic",
    "count_tristochastic",
    "line_sums",
]


@dataclass(frozen=True)
class TristochasticMatrix:
    p: int
    entries: tuple[tuple[int, ...], ...]
    line_sum: int

    def __post_init__(self):
        if not is_tristochastic(self.entries) or (self.p and sum(self.entries[0]) != self.line_sum):
            raise ValueError("not tristochastic with the declared line sum")

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)

    def __str__(self):
        return ";".join(",".join(map(str, row)) for row in self.entries)


def line_sums(A: Sequence[Sequence[int]]) -> tuple[list[int], list[int], list[int]]:
    """Row sums, column sums, and diagonal sums (diagonal d holds cells (i, i+d mod p))."""
    p = len(A)
    if any(len(row) != p for row in A):
        raise ValueError("matrix must be square")
    rows = [sum(row) for row in A]
    cols = [sum(A[i][j] for i in range(p)) for j in range(p)]
    diags = [sum(A[i][(i + d) % p] for i in range(p)) for d in range(p)]
    return rows, cols, diags


def is_tristochastic(A: Sequence[Sequence[int]]) -> bool:
    if any(v < 0 for row in A for v in row):
        raise ValueError("entries must be nonnegative")
    rows, cols, diags = line_sums(A)
    return len(set(rows + cols + diags)) <= 1


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` with part k at most bounds[k], in lex order."""
    k = len(bounds)
    if k == 1:
        if total <= bounds[0]:
            yield (total,)
        return
    rest = sum(bounds[1:])
    for v in range(max(0, total - rest), min(total, bounds[0]) + 1):
        for tail in _bounded_compositions(total - v, bounds[1:]):
            yield (v,) + tail


@lru_cache(maxsize=64)
def _all_compositions(total: int, parts: int) -> np.ndarray:
    return np.array(list(_bounded_compositions(total, [total] * parts)), dtype=np.int64).reshape(-1, parts)


def _row_filler(p: int, s: int):
    """Row-by-row search state shared by enumeration and counting.

    Row i places entry ``A[i][j]`` into column j and diagonal ``(j - i) % p``,
    so a partial matrix is summarised by the remaining column and diagonal
    budgets.  ``completions`` is memoised on that summary, which prunes every
    branch that cannot reach a full matrix.  The final two rows are forced by
    the budgets, so the last free row is handled in one vectorised step.
    """

    def place(i, cols, diags, row):
        cols = tuple(c - v for c, v in zip(cols, row))
        diags = list(diags)
        for j, v in enumerate(row):
            diags[(j - i) % p] -= v
        return cols, tuple(diags)

    def candidates(i, cols, diags) -> np.ndarray:
        bounds = np.array([min(cols[j], diags[(j - i) % p]) for j in range(p)])
        comps = _all_compositions(s, p)
        return comps[(comps <= bounds).all(axis=1)]

    def tails(i, cols, diags) -> np.ndarray:
        """All valid rows i, i+1, i+2 = p-1 as an array of shape (k, 3, p)."""
        C = candidates(i, cols, diags)
        shift = [(d + i) % p for d in range(p)]
        cols1 = np.asarray(cols) - C
        diags1 = np.asarray(diags) - C[:, shift]
        # row i+1 = r, row p-1 = cols1 - r; diagonal (k - i - 1) % p then
        # reads r[k] + cols1[k+1] - r[k+1], which fixes r up to a constant
        i2 = i + 1
        offs = np.zeros((len(C), p + 1), dtype=np.int64)
        for k in range(p):
            offs[:, k + 1] = offs[:, k] + cols1[:, (k + 1) % p] - diags1[:, (k - i2) % p]
        rest = s - offs[:, :p].sum(axis=1)
        ok = (offs[:, p] == 0) & (rest % p == 0)
        r = (rest // p)[:, None] + offs[:, :p]
        dbound = diags1[:, [(j - i2) % p for j in range(p)]]
        ok &= ((r >= 0) & (r <= cols1) & (r <= dbound)).all(axis=1)
        return np.stack([C[ok], r[ok], cols1[ok] - r[ok]], axis=1)

    @lru_cache(maxsize=None)
    def completions(i, cols, diags) -> int:
        if i == p - 3:
            return len(tails(i, cols, diags))
        total = 0
        for row in candidates(i, cols, diags).tolist():
            total += completions(i + 1, *place(i, cols, diags, row))
        return total

    return place, candidates, tails, completions


def enumerate_tristochastic(p: int, line_sum: int) -> list[TristochasticMatrix]:
    """Every p x p tristochastic matrix with the given line sum, lex-ordered on flattened entries."""
    if p < 2 or line_sum < 0:
        raise ValueError(f"need p >= 2 and line_sum >= 0, got p={p}, line_sum={line_sum}")
    return list(_backtrack(p, line_sum))


def _backtrack(p: int, s: int) -> Iterator[TristochasticMatrix]:
    # rows come out lex-ordered: candidates are lex and the walk is depth-first
    if p == 2:
        for a in range(s + 1):
            rows = ((a, s - a), (s - a, a))
            if is_tristochastic(rows):
                yield TristochasticMatrix(2, rows, s)
        return
    place, candidates, tails, completions = _row_filler(p, s)

    def walk(i, cols, diags):
        if i == p - 3:
            for block in tails(i, cols, diags).tolist():
                yield tuple(tuple(r) for r in block)
            return
        for row in candidates(i, cols, diags).tolist():
            nxt = place(i, cols, diags, row)
            if completions(i + 1, *nxt):
                for tail in walk(i + 1, *nxt):
                    yield (tuple(row),) + tail

    for rows in walk(0, (s,) * p, (s,) * p):
        yield TristochasticMatrix(p, rows, s)


def _circulant(p: int, s: int) -> Iterator[TristochasticMatrix]:
    if p == 2:
        if s % 2 == 0:
            a = s // 2
            yield TristochasticMatrix(2, ((a, a), (a, a)), s)
        return
    for a in range(s + 1):
        for b in range(s - a + 1):
            c = s - a - b
            yield TristochasticMatrix(3, ((a, b, c), (b, c, a), (c, a, b)), s)


def iter_tristochastic(p: int, line_sum: int) -> Iterator[TristochasticMatrix]:
    """Like :func:`enumerate_tristochastic` but lazy.

    For p = 2 and p = 3 every solution has the form (a a; a a) resp. the
    circulant (a b c; b c a; c a b), so those are generated directly.
    """
    if p < 2 or line_sum < 0:
        raise ValueError(f"need p >= 2 and line_sum >= 0, got p={p}, line_sum={line_sum}")
    if p in (2, 3):
        return _circulant(p, line_sum)
    return _backtrack(p, line_sum)


def count_tristochastic(p: int, line_sum: int) -> int:
    if p < 2 or line_sum < 0:
        raise ValueError(f"need p >= 2 and line_sum >= 0, got p={p}, line_sum={line_sum}")
    if p == 2:
        return int(line_sum % 2 == 0)
    if p == 3:
        return math.comb(line_sum + 2, 2)
    completions = _row_filler(p, line_sum)[-1]
    return completions(0, (line_sum,) * p, (line_sum,) * p)
