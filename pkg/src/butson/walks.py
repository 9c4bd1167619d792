"""Random-walk views of the counting problem.

Two walks appear here.  For q = 2p, a dephased two-row matrix corresponds
to a simple walk on Z^p ending on the diagonal {(t, ..., t)}; this is
computed exactly by dynamic programming.  For general (q, M), a matrix is
a walk whose steps are the pair-product vectors T(e) = (e_i conj(e_j))_{i<j}
of its columns, and it is partial Butson iff the walk returns to the origin;
that probability is estimated by Monte Carlo.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .cyclotomic import remainder_matrix
from .matrices import BudgetExceeded, brute_force_census

__all__ = [
    "DEFAULT_DP_BUDGET",
    "WalkDistribution",
    "IncrementSampler",
    "MCEstimate",
    "walk_distribution",
    "diagonal_return_count",
    "exact_diagonal_return",
    "diagonal_point_count",
    "exact_origin_return",
    "mc_return_probability",
    "mc_return_estimate",
]

DEFAULT_DP_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class WalkDistribution:
    """Exact step counts of a walk on Z^D, stored densely on [-steps, steps]^D.

    ``counts[x + steps]`` is the number of step sequences ending at x, out
    of ``denominator`` equally likely sequences.
    """

    dimension: int
    steps_taken: int
    counts: np.ndarray
    denominator: int

    @property
    def weights(self) -> dict[tuple[int, ...], int]:
        off = self.steps_taken
        return {tuple(int(i) - off for i in idx): int(self.counts[idx]) for idx in zip(*np.nonzero(self.counts))}

    def at(self, point) -> int:
        idx = tuple(int(x) + self.steps_taken for x in point)
        if any(i < 0 or i >= self.counts.shape[0] for i in idx):
            return 0
        return int(self.counts[idx])

    def total(self) -> int:
        return int(sum(int(v) for v in self.counts.ravel())) if self.counts.dtype == object else int(self.counts.sum())


def walk_distribution(p: int, N: int, budget: int | None = None) -> WalkDistribution:
    """Distribution of the simple walk on Z^p after N steps (2p unit steps, equiprobable).

    Counts are exact: int64 while (2p)^N fits, Python integers otherwise.
    """
    if p < 1 or N < 0:
        raise ValueError(f"need p >= 1 and N >= 0, got p={p}, N={N}")
    budget = DEFAULT_DP_BUDGET if budget is None else budget
    side = 2 * N + 1
    states = side**p
    if states > budget:
        raise BudgetExceeded(states, budget, "lattice states")
    den = (2 * p) ** N
    dtype = np.int64 if den < 2**62 else object
    counts = np.zeros((side,) * p, dtype=dtype)
    counts[(N,) * p] = 1
    for _ in range(N):
        nxt = np.zeros_like(counts)
        for axis in range(p):
            # support stays within radius N, so wrap-around only moves zeros
            nxt += np.roll(counts, 1, axis=axis)
            nxt += np.roll(counts, -1, axis=axis)
        counts = nxt
    return WalkDistribution(p, N, counts, den)


def diagonal_return_count(p: int, N: int, budget: int | None = None) -> int:
    """Number of N-step walks on Z^p that end at some (t, ..., t)."""
    dist = walk_distribution(p, N, budget)
    return sum(dist.at((t,) * p) for t in range(-N, N + 1))


def exact_diagonal_return(p: int, N: int, budget: int | None = None) -> Fraction:
    return Fraction(diagonal_return_count(p, N, budget), (2 * p) ** N)


def diagonal_point_count(p: int, N: int, t: int) -> int:
    """Walks on Z^p of length N ending at (t, ..., t), without a lattice DP.

    Split the N steps among the p axes (multinomial), then each axis is a
    one-dimensional walk of n steps ending at t: C(n, (n + t) / 2) ways.
    Convolving over the axes costs O(p N^2) binomials.
    """
    t = abs(t)

    def line(n):
        return math.comb(n, (n + t) // 2) if n >= t and (n - t) % 2 == 0 else 0

    # ways[m] = sequences of m steps spread over the axes handled so far
    ways = [line(m) for m in range(N + 1)]
    for _ in range(p - 1):
        ways = [sum(math.comb(m, n) * line(n) * ways[m - n] for n in range(m + 1)) for m in range(N + 1)]
    return ways[N]


def exact_origin_return(q: int, M: int, N: int, budget: int | None = None) -> Fraction:
    """Probability that the pair-product walk returns to the origin after N steps.

    This is the probability that a uniformly random M x N matrix over Z_q is
    partial Butson, so it is computed by the brute-force census.
    """
    return brute_force_census(q, M, N, budget).probability


@dataclass(frozen=True)
class IncrementSampler:
    """Draws pair-product increments T(e), e uniform on Z_q^M, in exponent form.

    Coordinate (i, j), i < j, of T(e) is w^(e_i - e_j).  T(c e) = T(e), so
    uniform e induces the increment law on the set of pair-product vectors.
    """

    q: int
    M: int
    seed: int = 0

    @property
    def D(self) -> int:
        return self.M * (self.M - 1) // 2

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.M), 2))

    def increments(self, e: np.ndarray) -> np.ndarray:
        """Map columns e (..., M) to exponent increments (..., D)."""
        i, j = np.array(self.pairs, dtype=np.int64).reshape(-1, 2).T
        return (e[..., i] - e[..., j]) % self.q

    def rng(self, worker: int = 0) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(worker,))))

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        size = (size,) if isinstance(size, int) else tuple(size)
        e = rng.integers(0, self.q, size=size + (self.M,), dtype=np.int64)
        return self.increments(e)


class MCEstimate(NamedTuple):
    estimate: float
    stderr: float
    hits: int
    samples: int


_BATCH = 1 << 15


def _mc_shard(args) -> int:
    q, M, N, seed, worker, samples = args
    sampler = IncrementSampler(q, M, seed)
    rng = sampler.rng(worker)
    R = remainder_matrix(q)
    hits = 0
    done = 0
    while done < samples:
        b = min(_BATCH, samples - done)
        steps = sampler.draw(rng, (b, N))  # (b, N, D)
        # sum of the walk, coordinatewise, reduced mod Phi_q
        acc = np.zeros((b, sampler.D, R.shape[1]), dtype=np.int64)
        for col in range(N):
            acc += R[steps[:, col]]
        hits += int((~acc.reshape(b, -1).any(axis=1)).sum())
        done += b
    return hits


def mc_return_estimate(q: int, M: int, N: int, samples: int, seed: int = 42, workers: int = 1) -> MCEstimate:
    """Monte Carlo return-to-origin estimate with hit counts.

    Samples are split into ``workers`` shards; shard w draws from the PCG64
    stream seeded by ``SeedSequence(seed, spawn_key=(w,))``.  The result
    depends on (seed, workers) only, not on how the shards are scheduled.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if q < 2 or M < 2 or N < 1:
        raise ValueError(f"need q >= 2, M >= 2, N >= 1; got q={q}, M={M}, N={N}")
    workers = max(1, workers)
    sizes = [samples // workers + (w < samples % workers) for w in range(workers)]
    jobs = [(q, M, N, seed, w, n) for w, n in enumerate(sizes) if n]
    if workers == 1 or len(jobs) == 1:
        hits = sum(_mc_shard(job) for job in jobs)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_mc_shard, jobs))
    p = hits / samples
    return MCEstimate(p, math.sqrt(p * (1 - p) / samples), hits, samples)


def mc_return_probability(q: int, M: int, N: int, samples: int, seed: int = 42, workers: int = 1) -> tuple[float, float]:
    est = mc_return_estimate(q, M, N, samples, seed, workers)
    return est.estimate, est.stderr
