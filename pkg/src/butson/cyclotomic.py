"""Exact arithmetic for sums of q-th roots of unity.

A multiset of q-th roots is stored as a :class:`MultiplicityVector`, i.e. the
element ``sum(counts[j] * x**j)`` of the semigroup algebra N[Z_q].  Whether
the corresponding complex sum vanishes is decided by exact polynomial
division by the cyclotomic polynomial, never by floating point.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "IntPolynomial",
    "MultiplicityVector",
    "CycleDecomposition",
    "prime_factors",
    "is_prime",
    "cyclotomic_polynomial",
    "remainder_matrix",
    "is_vanishing_sum",
    "cycle_decomposition",
    "admissible_length",
    "vanishing_vectors",
]


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def factorization(n: int) -> list[tuple[int, int]]:
    """``[(p, k), ...]`` with ``n = prod(p**k)``."""
    out = []
    for p in prime_factors(n):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append((p, k))
    return out


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ``coefficients[k]`` multiplying x**k."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Exact long division by a monic divisor; stays in Z[x]."""
        d = divisor.coefficients
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coefficients)
        dd = len(d) - 1
        if len(rem) <= dd:
            return IntPolynomial(()), IntPolynomial(tuple(rem))
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for i in range(dd + 1):
                    rem[k - dd + i] -= c * d[i]
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]))

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef} {mono}")
            else:
                terms.append(f"{'-' if c < 0 else '+'} {abs(c)}{mono}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


_phi_lock = threading.Lock()
_phi_cache: dict[int, IntPolynomial] = {}


def cyclotomic_polynomial(q: int) -> IntPolynomial:
    """The q-th cyclotomic polynomial, by dividing x^q - 1 by Phi_d for d | q, d < q.

    >>> str(cyclotomic_polynomial(6))
    'x^2 - x + 1'
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    with _phi_lock:
        if q in _phi_cache:
            return _phi_cache[q]
    num = IntPolynomial((-1,) + (0,) * (q - 1) + (1,))
    for d in range(1, q):
        if q % d == 0:
            num, rem = num.divmod_monic(cyclotomic_polynomial(d))
            assert rem.is_zero()
    with _phi_lock:
        _phi_cache.setdefault(q, num)
        return _phi_cache[q]


@lru_cache(maxsize=None)
def _remainder_matrix(q: int) -> np.ndarray:
    phi = cyclotomic_polynomial(q)
    rows = []
    for j in range(q):
        _, r = IntPolynomial((0,) * j + (1,)).divmod_monic(phi)
        c = list(r.coefficients) + [0] * (phi.degree - len(r.coefficients))
        rows.append(c)
    m = np.array(rows, dtype=np.int64).reshape(q, phi.degree)
    m.setflags(write=False)
    return m


def remainder_matrix(q: int) -> np.ndarray:
    """Integer matrix R, shape ``(q, deg Phi_q)``, whose row j is x^j mod Phi_q.

    A count vector ``c`` is vanishing iff ``c @ R == 0``; this is the
    vectorised form of :func:`is_vanishing_sum` used by the enumerators.
    """
    return _remainder_matrix(q)


@dataclass(frozen=True)
class MultiplicityVector:
    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if len(counts) != self.q:
            raise ValueError(f"expected {self.q} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_exponents(cls, q: int, exponents: Sequence[int]) -> MultiplicityVector:
        counts = [0] * q
        for e in exponents:
            counts[int(e) % q] += 1
        return cls(q, tuple(counts))

    def total(self) -> int:
        return sum(self.counts)

    def rotate(self, r: int) -> MultiplicityVector:
        """Multiply every root by w**r."""
        r %= self.q
        return MultiplicityVector(self.q, self.counts[-r:] + self.counts[:-r] if r else self.counts)

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.counts)

    def complex_sum(self) -> complex:
        w = np.exp(2j * np.pi * np.arange(self.q) / self.q)
        return complex(np.dot(self.counts, w))


@dataclass(frozen=True)
class CycleDecomposition:
    """Terms ``(p, r, m)``: m copies of the p-cycle w^r (1 + w^(q/p) + ... )."""

    q: int
    terms: tuple[tuple[int, int, int], ...]

    def expand(self) -> MultiplicityVector:
        counts = [0] * self.q
        for p, r, m in self.terms:
            step = self.q // p
            for k in range(p):
                counts[r + k * step] += m
        return MultiplicityVector(self.q, tuple(counts))


def is_vanishing_sum(v: MultiplicityVector) -> bool:
    _, rem = v.polynomial().divmod_monic(cyclotomic_polynomial(v.q))
    return rem.is_zero()


def cycle_decomposition(v: MultiplicityVector) -> CycleDecomposition | None:
    """Write ``v`` as a nonnegative sum of rotated prime cycles, or return None.

    Depth-first search: the lowest occupied exponent must be covered by some
    cycle, so branch over the primes dividing q (increasing) and recurse.
    Dead ends are memoised on the residual counts.
    """
    if not is_vanishing_sum(v):
        return None
    q = v.q
    cycles = []
    for p in prime_factors(q):
        step = q // p
        cycles.append((p, step))
    dead: set[tuple[int, ...]] = set()

    def search(counts: list[int], used: list[tuple[int, int]]) -> bool:
        try:
            j = next(i for i, c in enumerate(counts) if c)
        except StopIteration:
            return True
        key = tuple(counts)
        if key in dead:
            return False
        for p, step in cycles:
            r = j % step
            idx = [r + k * step for k in range(p)]
            if all(counts[i] > 0 for i in idx):
                for i in idx:
                    counts[i] -= 1
                used.append((p, r))
                if search(counts, used):
                    return True
                used.pop()
                for i in idx:
                    counts[i] += 1
        dead.add(key)
        return False

    used: list[tuple[int, int]] = []
    if not search(list(v.counts), used):
        return None
    merged: dict[tuple[int, int], int] = {}
    for key in used:
        merged[key] = merged.get(key, 0) + 1
    terms = tuple((p, r, m) for (p, r), m in sorted(merged.items()))
    return CycleDecomposition(q, terms)


def admissible_length(q: int, N: int) -> bool:
    """True iff N is a nonnegative integer combination of the primes dividing q."""
    if N < 0:
        return False
    reach = [False] * (N + 1)
    reach[0] = True
    for p in prime_factors(q):
        for n in range(p, N + 1):
            if reach[n - p]:
                reach[n] = True
    return reach[N]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def vanishing_vectors(q: int, N: int) -> Iterator[MultiplicityVector]:
    """All vanishing multisets of N q-th roots of unity."""
    R = remainder_matrix(q)
    for counts in _compositions(N, q):
        if not np.any(np.asarray(counts, dtype=np.int64) @ R):
            yield MultiplicityVector(q, counts)
