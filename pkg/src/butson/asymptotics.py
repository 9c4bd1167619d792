"""Leading-order asymptotics for partial Butson probabilities.

Everything is evaluated as a natural logarithm and exponentiated once, since
the raw values under- or overflow doubles for moderate N.  Off the
arithmetic progression that supports a count, estimators return exactly 0,
matching the exact counters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .census import (
    count_m3_prime,
    count_prime_power_m2,
    count_q2,
    multinomial,
    multinomial_power_sum,
)
from .cyclotomic import factorization, is_prime

__all__ = [
    "UnsupportedFormula",
    "AsymptoticEstimate",
    "log_gamma",
    "log_multinomial",
    "log_fraction",
    "multinomial_power_sum_estimate",
    "p2_asymptotic",
    "p3_asymptotic",
    "pm_asymptotic_dll",
    "diagonal_return_asymptotics",
    "diagonal_origin_exact",
    "exact_counterpart",
]

_LOG_2PI = math.log(2 * math.pi)


class UnsupportedFormula(ValueError):
    pass


@dataclass(frozen=True)
class AsymptoticEstimate:
    formula: str
    inputs: dict = field(compare=False)
    log_value: float

    @property
    def value(self) -> float:
        """exp(log_value); may overflow to inf for raw multinomial sums, use log_value then."""
        if self.log_value == -math.inf:
            return 0.0
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def ratio(self, exact: Fraction | int) -> float:
        """exact / estimate, computed through logarithms."""
        if self.log_value == -math.inf:
            return math.nan if exact else 1.0
        return math.exp(log_fraction(exact) - self.log_value)


# Stirling series coefficients B_{2k} / (2k (2k - 1))
_STIRLING = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
    -3617 / 122400,
)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0 by the Stirling series.

    Arguments below 15 are shifted up with Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
    At x >= 15 the eight-term series is accurate to about 1e-17 relative;
    the absolute error is below 1e-13 on x >= 1.
    """
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    shift = 0.0
    while x < 15.0:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + 0.5 * _LOG_2PI + series - shift


def log_multinomial(n: int, parts) -> float:
    return log_gamma(n + 1) - sum(log_gamma(a + 1) for a in parts)


def log_fraction(x: Fraction | int) -> float:
    """Natural log of a positive rational with arbitrarily large numerator/denominator."""
    x = Fraction(x)
    if x <= 0:
        return -math.inf
    return math.log(x.numerator) - math.log(x.denominator)


def _est(formula: str, log_value: float, **inputs) -> AsymptoticEstimate:
    return AsymptoticEstimate(formula, inputs, log_value)


def multinomial_power_sum_estimate(s: int, p: int, n: int) -> AsymptoticEstimate:
    """Leading term of sum over a_1 + ... + a_s = n of multinomial(n; a)^p.

    s^(pn) sqrt(s^(s(p-1)) / (p^(s-1) (2 pi n)^((s-1)(p-1)))).
    """
    if s < 2 or p < 2 or n < 1:
        raise ValueError(f"need s >= 2, p >= 2, n >= 1; got s={s}, p={p}, n={n}")
    log_v = p * n * math.log(s) + 0.5 * (
        s * (p - 1) * math.log(s) - (s - 1) * math.log(p) - (s - 1) * (p - 1) * (_LOG_2PI + math.log(n))
    )
    return _est("multinomial_power_sum", log_v, s=s, p=p, n=n)


def p2_asymptotic(q: int, N: int) -> AsymptoticEstimate:
    """Two-row probability for q = p^k: sqrt(p^(2 - q/p) q^(q - q/p) / (2 pi N)^(q - q/p))."""
    f = factorization(q)
    if len(f) != 1:
        raise UnsupportedFormula(f"q={q} is not a prime power")
    p = f[0][0]
    if N < 1 or N % p:
        return _est("prime_power_m2", -math.inf, q=q, m=2, n=N)
    e = q - q // p
    log_v = 0.5 * ((2 - q // p) * math.log(p) + e * math.log(q) - e * (_LOG_2PI + math.log(N)))
    return _est("prime_power_m2", log_v, q=q, m=2, n=N)


def p3_asymptotic(p: int, N: int) -> AsymptoticEstimate:
    """Three-row probability over Z_p for p = 2 (needs 4 | N) and p = 3 (needs 3 | N)."""
    if p == 2:
        if N < 1 or N % 4:
            return _est("three_row", -math.inf, q=2, m=3, n=N)
        return _est("three_row", math.log(16) - 1.5 * (_LOG_2PI + math.log(N)), q=2, m=3, n=N)
    if p == 3:
        if N < 1 or N % 3:
            return _est("three_row", -math.inf, q=3, m=3, n=N)
        log_v = math.log(243 * math.sqrt(3)) - 3 * (_LOG_2PI + math.log(N))
        return _est("three_row", log_v, q=3, m=3, n=N)
    raise UnsupportedFormula(f"no three-row asymptotic for p={p}; only p in (2, 3)")


def pm_asymptotic_dll(M: int, N: int) -> AsymptoticEstimate:
    """De Launey-Levin estimate for partial Hadamard matrices: 2^((M-1)^2) / sqrt((2 pi N)^C(M,2))."""
    if M < 2:
        raise ValueError(f"need M >= 2, got {M}")
    if N < 1 or N % (2 if M == 2 else 4):
        return _est("dll", -math.inf, q=2, m=M, n=N)
    log_v = (M - 1) ** 2 * math.log(2) - 0.5 * math.comb(M, 2) * (_LOG_2PI + math.log(N))
    return _est("dll", log_v, q=2, m=M, n=N)


def diagonal_return_asymptotics(p: int, N: int, kind: str) -> AsymptoticEstimate:
    """Origin-only parts of the two-row counts at q = 2p and q = 3p.

    ``P2_origin``: all rows of the 2 x p multiplicity array equal, ~ 2 sqrt((p / 2 pi N)^p).
    ``P3_origin``: all rows of the 3 x p array equal, ~ 3 sqrt(3^p) (p / 2 pi N)^p.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    x = math.log(p) - _LOG_2PI - math.log(N) if N >= 1 else 0.0
    if kind == "P2_origin":
        if N < 1 or N % 2:
            return _est(kind, -math.inf, p=p, n=N)
        return _est(kind, math.log(2) + 0.5 * p * x, p=p, n=N)
    if kind == "P3_origin":
        if N < 1 or N % 3:
            return _est(kind, -math.inf, p=p, n=N)
        return _est(kind, math.log(3) + 0.5 * p * math.log(3) + p * x, p=p, n=N)
    raise UnsupportedFormula(f"unknown kind {kind!r}; expected P2_origin or P3_origin")


def diagonal_origin_exact(p: int, N: int, kind: str) -> Fraction:
    """Exact origin-only term matching :func:`diagonal_return_asymptotics`.

    Rows of the multiplicity array all equal to a means every exponent block
    has multiplicity a_i, so the count factors as
    multinomial(N; N/r, ..., N/r) * sum_a multinomial(N/r; a)^r with r rows.
    """
    r = {"P2_origin": 2, "P3_origin": 3}.get(kind)
    if r is None:
        raise UnsupportedFormula(f"unknown kind {kind!r}")
    if N % r:
        return Fraction(0)
    count = multinomial(N, (N // r,) * r) * multinomial_power_sum(p, r, N // r)
    return Fraction(count, (r * p) ** N)


def exact_counterpart(estimate: AsymptoticEstimate) -> Fraction | int:
    """The exact quantity an estimate approximates, from the exact counters."""
    d = estimate.inputs
    f = estimate.formula
    if f == "multinomial_power_sum":
        return multinomial_power_sum(d["s"], d["p"], d["n"])
    if f == "prime_power_m2":
        return count_prime_power_m2(d["q"], d["n"]).probability
    if f == "three_row":
        return count_m3_prime(d["q"], d["n"]).probability
    if f == "dll":
        if d["m"] > 4:
            raise UnsupportedFormula("exact partial Hadamard counts are closed-form only for M <= 4")
        return count_q2(d["m"], d["n"]).probability
    if f in ("P2_origin", "P3_origin"):
        return diagonal_origin_exact(d["p"], d["n"], f)
    raise UnsupportedFormula(f"no exact counterpart for {f!r}")
