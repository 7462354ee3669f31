"""Exact distributions of the number of summands.

Row ``n`` of a :class:`CountTable` holds ``p[n][k]``, the number of integers
whose decomposition has exactly ``k`` summands, among

* b-bin: integers in ``[0, a_{bn})``, i.e. decompositions over the first ``n`` bins;
* factorial: integers in ``[0, (n+1)!)``, i.e. digits in radices ``2..n+1``.

Counts and moments are exact; floats only appear in the closed forms and the
Kolmogorov-Smirnov comparison against the standard normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist
from typing import Union

import mpmath

GF_PRECISION_BITS = 128


@dataclass(frozen=True)
class CountTable:
    system: Union[int, str]  # bin width b, or "factorial"
    rows: tuple[tuple[int, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def total(self, n: int) -> int:
        return sum(self.rows[n])

    def gf_value(self, n: int, y) -> Fraction:
        """``g_n(y) = sum_k p[n][k] y^k`` evaluated exactly."""
        y = Fraction(y)
        acc = Fraction(0)
        for c in reversed(self.rows[n]):
            acc = acc * y + c
        return acc


@dataclass(frozen=True)
class MomentSummary:
    n: int
    mean: Fraction
    variance: Fraction


@dataclass(frozen=True)
class DistributionReport:
    n: int
    points: tuple[float, ...]
    probabilities: tuple[float, ...]
    ks_statistic: float


class DegenerateDistributionError(ValueError):
    pass


def count_table_bbin(b: int, n_max: int) -> CountTable:
    """Fill ``p[n][k] = p[n-1][k] + b p[n-1][k-1] - p[n-2][k-2]`` from ``p[0][0] = 1``."""
    if b < 3:
        raise ValueError(f"b-bin tables need b >= 3, got {b}")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows: list[list[int]] = [[1]]

    def get(n: int, k: int) -> int:
        if n < 0 or k < 0 or k >= len(rows[n]):
            return 0
        return rows[n][k]

    for n in range(1, n_max + 1):
        row = [get(n - 1, k) + b * get(n - 1, k - 1) - get(n - 2, k - 2) for k in range(n + 1)]
        rows.append(row)
    return CountTable(b, tuple(tuple(r) for r in rows))


def count_table_factorial(n_max: int) -> CountTable:
    """Row ``n`` is the coefficient list of ``prod_{i=1..n} (1 + i y)``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = [(1,)]
    cur = [1]
    for i in range(1, n_max + 1):
        nxt = cur + [0]
        for k in range(len(cur)):
            nxt[k + 1] += i * cur[k]
        cur = nxt
        rows.append(tuple(cur))
    return CountTable("factorial", tuple(rows))


def stirling_first_kind(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind, ``c(n+1, k) = n c(n, k) + c(n, k-1)``."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    row = [1]  # c(0, .)
    for m in range(n):
        nxt = [0] * (m + 2)
        for j, c in enumerate(row):
            nxt[j] += m * c
            nxt[j + 1] += c
        row = nxt
    return row[k]


def gf_closed_form_gn(b: int, n: int, y, prec: int = GF_PRECISION_BITS) -> mpmath.mpf:
    """Closed form of ``g_n(y)`` for the b-bin table, at ``prec`` bits."""
    if b < 3:
        raise ValueError(f"closed form needs b >= 3, got {b}")
    y = Fraction(y)
    if y <= 0:
        raise ValueError("y must be positive")
    with mpmath.workprec(prec):
        yy = mpmath.mpf(y.numerator) / y.denominator
        root = mpmath.sqrt((b * b - 4) * yy * yy + 2 * b * yy + 1)
        base = b * yy + 1
        val = ((base + root) ** (n + 1) - (base - root) ** (n + 1)) / (2 ** (n + 1) * root)
        return +val


def moments(table: CountTable, n: int) -> MomentSummary:
    """Exact mean and variance of the summand count in row ``n``."""
    if not 0 <= n <= table.n_max:
        raise ValueError(f"row {n} outside table 0..{table.n_max}")
    row = table.rows[n]
    total = sum(row)
    s1 = sum(k * c for k, c in enumerate(row))
    s2 = sum(k * k * c for k, c in enumerate(row))
    mean = Fraction(s1, total)
    return MomentSummary(n, mean, Fraction(s2, total) - mean * mean)


moments_bbin = moments


def closed_form_moment_slopes(b: int) -> tuple[float, float]:
    """Linear growth rates of the b-bin mean and variance in ``n``."""
    if b < 3:
        raise ValueError(f"b must be >= 3, got {b}")
    d = b * b + 2 * b - 3
    r = math.sqrt(d)
    mean_slope = (b * b + b - 4 + b * r) / (r * (1 + b + r))
    variance_slope = (b * b + b - 4) / d**1.5
    return mean_slope, variance_slope


def factorial_digit_moments(n: int) -> MomentSummary:
    """Mean and variance of a sum of independent digit indicators.

    Indicator ``i`` (``i = 1..n``) is 1 with probability ``(i-1)/i``. This is
    the summand count of a uniform integer in ``[0, n!)``, so it matches row
    ``n - 1`` of :func:`count_table_factorial`.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    mean = sum((Fraction(i - 1, i) for i in range(1, n + 1)), Fraction(0))
    var = sum((Fraction(i - 1, i * i) for i in range(1, n + 1)), Fraction(0))
    return MomentSummary(n, mean, var)


def standardized_distribution(table: CountTable, n: int) -> DistributionReport:
    m = moments(table, n)
    if m.variance == 0:
        raise DegenerateDistributionError(f"row {n} has zero variance")
    row = table.rows[n]
    total = sum(row)
    sigma = math.sqrt(m.variance)
    mu = m.mean
    points = tuple(float(k - mu) / sigma for k in range(len(row)))
    probs = tuple(c / total for c in row)
    # cumulative probabilities come from exact integer partial sums
    cum = 0
    cdf_steps = []
    for c in row:
        prev = cum
        cum += c
        cdf_steps.append((prev / total, cum / total))
    phi = NormalDist().cdf
    ks = 0.0
    for x, (lo, hi) in zip(points, cdf_steps):
        ref = phi(x)
        ks = max(ks, abs(lo - ref), abs(hi - ref))
    return DistributionReport(n, points, probs, min(ks, 1.0))
