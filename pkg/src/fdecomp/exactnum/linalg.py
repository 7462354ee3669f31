"""Exact rational Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import Number


def rref(rows: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the reduced matrix and the list of pivot columns.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def primitive_integer_vector(vec: Sequence[Number]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to integers with gcd 1 and first nonzero entry positive."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive scaling")
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def nullspace_combination(vectors: Sequence[Sequence[Number]]) -> Optional[tuple[int, ...]]:
    """Find a nontrivial dependency among ``vectors``.

    Returns integer coefficients ``lam`` (gcd 1, first nonzero positive) with
    ``sum(lam[i] * vectors[i]) == 0``, or ``None`` when the vectors are
    linearly independent. The dependency is the one obtained by setting the
    first free column of the reduced system to 1 and the others to 0.
    """
    m = len(vectors)
    if m == 0:
        return None
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("vectors must share one dimension")
    # columns of the system are the input vectors
    rows = [[vectors[j][i] for j in range(m)] for i in range(dim)]
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return None
    f = free[0]
    lam = [Fraction(0)] * m
    lam[f] = Fraction(1)
    for r, pc in enumerate(pivots):
        lam[pc] = -red[r][f]
    return primitive_integer_vector(lam)


def solve_consistent(rows: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> Optional[list[Fraction]]:
    """Solve ``rows @ x == rhs`` exactly; free variables are set to 0.

    Returns ``None`` if the (possibly overdetermined) system is inconsistent.
    """
    if len(rows) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    if not rows:
        return []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x
