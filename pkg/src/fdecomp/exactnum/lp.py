"""Exact feasibility of systems of linear inequalities ``A x <= b`` over the rationals.

Two independent deciders are provided: Fourier-Motzkin elimination (with
back-substitution for a witness) and a dense two-phase simplex using Bland's
rule. :func:`find_feasible_point` picks between them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .poly import Number

FME_MAX_VARS = 40
FME_MAX_ROWS = 20000

Row = tuple[tuple[Fraction, ...], Fraction]


class FMEBlowup(RuntimeError):
    """Raised when Fourier-Motzkin elimination exceeds its row cap."""


def _as_rows(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Row]:
    if len(A) != len(b):
        raise ValueError("A and b have different row counts")
    return [(tuple(Fraction(x) for x in row), Fraction(rhs)) for row, rhs in zip(A, b)]


def _check(A, b, x) -> bool:
    return all(sum(Fraction(a) * xi for a, xi in zip(row, x)) <= rhs for row, rhs in zip(A, b))


def _canon(row: Row) -> Row:
    coeffs, rhs = row
    piv = next((abs(c) for c in coeffs if c != 0), None)
    if piv is None or piv == 1:
        return row
    return tuple(c / piv for c in coeffs), rhs / piv


def _dedupe(rows: list[Row]) -> Optional[list[Row]]:
    """Drop trivial rows and parallel duplicates; ``None`` if a trivial row is violated."""
    best: dict[tuple[Fraction, ...], Fraction] = {}
    for row in rows:
        coeffs, rhs = _canon(row)
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                return None
            continue
        prev = best.get(coeffs)
        if prev is None or rhs < prev:
            best[coeffs] = rhs
    return list(best.items())


def fme_feasible_point(
    A: Sequence[Sequence[Number]], b: Sequence[Number], max_rows: int = FME_MAX_ROWS
) -> Optional[list[Fraction]]:
    """Decide ``A x <= b`` by Fourier-Motzkin elimination.

    Returns a witness point or ``None``. Raises :class:`FMEBlowup` if an
    intermediate system exceeds ``max_rows`` rows.
    """
    rows = _as_rows(A, b)
    n = len(rows[0][0]) if rows else 0
    cur = _dedupe(rows)
    if cur is None:
        return None
    remaining = list(range(n))
    history: list[tuple[int, list[Row]]] = []
    while remaining:
        # greedy order: fewest generated rows first
        def cost(v: int) -> tuple[int, int]:
            pos = sum(1 for c, _ in cur if c[v] > 0)
            neg = sum(1 for c, _ in cur if c[v] < 0)
            return pos * neg - pos - neg, v

        v = min(remaining, key=cost)
        remaining.remove(v)
        pos = [r for r in cur if r[0][v] > 0]
        neg = [r for r in cur if r[0][v] < 0]
        keep = [r for r in cur if r[0][v] == 0]
        history.append((v, pos + neg))
        if len(keep) + len(pos) * len(neg) > max_rows:
            raise FMEBlowup(f"Fourier-Motzkin step would produce {len(keep) + len(pos) * len(neg)} rows")
        new = list(keep)
        for pc, pr in pos:
            sp = pc[v]
            for nc, nr in neg:
                sn = -nc[v]
                new.append((tuple(a / sp + c / sn for a, c in zip(pc, nc)), pr / sp + nr / sn))
        cur = _dedupe(new)
        if cur is None:
            return None
        if len(cur) > max_rows:
            raise FMEBlowup(f"Fourier-Motzkin system grew to {len(cur)} rows")
    x: list[Fraction] = [Fraction(0)] * n
    for v, bound_rows in reversed(history):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs in bound_rows:
            rest = rhs - sum(c * xi for j, (c, xi) in enumerate(zip(coeffs, x)) if j != v)
            bound = rest / coeffs[v]
            if coeffs[v] > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("Fourier-Motzkin back-substitution found an empty interval")
        if (lo is None or lo <= 0) and (hi is None or hi >= 0):
            x[v] = Fraction(0)
        elif lo is not None and lo > 0:
            x[v] = lo
        else:
            x[v] = hi  # type: ignore[assignment]
    return x


def simplex_feasible_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> Optional[list[Fraction]]:
    """Decide ``A x <= b`` (x free) with a phase-one simplex in exact arithmetic."""
    rows = _as_rows(A, b)
    m = len(rows)
    n = len(rows[0][0]) if rows else 0
    if m == 0:
        return [Fraction(0)] * n
    # columns: x+ (n), x- (n), slack (m), artificial (one per negative rhs)
    neg_rows = [i for i, (_, rhs) in enumerate(rows) if rhs < 0]
    art_col = {i: 2 * n + m + k for k, i in enumerate(neg_rows)}
    width = 2 * n + m + len(neg_rows)
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, rhs) in enumerate(rows):
        row = [Fraction(0)] * (width + 1)
        sign = -1 if rhs < 0 else 1
        for j, c in enumerate(coeffs):
            row[j] = sign * c
            row[n + j] = -sign * c
        row[2 * n + i] = Fraction(sign)
        row[width] = sign * rhs
        if rhs < 0:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(2 * n + i)
        tab.append(row)
    # phase-one objective: minimize the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for i in neg_rows:
        cost[art_col[i]] = Fraction(1)
    obj = cost[:]
    for i, bv in enumerate(basis):
        if cost[bv] != 0:
            obj = [o - cost[bv] * t for o, t in zip(obj, tab[i])]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best: Optional[tuple[Fraction, int]] = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                key = (tab[i][width] / a, basis[i])
                if best is None or key < best:
                    best, leave = key, i
        if leave is None:
            raise AssertionError("phase-one objective is bounded below; unbounded ray is impossible")
        piv = tab[leave][enter]
        tab[leave] = [t / piv for t in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * c for a, c in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [a - f * c for a, c in zip(obj, tab[leave])]
        basis[leave] = enter
    if -obj[width] != 0:
        return None
    z = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        z[bv] = tab[i][width]
    return [z[j] - z[n + j] for j in range(n)]


def find_feasible_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> Optional[list[Fraction]]:
    """Witness for ``A x <= b`` or ``None`` if infeasible. The witness is always re-checked."""
    n = len(A[0]) if A else 0
    x: Optional[list[Fraction]]
    if n <= FME_MAX_VARS:
        try:
            x = fme_feasible_point(A, b)
        except FMEBlowup:
            x = simplex_feasible_point(A, b)
    else:
        x = simplex_feasible_point(A, b)
    if x is not None and not _check(A, b, x):
        raise AssertionError("feasibility witness fails the original system")
    return x
