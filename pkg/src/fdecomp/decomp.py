"""Greedy f-decompositions, legality checks and an exhaustive uniqueness oracle."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .ffunc import FRule
from .fseq import FSequence

DEFAULT_ORACLE_BUDGET = 10**7


class OracleBudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"exhaustive search exceeded {budget} nodes")
        self.budget = budget


def oracle_budget() -> int:
    """Node cap for exhaustive searches (env ``FDECOMP_ORACLE_BUDGET`` overrides)."""
    raw = os.environ.get("FDECOMP_ORACLE_BUDGET")
    if raw is None:
        return DEFAULT_ORACLE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"FDECOMP_ORACLE_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("FDECOMP_ORACLE_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class Decomposition:
    indices: tuple[int, ...]
    value: int

    def summands(self, seq: FSequence) -> list[int]:
        return [seq.term(i) for i in self.indices]

    def __len__(self) -> int:
        return len(self.indices)


def _check_decreasing(indices: Sequence[int]) -> None:
    for hi, lo in zip(indices, indices[1:]):
        if lo >= hi:
            raise ValueError(f"indices must be strictly decreasing, got {list(indices)}")
    if indices and indices[-1] < 0:
        raise ValueError("indices must be nonnegative")


def is_legal(rule: FRule, indices: Sequence[int]) -> bool:
    """True iff no chosen index falls in the forbidden window of the index above it."""
    _check_decreasing(indices)
    return all(lo <= hi - rule(hi) - 1 for hi, lo in zip(indices, indices[1:]))


def recompose(seq: FSequence, indices: Sequence[int]) -> int:
    _check_decreasing(indices)
    return sum(seq.term(i) for i in indices)


def decompose(seq: FSequence, x: int) -> Decomposition:
    """Greedy decomposition: repeatedly take the largest term not exceeding the remainder."""
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    rule = seq.rule
    indices: list[int] = []
    rest = x
    cap: int | None = None
    while rest > 0:
        m = seq.index_of_floor(rest)
        if cap is not None and m > cap:
            # would mean the remainder escaped [0, a_{m-f(m)}); impossible for a valid sequence
            raise AssertionError(f"greedy step picked index {m} above legal cap {cap}")
        indices.append(m)
        rest -= seq.term(m)
        cap = m - rule(m) - 1
    return Decomposition(tuple(indices), x)


def max_legal_sums(seq: FSequence, max_index: int) -> list[int]:
    """``best[j]`` = largest value of a legal decomposition using only indices <= j.

    Computed by dynamic programming over the legality windows alone; used to
    prune the exhaustive search.
    """
    rule = seq.rule
    best: list[int] = []
    for j in range(max_index + 1):
        below = j - rule(j) - 1
        take = seq.term(j) + (best[below] if below >= 0 else 0)
        best.append(max(take, best[j - 1] if j else 0))
    return best


def all_legal_decompositions(
    seq: FSequence, x: int, max_index: int, budget: int | None = None
) -> list[tuple[int, ...]]:
    """Every legal strictly decreasing index list over ``{0..max_index}`` summing to ``x``.

    Depth-first search from the top index down. A branch is cut when the
    remainder goes negative or exceeds the largest legal sum still reachable.
    """
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if budget is None:
        budget = oracle_budget()
    if max_index < 0:
        return [()] if x == 0 else []
    rule = seq.rule
    terms = seq.terms(max_index + 1)
    best = max_legal_sums(seq, max_index)
    found: list[tuple[int, ...]] = []
    nodes = 0
    stack: list[int] = []

    def dfs(top: int, rest: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise OracleBudgetExceeded(budget)
        if rest == 0:
            found.append(tuple(stack))
            return
        if top < 0 or best[top] < rest:
            return
        for j in range(top, -1, -1):
            if best[j] < rest:
                break
            if terms[j] > rest:
                continue
            stack.append(j)
            dfs(j - rule(j) - 1, rest - terms[j])
            stack.pop()

    dfs(max_index, x)
    return found


def iter_legal_index_lists(rule: FRule, max_index: int) -> Iterator[tuple[int, ...]]:
    """All legal index lists (including the empty one) over ``{0..max_index}``."""

    def rec(top: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield prefix
        for j in range(top, -1, -1):
            yield from rec(j - rule(j) - 1, prefix + (j,))

    yield from rec(max_index, ())


@dataclass
class UniquenessReport:
    rule: str
    x_max: int
    index_cap: int
    checked: int
    ok: bool
    counterexample: dict | None = None
    error: str | None = None


def check_unique(seq: FSequence, x_max: int, index_cap: int | None = None, budget: int | None = None) -> UniquenessReport:
    """Confirm every ``0 <= x <= x_max`` has exactly one legal decomposition, equal to the greedy one.

    Raises :class:`OracleBudgetExceeded` carrying the partial report as ``.report``.
    """
    if x_max < 0:
        raise ValueError("x_max must be nonnegative")
    if index_cap is None:
        index_cap = seq.index_of_floor(x_max) if x_max >= 1 else 0
    if budget is None:
        budget = oracle_budget()
    report = UniquenessReport(seq.rule.shorthand(), x_max, index_cap, 0, True)
    for x in range(x_max + 1):
        try:
            found = all_legal_decompositions(seq, x, index_cap, budget)
        except OracleBudgetExceeded as exc:
            report.ok = False
            report.error = str(exc)
            exc.report = report  # type: ignore[attr-defined]
            raise
        greedy = decompose(seq, x).indices
        if len(found) != 1 or found[0] != greedy:
            report.ok = False
            report.counterexample = {
                "x": x,
                "greedy": list(greedy),
                "found": [list(f) for f in found],
            }
            return report
        report.checked += 1
    return report
