"""Lazily extended f-sequences with arbitrary-precision terms."""

from __future__ import annotations

import threading
from bisect import bisect_right

from .ffunc import FRule


class FSequence:
    """The unique increasing sequence in which every positive integer has
    exactly one legal decomposition under ``rule``.

    Terms obey ``a_0 = 1`` and ``a_n = a_{n-1} + a_{n-1-f(n-1)}``, where a
    negative index contributes 1. The cache only grows; extension is guarded
    by a lock, and reads of terms already materialized need no lock.
    """

    def __init__(self, rule: FRule):
        self.rule = rule
        self._terms: list[int] = [1]
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"FSequence({self.rule.shorthand()!r}, cached={len(self._terms)})"

    def __len__(self) -> int:
        return len(self._terms)

    def _extend_to(self, n: int) -> None:
        with self._lock:
            terms = self._terms
            if n < len(terms):
                return
            target = max(n + 1, 2 * len(terms))
            f = self.rule
            while len(terms) < target:
                m = len(terms) - 1
                j = m - f(m)
                terms.append(terms[m] + (terms[j] if j >= 0 else 1))

    def term(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"index must be nonnegative, got {n}")
        if n >= len(self._terms):
            self._extend_to(n)
        return self._terms[n]

    __getitem__ = term

    def terms(self, count: int) -> list[int]:
        """The first ``count`` terms."""
        if count > 0:
            self.term(count - 1)
        return self._terms[:count]

    def index_of_floor(self, x: int) -> int:
        """The unique m with a_m <= x < a_{m+1}."""
        if x < 1:
            raise ValueError(f"x must be positive, got {x}")
        while self._terms[-1] <= x:
            self._extend_to(2 * len(self._terms))
        return bisect_right(self._terms, x) - 1
