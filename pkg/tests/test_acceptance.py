"""Acceptance gate: one test per criterion, each with its own tolerance and time limit.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath

from fdecomp.decomp import check_unique
from fdecomp.exactnum import Poly
from fdecomp.ffunc import FRule, base_rule, bbin_rule
from fdecomp.fseq import FSequence
from fdecomp.recsynth import (
    combine_shifted,
    eliminate_residue,
    minimize,
    nonnegative_multiple_search,
    synthesize_recurrence,
    verify_recurrence,
)
from fdecomp.sumstats import (
    closed_form_moment_slopes,
    count_table_bbin,
    count_table_factorial,
    gf_closed_form_gn,
    moments,
    standardized_distribution,
    stirling_first_kind,
)

from conftest import ACCEPTANCE_LINES, CORE_RULES


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        reason = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        ACCEPTANCE_LINES[str(number)] = f"FAIL  {number}. {title} ({elapsed:.2f}s): {reason}"
        print(ACCEPTANCE_LINES[str(number)])
        raise
    extra = f" [{'; '.join(notes)}]" if notes else ""
    ACCEPTANCE_LINES[str(number)] = f"PASS  {number}. {title} ({elapsed:.2f}s){extra}"
    print(ACCEPTANCE_LINES[str(number)])


def test_1_golden_sequences():
    with criterion(1, "golden sequences", limit=1.0):
        assert FSequence(FRule.constant(1)).terms(10) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
        assert FSequence(base_rule(5)).terms(12) == [1, 2, 3, 4, 5, 10, 15, 20, 25, 50, 75, 100]
        assert FSequence(FRule.factorial_bins()).terms(14) == [
            1, 2, 4, 6, 12, 18, 24, 48, 72, 96, 120, 240, 360, 480,
        ]  # fmt: skip
        assert FSequence(bbin_rule(3)).terms(19) == [
            1, 2, 3, 4, 7, 11, 15, 26, 41, 56, 97, 153, 209, 362, 571, 780, 1351, 2131, 2911,
        ]  # fmt: skip


def test_2_uniqueness_to_5000():
    with criterion(2, "uniqueness for x <= 5000 under the four rules", limit=120.0):
        for name, rule in sorted(CORE_RULES.items()):
            report = check_unique(FSequence(rule), 5000)
            assert report.ok, f"{name}: {report.counterexample}"
            assert report.checked == 5001


def test_3_recurrence_synthesis():
    with criterion(3, "recurrence synthesis", limit=10.0):
        seq = FSequence(bbin_rule(3))
        m = minimize(seq, synthesize_recurrence(bbin_rule(3)))
        assert m.coefficients == (0, 0, 4, 0, 0, -1) and m.valid_from == 6, m
        assert verify_recurrence(seq, m, 500)
        fib = FSequence(FRule.constant(1))
        assert minimize(fib, synthesize_recurrence(FRule.constant(1))).coefficients == (1, 1)
        for b in (4, 5):
            rule = bbin_rule(b)
            s = FSequence(rule)
            m = minimize(s, synthesize_recurrence(rule))
            want = [0] * (2 * b)
            want[b - 1], want[2 * b - 1] = b + 1, -1
            assert m.coefficients == tuple(want), (b, m)
            assert verify_recurrence(s, m, 300)


def test_4_three_bin_trace():
    with criterion(4, "three-bin elimination trace"):
        tr = eliminate_residue(bbin_rule(3), 3, 0)
        assert tr.w[1] == [1, 0, 0, -3, -1, 0, 0, 0, 0, 0]
        assert tr.w[2] == [1, 0, 0, -3, 0, 0, -2, -1, 0, 0]
        assert combine_shifted(tr.w, (-1, 1, 0), 3) == [0, 0, 0, 1, 0, 0, -4, 0, 0, 1]
        # the canonical dependency is the negation; same relation up to sign
        assert [-c for c in tr.combined] == [0, 0, 0, 1, 0, 0, -4, 0, 0, 1]


def test_5_nonnegative_multiples():
    with criterion(5, "nonnegative-coefficient search", limit=30.0):
        res = nonnegative_multiple_search(Poly.from_descending([1, 0, 0, -4, 0, 0, 1]), 30)
        assert not res.feasible and res.max_degree == 30
        res = nonnegative_multiple_search(Poly.from_descending([1, -1, -1]), 30)
        assert res.feasible and res.degree == 2


def test_6_counting_identities():
    with criterion(6, "counting identities", limit=5.0):
        for b in (3, 4, 5):
            seq = FSequence(bbin_rule(b))
            t = count_table_bbin(b, 30)
            assert all(t.total(n) == seq.term(b * n) for n in range(31)), b
        t = count_table_factorial(40)
        assert all(t.total(n) == math.factorial(n + 1) for n in range(41))
        for n in range(13):
            for k in range(n + 1):
                assert t.rows[n][k] == stirling_first_kind(n + 1, n - k + 1), (n, k)


def _slope(xs, ys):
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def test_7_moment_formulas():
    with criterion(7, "moment growth for b=3", limit=30.0) as notes:
        t = count_table_bbin(3, 300)
        mean_slope, var_slope = closed_form_moment_slopes(3)
        assert abs(mean_slope - 0.711325) < 1e-6 and abs(var_slope - 0.192450) < 1e-6
        ns = list(range(10, 301))
        ms = [moments(t, n) for n in ns]
        means = [float(m.mean) for m in ms]
        variances = [float(m.variance) for m in ms]
        rm = [y - mean_slope * n for n, y in zip(ns, means)]
        rv = [y - var_slope * n for n, y in zip(ns, variances)]
        assert max(rm) - min(rm) < 1, max(rm) - min(rm)
        assert max(rv) - min(rv) < 1, max(rv) - min(rv)
        dm = abs(_slope(ns, means) - mean_slope)
        dv = abs(_slope(ns, variances) - var_slope)
        assert dm < 1e-3 and dv < 1e-3, (dm, dv)
        notes.append(f"slope errors {dm:.1e}, {dv:.1e}")


def test_8_gaussian_trend():
    with criterion(8, "KS trend n=25,100,400 and KS(400) < 0.05", limit=120.0) as notes:
        problems = []
        tables = {"b=3": count_table_bbin(3, 400), "factorial": count_table_factorial(400)}
        for name, t in tables.items():
            ks = [standardized_distribution(t, n).ks_statistic for n in (25, 100, 400)]
            notes.append(f"{name}: " + ", ".join(f"{k:.4f}" for k in ks))
            if not ks[0] > ks[1] > ks[2]:
                problems.append(f"{name} not strictly decreasing {ks}")
            if not ks[2] < 0.05:
                problems.append(f"{name} KS(400) = {ks[2]:.4f} >= 0.05")
        assert not problems, "; ".join(problems + notes)


def test_9_generating_function():
    with criterion(9, "closed-form generating function") as notes:
        worst = mpmath.mpf(0)
        for b in (3, 4):
            t = count_table_bbin(b, 20)
            for y in (Fraction(1, 2), Fraction(1), Fraction(2)):
                for n in range(21):
                    exact = t.gf_value(n, y)
                    with mpmath.workprec(200):
                        ref = mpmath.mpf(exact.numerator) / exact.denominator
                        rel = abs(gf_closed_form_gn(b, n, y) - ref) / ref
                    worst = max(worst, rel)
        assert worst < mpmath.mpf(10) ** -20, worst
        notes.append(f"worst relative error {mpmath.nstr(worst, 3)}")
