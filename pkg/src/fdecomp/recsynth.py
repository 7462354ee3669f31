"""Linear recurrences for f-sequences of periodic rules.

The synthesizer works one residue class ``r (mod b)`` at a time. Each
generating relation ``a_m = a_{m-1} + a_{m-1-f(m-1)}`` is a coefficient
vector whose coordinate ``j`` multiplies ``a_{n-j}`` for some ``n = r (mod b)``.
Coordinates whose index is not a multiple of ``b`` ("bad" coordinates) are
pushed rightwards by adding further relations, the leftover blocks are
cancelled with a rational dependency, and what remains relates terms of the
residue class only. The ``b`` per-class polynomials are multiplied and
inflated by ``x -> x**b`` to get one recurrence for the whole sequence, which
:func:`minimize` then reduces to the minimal one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import Poly, find_feasible_point, nullspace_combination, poly_inflate, poly_mul, solve_consistent
from .exactnum.poly import Number
from .ffunc import FRule
from .fseq import FSequence

Coefficient = Union[int, Fraction]


class UnsupportedRuleError(ValueError):
    pass


class SynthesisError(RuntimeError):
    pass


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class LinearRecurrence:
    """``s_n = sum(coefficients[i-1] * s_{n-i})`` for all ``n >= valid_from``."""

    coefficients: tuple[Coefficient, ...]
    valid_from: int = 0

    def __post_init__(self) -> None:
        coeffs = tuple(_norm(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if coeffs and coeffs[-1] == 0:
            raise ValueError("last coefficient must be nonzero")
        if self.valid_from < len(coeffs):
            raise ValueError(f"valid_from {self.valid_from} is below the order {len(coeffs)}")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @classmethod
    def from_charpoly(cls, p: Poly, valid_from: int = 0) -> LinearRecurrence:
        """Recurrence whose characteristic polynomial is the monic ``p``."""
        if not p.is_monic():
            p = p.monic()
        k = p.degree
        coeffs = tuple(-p.coeffs[k - i] for i in range(1, k + 1))
        return cls(coeffs, max(valid_from, k))

    def charpoly(self) -> Poly:
        """``x^k - c_1 x^{k-1} - ... - c_k``."""
        k = self.order
        return Poly([-self.coefficients[k - 1 - i] for i in range(k)] + [1])

    def holds_at(self, terms: Sequence[int], n: int) -> bool:
        return terms[n] == sum(c * terms[n - i] for i, c in enumerate(self.coefficients, 1))

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coefficients)


def verify_recurrence(seq: FSequence, rec: LinearRecurrence, horizon: int) -> bool:
    """Exact check for every ``valid_from <= n <= valid_from + horizon``."""
    if horizon < rec.order:
        raise ValueError(f"horizon {horizon} is shorter than the order {rec.order}")
    terms = seq.terms(rec.valid_from + horizon + 1)
    return all(rec.holds_at(terms, n) for n in range(rec.valid_from, rec.valid_from + horizon + 1))


def stride_for(rule: FRule) -> int:
    """Smallest multiple of the period exceeding every value of f."""
    if not rule.is_periodic:
        raise UnsupportedRuleError(f"recurrence synthesis needs a periodic rule, got {rule.kind}")
    pattern = rule.periodic_pattern()
    p = len(pattern)
    need = max(pattern) + 1
    return p * -(-need // p)


@dataclass
class ResidueTrace:
    """Working state of the elimination for one residue class."""

    residue: int
    b: int
    v: list[list[int]] = field(default_factory=list)
    w: list[list[int]] = field(default_factory=list)
    u: list[list[int]] = field(default_factory=list)
    lambdas: Optional[tuple[int, ...]] = None
    combined: list[int] = field(default_factory=list)
    # coefficient of a_{m - k b} in the resulting relation, k = 0..deg
    stride_poly: Poly = field(default_factory=Poly)
    # the relation holds for every top index m = residue (mod b) with m >= valid_from
    valid_from: int = 0

    @property
    def dim(self) -> int:
        return self.b * self.b + 1


def relation_vector(rule: FRule, b: int, residue: int, i: int) -> list[int]:
    """Relation ``a_{n-i} - a_{n-i-1} - a_{n-i-1-f(n-i-1)} = 0`` for ``n = residue (mod b)``."""
    dim = b * b + 1
    vec = [0] * dim
    f = rule((residue - i - 1) % b)
    for pos, c in ((i, 1), (i + 1, -1), (i + 1 + f, -1)):
        if pos >= dim:
            raise SynthesisError(f"relation v_{i} does not fit in dimension {dim}")
        vec[pos] += c
    return vec


def shift(vec: Sequence[int], k: int) -> list[int]:
    """Move coordinates ``k`` places to the right, dropping what falls off."""
    if k == 0:
        return list(vec)
    return [0] * k + list(vec[:-k])


def combine_shifted(w: Sequence[Sequence[int]], lambdas: Sequence[Number], b: int) -> list:
    """``sum(lambdas[i] * T_b^(b-1-i) w[i])``."""
    dim = len(w[0])
    out: list = [0] * dim
    for i, (wi, lam) in enumerate(zip(w, lambdas)):
        if lam == 0:
            continue
        for j, c in enumerate(shift(wi, (b - 1 - i) * b)):
            out[j] += lam * c
    return [_norm(c) for c in out]


def _is_stride_vector(vec: Sequence, b: int) -> bool:
    return all(c == 0 for j, c in enumerate(vec) if j % b)


def eliminate_residue(rule: FRule, b: int, residue: int) -> ResidueTrace:
    """Run the bad-coordinate elimination for one residue class."""
    tr = ResidueTrace(residue, b)
    nvec = max(1, b * b - b)
    tr.v = [relation_vector(rule, b, residue, i) for i in range(nvec)]
    w = list(tr.v[0])
    done: Optional[list[int]] = None
    for i in range(b):
        if i > 0:
            w = list(w)
            for j in range((i - 1) * b + 1, i * b):
                c = w[j]
                if c:
                    w = [a - c * vj for a, vj in zip(w, tr.v[j])]
        tr.w.append(w)
        tr.u.append(w[i * b + 1 : (i + 1) * b])
        if _is_stride_vector(w, b):
            done = w
            break
    if done is None:
        lam = nullspace_combination(tr.u)
        if lam is None:
            raise SynthesisError(f"no dependency among the {b} truncated vectors of residue {residue}")
        tr.lambdas = lam
        done = combine_shifted(tr.w, lam, b)
        if not _is_stride_vector(done, b):
            raise SynthesisError(f"residue {residue}: combination still has bad coordinates")
    tr.combined = done
    nz = [j for j, c in enumerate(done) if c != 0]
    lead, last = nz[0], nz[-1]
    s, e = lead // b, last // b
    sign = -1 if done[lead] < 0 else 1
    tr.stride_poly = Poly(sign * done[(e - k) * b] for k in range(e - s + 1))
    # every generating relation used sits inside coordinates [0, b^2]
    tr.valid_from = b * b - lead
    return tr


@dataclass
class Synthesis:
    rule: FRule
    b: int
    traces: list[ResidueTrace]
    recurrence: LinearRecurrence
    safe_from: int


def synthesize(rule: FRule, horizon: int = 300) -> Synthesis:
    """Full synthesis with per-residue traces; see :func:`synthesize_recurrence`."""
    b = stride_for(rule)
    traces = [eliminate_residue(rule, b, r) for r in range(b)]
    total = sum(t.stride_poly.degree for t in traces)
    product = Poly([1])
    for t in traces:
        product = poly_mul(product, t.stride_poly)
    charpoly = poly_inflate(product, b)
    order = charpoly.degree
    safe = max(t.valid_from + b * (total - t.stride_poly.degree) for t in traces)
    safe = max(safe, order)
    rec = LinearRecurrence.from_charpoly(charpoly, safe)
    seq = FSequence(rule)
    if not verify_recurrence(seq, rec, max(horizon, order)):
        raise SynthesisError(f"synthesized recurrence fails verification for {rule.shorthand()}")
    rec = LinearRecurrence(rec.coefficients, tighten_valid_from(seq.terms(safe + 1), rec.coefficients, safe))
    return Synthesis(rule, b, traces, rec, safe)


def synthesize_recurrence(rule: FRule, horizon: int = 300) -> LinearRecurrence:
    """A recurrence satisfied by the whole f-sequence of a periodic ``rule``.

    The result is verified exactly on ``horizon`` terms past the point where it
    is proven to hold, and ``valid_from`` is then lowered to the first index
    from which the identity actually holds.
    """
    return synthesize(rule, horizon).recurrence


def tighten_valid_from(terms: Sequence[int], coefficients: Sequence[Number], known: int) -> int:
    """Smallest ``n0 >= order`` with the recurrence holding on ``[n0, known]``."""
    rec = LinearRecurrence(tuple(coefficients), len(coefficients))
    n0 = known
    while n0 - 1 >= rec.order and rec.holds_at(terms, n0 - 1):
        n0 -= 1
    return n0


def minimal_recurrence(terms: Sequence[int], max_order: int, start: int = 0) -> Optional[LinearRecurrence]:
    """Lowest-order recurrence fitting every supplied term from ``start`` on.

    For each order ``k`` the whole overdetermined system of rows
    ``n = max(k, start) .. len(terms)-1`` is solved exactly, so a fit on a
    short window that breaks later is rejected. Needs at least
    ``start + 3*max_order + 4`` terms.
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    need = start + 3 * max_order + 4
    if len(terms) < need:
        raise ValueError(f"minimal_recurrence needs at least {need} terms, got {len(terms)}")
    L = len(terms)
    if all(t == 0 for t in terms[start:]):
        return LinearRecurrence((), start)
    for k in range(1, max_order + 1):
        lo = max(k, start)
        rows = [[terms[n - i] for i in range(1, k + 1)] for n in range(lo, L)]
        rhs = [terms[n] for n in range(lo, L)]
        sol = solve_consistent(rows, rhs)
        if sol is None:
            continue
        coeffs = [_norm(c) for c in sol]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        n0 = tighten_valid_from(terms, coeffs, lo) if coeffs else lo
        return LinearRecurrence(tuple(coeffs), max(n0, len(coeffs)))
    return None


def minimize(seq: FSequence, rec: LinearRecurrence) -> LinearRecurrence:
    """Reduce a verified recurrence to the sequence's minimal one.

    Past ``rec.valid_from`` the sequence lies in the solution space of
    ``rec``, so any candidate agreeing with it on ``order`` further
    consecutive positions agrees forever; enough terms are supplied to make
    that so.
    """
    K = rec.order
    start = rec.valid_from
    terms = seq.terms(start + 3 * K + 4 + K)
    found = minimal_recurrence(terms, K, start=start)
    if found is None:
        raise SynthesisError("minimizer failed to recover even the input recurrence")
    n0 = tighten_valid_from(terms, found.coefficients, found.valid_from)
    return LinearRecurrence(found.coefficients, n0)


@dataclass(frozen=True)
class NonnegResult:
    """Outcome of :func:`nonnegative_multiple_search`.

    When ``feasible``, ``multiplier * charpoly`` is the monic ``product`` of
    degree ``degree`` whose lower coefficients are all <= 0, i.e. the
    recurrence ``recurrence`` has nonnegative coefficients. Otherwise no
    multiple of degree <= ``max_degree`` works (a bounded certificate only).
    """

    feasible: bool
    max_degree: int
    degree: Optional[int] = None
    multiplier: Optional[Poly] = None
    product: Optional[Poly] = None

    @property
    def recurrence(self) -> Optional[LinearRecurrence]:
        if self.product is None:
            return None
        return LinearRecurrence.from_charpoly(self.product)


def nonnegative_multiple_search(charpoly: Poly, max_degree: int) -> NonnegResult:
    """Search for a monic multiple ``q * charpoly`` of degree ``h <= max_degree`` with all lower coefficients <= 0.

    Each degree is an exact rational feasibility problem in the free
    coefficients of ``q`` (its top coefficient is fixed by monicity).
    """
    if charpoly.degree < 1:
        raise ValueError("characteristic polynomial must have degree >= 1")
    p = charpoly.monic()
    d = p.degree
    if max_degree < d:
        raise ValueError(f"max_degree {max_degree} is below the polynomial degree {d}")
    for h in range(d, max_degree + 1):
        nfree = h - d
        # product coefficient i = sum_j q_j p_{i-j}; q_{nfree} = 1
        A: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for i in range(h):
            row = [Fraction(p.coeffs[i - j]) if 0 <= i - j <= d else Fraction(0) for j in range(nfree)]
            fixed = Fraction(p.coeffs[i - nfree]) if 0 <= i - nfree <= d else Fraction(0)
            A.append(row)
            rhs.append(-fixed)
        x = find_feasible_point(A, rhs) if nfree else ([] if all(r >= 0 for r in rhs) else None)
        if x is None:
            continue
        q = Poly(list(x) + [Fraction(1)])
        prod = poly_mul(q, p)
        if not prod.is_monic() or any(c > 0 for c in prod.coeffs[:-1]) or prod.degree != h:
            raise AssertionError("nonnegative multiple witness fails re-check")
        return NonnegResult(True, max_degree, h, q, prod)
    return NonnegResult(False, max_degree)
