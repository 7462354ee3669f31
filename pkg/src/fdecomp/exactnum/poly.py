"""Dense univariate polynomials with exact (int or Fraction) coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


def _normalize(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Polynomial stored ascending by degree: ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are stripped on construction, so the zero polynomial is the
    empty tuple and the last stored coefficient is always nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_normalize(c) for c in coeffs]
        for c in cs:
            if not isinstance(c, (int, Fraction)):
                raise TypeError(f"polynomial coefficients must be exact, got {type(c).__name__}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Number, ...] = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs: Iterable[Number]) -> Poly:
        return cls(reversed(list(coeffs)))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Number:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Poly:
        lead = self.lead
        return Poly(Fraction(c) / lead for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                body = "" if mag == 1 else f"{mag}*"
                body += "x" if i == 1 else f"x^{i}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        return poly_mul(self, other)

    def scale(self, k: Number) -> Poly:
        return Poly(k * c for c in self.coeffs)

    def shift(self, k: int) -> Poly:
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return poly_divmod(self, other)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p.coeffs or not q.coeffs:
        return Poly()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(out)


def poly_product(polys: Iterable[Poly]) -> Poly:
    acc = Poly([1])
    for p in polys:
        acc = poly_mul(acc, p)
    return acc


def poly_inflate(p: Poly, b: int) -> Poly:
    """Return ``p(x**b)``."""
    if b < 1:
        raise ValueError(f"inflation factor must be >= 1, got {b}")
    if not p.coeffs:
        return p
    out: list[Number] = [0] * (b * p.degree + 1)
    for i, c in enumerate(p.coeffs):
        out[b * i] = c
    return Poly(out)


def poly_divmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over the rationals."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p.coeffs]
    dd = d.degree
    lead = Fraction(d.lead)
    if len(rem) - 1 < dd:
        return Poly(), Poly(rem)
    quot = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k] / lead
        if c == 0:
            continue
        quot[k - dd] = c
        for j, dc in enumerate(d.coeffs):
            rem[k - dd + j] -= c * dc
    return Poly(quot), Poly(rem[:dd])


def poly_divides(d: Poly, p: Poly) -> bool:
    return poly_divmod(p, d)[1].is_zero()
