"""Finite descriptions of legality functions f: N0 -> N0.

A rule says how many terms immediately below ``a_n`` are forbidden once ``a_n``
is used in a decomposition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Any, Mapping

KINDS = ("constant", "periodic", "factorial_bins", "table")
EXTENSIONS = ("repeat_last", "zero")


class RuleError(ValueError):
    """Malformed or invalid rule description."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class RuleParseError(RuleError):
    pass


class RuleValidationError(RuleError):
    pass


def _nat(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise RuleParseError(f"field {field!r} must be an integer, got {value!r}", field)
    if value < 0:
        raise RuleValidationError(f"field {field!r} must be nonnegative, got {value}", field)
    return value


@dataclass(frozen=True)
class FRule:
    kind: str
    value: int = 0
    pattern: tuple[int, ...] = ()
    extension: str = "repeat_last"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise RuleParseError(f"unknown rule kind {self.kind!r}", "kind")
        if self.kind == "constant":
            _nat(self.value, "value")
        if self.kind in ("periodic", "table"):
            field = "pattern" if self.kind == "periodic" else "table"
            if not self.pattern:
                raise RuleValidationError(f"{field} must be nonempty", field)
            for v in self.pattern:
                _nat(v, field)
        if self.extension not in EXTENSIONS:
            raise RuleParseError(f"unknown extension {self.extension!r}", "extension")

    @classmethod
    def constant(cls, c: int) -> FRule:
        return cls("constant", value=c)

    @classmethod
    def periodic(cls, pattern) -> FRule:
        return cls("periodic", pattern=tuple(pattern))

    @classmethod
    def factorial_bins(cls) -> FRule:
        return cls("factorial_bins")

    @classmethod
    def table(cls, values, extension: str = "repeat_last") -> FRule:
        return cls("table", pattern=tuple(values), extension=extension)

    def __call__(self, n: int) -> int:
        return eval_f(self, n)

    @property
    def is_periodic(self) -> bool:
        return self.kind in ("constant", "periodic")

    @property
    def period(self) -> int:
        if self.kind == "constant":
            return 1
        if self.kind == "periodic":
            return len(self.pattern)
        raise ValueError(f"{self.kind} rule has no period")

    def periodic_pattern(self) -> tuple[int, ...]:
        """One full period of values (constant rules have period 1)."""
        if self.kind == "constant":
            return (self.value,)
        if self.kind == "periodic":
            return self.pattern
        raise ValueError(f"{self.kind} rule is not periodic")

    def shorthand(self) -> str:
        if self.kind == "constant":
            return f"constant:{self.value}"
        if self.kind == "periodic":
            return "periodic:" + ",".join(map(str, self.pattern))
        if self.kind == "factorial_bins":
            return "factorial"
        return "table:" + ",".join(map(str, self.pattern)) + f";{self.extension}"


def eval_f(rule: FRule, n: int) -> int:
    if n < 0:
        raise ValueError(f"f is defined on nonnegative integers, got {n}")
    kind = rule.kind
    if kind == "constant":
        return rule.value
    if kind == "periodic":
        return rule.pattern[n % len(rule.pattern)]
    if kind == "factorial_bins":
        # largest m with m(m+1)/2 <= n is the number of complete bins before n
        m = (isqrt(8 * n + 1) - 1) // 2
        return n - m * (m + 1) // 2
    if n < len(rule.pattern):
        return rule.pattern[n]
    return rule.pattern[-1] if rule.extension == "repeat_last" else 0


def bbin_rule(b: int) -> FRule:
    """Rule for b-bin decompositions: f(n) = max(1, n mod b)."""
    if b < 3:
        raise ValueError(f"b-bin rules need b >= 3, got {b}")
    return FRule.periodic((1,) + tuple(range(1, b)))


def base_rule(b: int) -> FRule:
    """Rule whose decompositions are base-b digit expansions: f(n) = n mod (b-1)."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    return FRule.periodic(tuple(range(b - 1)))


def rule_to_dict(rule: FRule) -> dict[str, Any]:
    if rule.kind == "constant":
        return {"kind": "constant", "value": rule.value}
    if rule.kind == "periodic":
        return {"kind": "periodic", "pattern": list(rule.pattern)}
    if rule.kind == "factorial_bins":
        return {"kind": "factorial_bins"}
    return {"kind": "table", "table": list(rule.pattern), "extension": rule.extension}


def rule_from_dict(doc: Mapping[str, Any]) -> FRule:
    if not isinstance(doc, Mapping):
        raise RuleParseError("rule document must be an object", "kind")
    allowed = {"kind", "value", "pattern", "table", "extension"}
    extra = sorted(set(doc) - allowed)
    if extra:
        raise RuleParseError(f"unknown field {extra[0]!r}", extra[0])
    kind = doc.get("kind")
    if kind is None:
        raise RuleParseError("missing field 'kind'", "kind")
    if kind not in KINDS:
        raise RuleParseError(f"unknown rule kind {kind!r}", "kind")

    def need(field: str) -> Any:
        if field not in doc:
            raise RuleParseError(f"{kind} rule requires field {field!r}", field)
        return doc[field]

    def nat_list(field: str) -> tuple[int, ...]:
        vals = need(field)
        if not isinstance(vals, list):
            raise RuleParseError(f"field {field!r} must be a list", field)
        return tuple(_nat(v, field) for v in vals)

    if kind == "constant":
        return FRule.constant(_nat(need("value"), "value"))
    if kind == "periodic":
        return FRule.periodic(nat_list("pattern"))
    if kind == "factorial_bins":
        return FRule.factorial_bins()
    ext = doc.get("extension", "repeat_last")
    if ext not in EXTENSIONS:
        raise RuleParseError(f"unknown extension {ext!r}", "extension")
    return FRule.table(nat_list("table"), ext)


def serialize_rule(rule: FRule) -> str:
    return json.dumps(rule_to_dict(rule), sort_keys=True)


def parse_rule(text: str) -> FRule:
    """Parse a JSON rule document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleParseError(f"rule document is not valid JSON: {exc}", "document") from exc
    return rule_from_dict(doc)


def _int_list(text: str, field: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise RuleParseError(f"bad integer list {text!r}", field) from exc


def parse_shorthand(text: str) -> FRule:
    """Parse ``constant:c``, ``periodic:v,...``, ``factorial``, ``bbin:b`` or ``base:b``."""
    text = text.strip()
    head, _, arg = text.partition(":")
    try:
        if head == "factorial" and not arg:
            return FRule.factorial_bins()
        if head == "constant":
            return FRule.constant(_nat(int(arg), "value"))
        if head == "periodic":
            return FRule.periodic(tuple(_nat(v, "pattern") for v in _int_list(arg, "pattern")))
        if head == "bbin":
            return bbin_rule(int(arg))
        if head == "base":
            return base_rule(int(arg))
    except RuleError:
        raise
    except ValueError as exc:
        raise RuleParseError(f"bad rule shorthand {text!r}: {exc}", head or "kind") from exc
    raise RuleParseError(f"unrecognized rule shorthand {text!r}", "kind")
