"""JSON Schemas for every CLI subcommand's ``--format json`` output."""

from __future__ import annotations

from typing import Any

import jsonschema

_DECIMAL = {"type": "string", "pattern": r"^-?(0|[1-9][0-9]*)$"}
_RATIONAL = {"type": "string", "pattern": r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$"}
_NAT = {"type": "integer", "minimum": 0}


def _obj(props: dict[str, Any], required: list[str] | None = None) -> dict[str, Any]:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


SCHEMAS: dict[str, dict[str, Any]] = {
    "seq": _obj(
        {
            "rule": {"type": "string"},
            "start": _NAT,
            "terms": {"type": "array", "items": _DECIMAL},
        }
    ),
    "decomp": _obj(
        {
            "x": _DECIMAL,
            "indices": {"type": "array", "items": _NAT},
            "summands": {"type": "array", "items": _DECIMAL},
        }
    ),
    "check-unique": _obj(
        {
            "rule": {"type": "string"},
            "x_max": _NAT,
            "index_cap": _NAT,
            "checked": _NAT,
            "ok": {"type": "boolean"},
            "counterexample": {
                "oneOf": [
                    {"type": "null"},
                    _obj(
                        {
                            "x": _NAT,
                            "greedy": {"type": "array", "items": _NAT},
                            "found": {"type": "array", "items": {"type": "array", "items": _NAT}},
                        }
                    ),
                ]
            },
            "error": {"type": ["string", "null"]},
        }
    ),
    "recurrence": _obj(
        {
            "rule": {"type": "string"},
            "order": _NAT,
            "coefficients": {"type": "array", "items": _RATIONAL},
            "valid_from": _NAT,
            "verified_horizon": _NAT,
            "nonneg_feasible": {
                "oneOf": [{"type": "boolean"}, {"type": "string", "pattern": r"^unknown_beyond_[0-9]+$"}]
            },
        }
    ),
    "stats": _obj(
        {
            "system": {"type": "string"},
            "emit": {"enum": ["table", "moments", "ks"]},
            "rows": {
                "type": "array",
                "items": {
                    "oneOf": [
                        _obj({"n": _NAT, "k": _NAT, "count": _DECIMAL}),
                        _obj({"n": _NAT, "mean": _RATIONAL, "variance": _RATIONAL}),
                        _obj(
                            {
                                "n": _NAT,
                                "mean": _RATIONAL,
                                "variance": _RATIONAL,
                                "ks": {"type": "number", "minimum": 0, "maximum": 1},
                            }
                        ),
                    ]
                },
            },
        }
    ),
    "nonneg": _obj(
        {
            "charpoly": {"type": "array", "items": _RATIONAL},
            "max_degree": _NAT,
            "feasible": {"type": "boolean"},
            "degree": {"type": ["integer", "null"]},
            "multiplier": {"oneOf": [{"type": "null"}, {"type": "array", "items": _RATIONAL}]},
            "recurrence": {"oneOf": [{"type": "null"}, {"type": "array", "items": _RATIONAL}]},
        }
    ),
}


def validate_output(subcommand: str, document: Any) -> None:
    """Raise :class:`jsonschema.ValidationError` if ``document`` does not match."""
    jsonschema.validate(document, SCHEMAS[subcommand])
