"""Command-line frontend.

Exit codes: 0 success, 1 usage or input error, 2 verification or synthesis failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence, TextIO

from . import decomp as fd
from . import recsynth, sumstats
from .exactnum import Poly
from .ffunc import FRule, RuleError, parse_rule, parse_shorthand
from .fseq import FSequence


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, message: str, document: Any = None):
        super().__init__(message)
        self.document = document


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}")

    def exit(self, status: int = 0, message: str | None = None):  # type: ignore[override]
        if status:
            raise UsageError(message or "")
        if message:
            sys.stderr.write(message)
        raise SystemExit(0)


def _num(c) -> str:
    return str(Fraction(c)) if isinstance(c, Fraction) else str(c)


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def load_rule(text: str) -> FRule:
    """A rule file path or an inline shorthand."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return parse_rule(fh.read())
    return parse_shorthand(text)


def _json(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- subcommands


def cmd_seq(args) -> str:
    rule = load_rule(args.rule)
    seq = FSequence(rule)
    terms = seq.terms(args.start + args.count)[args.start :]
    idx = range(args.start, args.start + args.count)
    if args.format == "json":
        return _json({"rule": rule.shorthand(), "start": args.start, "terms": [str(t) for t in terms]})
    if args.format == "csv":
        return _csv(["index", "value"], list(zip(idx, terms)))
    return "".join(f"{t}\n" for t in terms)


def cmd_decomp(args) -> str:
    rule = load_rule(args.rule)
    seq = FSequence(rule)
    d = fd.decompose(seq, args.x)
    summands = d.summands(seq)
    if args.format == "json":
        return _json({"x": str(args.x), "indices": list(d.indices), "summands": [str(s) for s in summands]})
    if args.format == "csv":
        return _csv(["index", "summand"], list(zip(d.indices, summands)))
    return f"{args.x} = " + (" + ".join(map(str, summands)) or "0") + "\n"


def cmd_check_unique(args) -> str:
    seq = FSequence(load_rule(args.rule))
    try:
        report = fd.check_unique(seq, args.x_max, args.index_cap)
    except fd.OracleBudgetExceeded as exc:
        report = exc.report  # type: ignore[attr-defined]
    doc = {
        "rule": report.rule,
        "x_max": report.x_max,
        "index_cap": report.index_cap,
        "checked": report.checked,
        "ok": report.ok,
        "counterexample": report.counterexample,
        "error": report.error,
    }
    if args.format == "json":
        out = _json(doc)
    else:
        status = "ok" if report.ok else "FAILED"
        out = f"{status}: {report.checked} of {report.x_max + 1} values have a unique decomposition\n"
        if report.counterexample:
            out += f"counterexample: {json.dumps(report.counterexample)}\n"
        if report.error:
            out += f"error: {report.error}\n"
    if not report.ok:
        raise VerificationFailure(report.error or f"uniqueness fails at x={report.counterexample['x']}", out)
    return out


def _render_recurrence(rec: recsynth.LinearRecurrence) -> str:
    parts = []
    for i, c in enumerate(rec.coefficients, 1):
        if c == 0:
            continue
        mag = abs(c)
        term = f"a(n-{i})" if mag == 1 else f"{_num(mag)}*a(n-{i})"
        parts.append(("-" if c < 0 else "+", term))
    if not parts:
        body = "0"
    else:
        body = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        body += "".join(f" {s} {t}" for s, t in parts[1:])
    return f"a(n) = {body} for n >= {rec.valid_from}"


def cmd_recurrence(args) -> str:
    rule = load_rule(args.rule)
    seq = FSequence(rule)
    rec = recsynth.synthesize_recurrence(rule, horizon=args.verify_horizon)
    if args.minimize:
        rec = recsynth.minimize(seq, rec)
    horizon = max(args.verify_horizon, rec.order)
    if not recsynth.verify_recurrence(seq, rec, horizon):
        raise VerificationFailure(f"recurrence fails verification within {horizon} terms")
    D = args.nonneg_max_degree
    nonneg: bool | str
    if rec.order == 0 or rec.order > D:
        nonneg = f"unknown_beyond_{D}"
    else:
        res = recsynth.nonnegative_multiple_search(rec.charpoly(), D)
        nonneg = True if res.feasible else f"unknown_beyond_{D}"
    if args.format == "json":
        return _json(
            {
                "rule": rule.shorthand(),
                "order": rec.order,
                "coefficients": [_num(c) for c in rec.coefficients],
                "valid_from": rec.valid_from,
                "verified_horizon": horizon,
                "nonneg_feasible": nonneg,
            }
        )
    if args.format == "csv":
        return _csv(["lag", "coefficient"], [(i, _num(c)) for i, c in enumerate(rec.coefficients, 1)])
    return _render_recurrence(rec) + f"\nnonnegative multiple: {str(nonneg).lower()}\n"


def _table_for(system: str, n: int) -> sumstats.CountTable:
    if system == "factorial":
        return sumstats.count_table_factorial(n)
    head, _, arg = system.partition(":")
    if head == "bbin":
        try:
            b = int(arg)
        except ValueError:
            raise UsageError(f"bad system {system!r}") from None
        return sumstats.count_table_bbin(b, n)
    raise UsageError(f"unknown system {system!r}; use bbin:<b> or factorial")


def cmd_stats(args) -> str:
    table = _table_for(args.system, args.n)
    rows: list[dict[str, Any]] = []
    if args.emit == "table":
        for n, row in enumerate(table.rows):
            rows.extend({"n": n, "k": k, "count": str(c)} for k, c in enumerate(row))
    elif args.emit == "moments":
        for n in range(table.n_max + 1):
            m = sumstats.moments(table, n)
            rows.append({"n": n, "mean": str(m.mean), "variance": str(m.variance)})
    else:
        for n in range(1, table.n_max + 1):
            m = sumstats.moments(table, n)
            rep = sumstats.standardized_distribution(table, n)
            rows.append({"n": n, "mean": str(m.mean), "variance": str(m.variance), "ks": rep.ks_statistic})
    if args.format == "json":
        return _json({"system": args.system, "emit": args.emit, "rows": rows})
    header = list(rows[0]) if rows else ["n"]
    if args.format == "csv":
        return _csv(header, [[r[h] if h != "ks" else repr(r[h]) for h in header] for r in rows])
    return "".join(" ".join(str(r[h]) for h in header) + "\n" for r in rows)


def _parse_poly(text: str) -> Poly:
    try:
        coeffs = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad polynomial {text!r}; give coefficients highest degree first") from None
    return Poly.from_descending(coeffs)


def cmd_nonneg(args) -> str:
    if (args.poly is None) == (args.rule is None):
        raise UsageError("nonneg: give exactly one of --poly or --rule")
    if args.poly is not None:
        p = _parse_poly(args.poly)
    else:
        rule = load_rule(args.rule)
        rec = recsynth.minimize(FSequence(rule), recsynth.synthesize_recurrence(rule))
        p = rec.charpoly()
    if p.degree < 1:
        raise UsageError("polynomial must have degree >= 1")
    if args.max_degree < p.degree:
        raise UsageError(f"--max-degree must be at least the degree {p.degree}")
    res = recsynth.nonnegative_multiple_search(p, args.max_degree)
    desc = lambda q: [_num(c) for c in reversed(q.coeffs)]  # noqa: E731
    doc = {
        "charpoly": desc(p),
        "max_degree": args.max_degree,
        "feasible": res.feasible,
        "degree": res.degree,
        "multiplier": desc(res.multiplier) if res.multiplier is not None else None,
        "recurrence": [_num(c) for c in res.recurrence.coefficients] if res.feasible else None,
    }
    if args.format == "json":
        return _json(doc)
    if res.feasible:
        return f"feasible at degree {res.degree}: {res.product}\n"
    return f"no nonnegative-coefficient multiple up to degree {args.max_degree}\n"


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fdecomp", description="f-decompositions, f-sequences and their statistics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, default_format: str, formats: Sequence[str], help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default=default_format)
        p.set_defaults(func=fn)
        return p

    p = add("seq", cmd_seq, "plain", ("plain", "csv", "json"), "list sequence terms")
    p.add_argument("--rule", required=True, help="rule file or shorthand (constant:1, bbin:3, ...)")
    p.add_argument("--count", type=_nat, default=20)
    p.add_argument("--start", type=_nat, default=0)

    p = add("decomp", cmd_decomp, "json", ("json", "csv", "plain"), "decompose one integer")
    p.add_argument("--rule", required=True)
    p.add_argument("--x", type=_nat, required=True)

    p = add("check-unique", cmd_check_unique, "json", ("json", "plain"), "exhaustively confirm uniqueness")
    p.add_argument("--rule", required=True)
    p.add_argument("--x-max", type=_nat, required=True)
    p.add_argument("--index-cap", type=_nat, default=None)

    p = add("recurrence", cmd_recurrence, "json", ("json", "csv", "plain"), "synthesize a linear recurrence")
    p.add_argument("--rule", required=True)
    p.add_argument("--minimize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--verify-horizon", type=_nat, default=300)
    p.add_argument("--nonneg-max-degree", type=_nat, default=30)

    p = add("stats", cmd_stats, "csv", ("csv", "json", "plain"), "summand-count statistics")
    p.add_argument("--system", required=True, help="bbin:<b> or factorial")
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--emit", choices=("table", "moments", "ks"), default="table")

    p = add("nonneg", cmd_nonneg, "json", ("json", "plain"), "search for a nonnegative-coefficient multiple")
    p.add_argument("--poly", help="characteristic polynomial, highest degree first: 1,0,0,-4,0,0,1")
    p.add_argument("--rule")
    p.add_argument("--max-degree", type=_nat, default=30)
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        stderr.write(f"{exc}\n".lstrip("\n") if str(exc) else "usage error\n")
        return 1
    except (RuleError, recsynth.UnsupportedRuleError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except VerificationFailure as exc:
        if exc.document:
            stdout.write(exc.document)
        stderr.write(f"verification failed: {exc}\n")
        return 2
    except (recsynth.SynthesisError, fd.OracleBudgetExceeded) as exc:
        stderr.write(f"verification failed: {exc}\n")
        return 2
    stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
