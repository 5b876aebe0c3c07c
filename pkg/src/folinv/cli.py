"""The ``folinv`` command line: parse polynomials, dispatch to the invariants.

Grammar of polynomial expressions: variables ``x`` and ``y``; integer and
rational literals (``3``, ``2/5``); operators ``+ - * ^`` with explicit ``*``
(no implicit multiplication) and ``^`` restricted to nonnegative integer
exponents up to 10^6; parentheses; insignificant whitespace.  Syntax errors
carry the byte offset and the set of expected tokens.

Exit codes: 0 for success (including boolean results of ``true``), 1 for a
``false``/failed check or any failed scenario, 2 for input errors (bad
arguments, unparsable polynomials, violated preconditions).

Output: ``--format table`` (default) prints bare values, with infinite
colengths as the token ``infinite``; ``--format json`` emits one object with
keys {command, inputs, k, result, finite, seed, elapsed_ms}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import scenarios as scenarios_mod
from .invariants import (
    CurveGerm,
    Foliation,
    PreconditionError,
    check_conjecture1,
    foliation_milnor_k,
    foliation_tjurina_k,
    gsv_index,
    gsv_theorem_check,
    intersection_number,
    is_invariant,
    is_quasihomogeneous_foliation,
    milnor_bound_check,
    milnor_k,
    polar_gsv_check,
    polar_intersection_k,
    quasihomogeneous_identity_check,
    ratio_check,
    second_type_milnor_check,
    teissier_k_check,
    tjurina_k,
)
from .ring import Poly, X, Y
from .stdbasis import INFINITE, Ideal, colength, is_finite, maximal_ideal_power


# -- polynomial expression parser ---------------------------------------------


class ParseError(ValueError):
    """Syntax error in a polynomial expression, with byte offset and expectations."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        text = f"syntax error at byte offset {offset}: {message}"
        if self.expected:
            text += "; expected " + " or ".join(self.expected)
        super().__init__(text)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    offset: int


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _tokenize(text: str) -> list:
    tokens = []
    single = {
        "+": "PLUS",
        "-": "MINUS",
        "*": "STAR",
        "^": "CARET",
        "(": "LPAREN",
        ")": "RPAREN",
    }
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        off = _byte_offset(text, i)
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            den = 1
            if j < n and text[j] == "/":
                if j + 1 < n and text[j + 1].isdigit():
                    k = j + 1
                    while k < n and text[k].isdigit():
                        k += 1
                    den = int(text[j + 1 : k])
                    if den == 0:
                        raise ParseError(
                            "denominator is zero", _byte_offset(text, j + 1)
                        )
                    j = k
                else:
                    raise ParseError(
                        "'/' must be followed by digits",
                        _byte_offset(text, j),
                        {"digit"},
                    )
            tokens.append(_Token("NUM", Fraction(num, den), off))
            i = j
            continue
        if c in ("x", "y"):
            tokens.append(_Token("VAR", c, off))
            i += 1
            continue
        if c in single:
            tokens.append(_Token(single[c], c, off))
            i += 1
            continue
        raise ParseError(
            f"unexpected character {c!r}",
            off,
            {"number", "'x'", "'y'", "'+'", "'-'", "'*'", "'^'", "'('", "')'"},
        )
    tokens.append(_Token("END", None, _byte_offset(text, n)))
    return tokens


_EXPONENT_CAP = 10**6
_ATOM_EXPECTED = {"number", "'x'", "'y'", "'('", "'-'"}


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        node = self._expr()
        tok = self._peek()
        if tok.kind != "END":
            raise ParseError(
                f"unexpected {tok.value!r}",
                tok.offset,
                {"'+'", "'-'", "'*'", "'^'", "end of input"},
            )
        return node

    def _expr(self) -> Poly:
        node = self._term()
        while self._peek().kind in ("PLUS", "MINUS"):
            op = self._advance()
            rhs = self._term()
            node = node + rhs if op.kind == "PLUS" else node - rhs
        return node

    def _term(self) -> Poly:
        node = self._unary()
        while self._peek().kind == "STAR":
            self._advance()
            node = node * self._unary()
        return node

    def _unary(self) -> Poly:
        if self._peek().kind == "MINUS":
            self._advance()
            return -self._unary()
        return self._power()

    def _power(self) -> Poly:
        node = self._atom()
        if self._peek().kind == "CARET":
            self._advance()
            tok = self._peek()
            if tok.kind != "NUM" or tok.value.denominator != 1:
                raise ParseError(
                    "exponent must be a nonnegative integer",
                    tok.offset,
                    {"integer exponent"},
                )
            exponent = int(tok.value)
            if exponent > _EXPONENT_CAP:
                raise ParseError(
                    f"exponent exceeds {_EXPONENT_CAP}",
                    tok.offset,
                    {"integer exponent <= 10^6"},
                )
            self._advance()
            return node**exponent
        return node

    def _atom(self) -> Poly:
        tok = self._peek()
        if tok.kind == "NUM":
            self._advance()
            return Poly.constant(tok.value)
        if tok.kind == "VAR":
            self._advance()
            return X if tok.value == "x" else Y
        if tok.kind == "LPAREN":
            self._advance()
            node = self._expr()
            closing = self._peek()
            if closing.kind != "RPAREN":
                raise ParseError(
                    "unclosed parenthesis", closing.offset, {"')'"}
                )
            self._advance()
            return node
        raise ParseError(
            "end of input" if tok.kind == "END" else f"unexpected {tok.value!r}",
            tok.offset,
            _ATOM_EXPECTED,
        )


def parse_poly(text: str) -> Poly:
    """Parse a polynomial expression to a normalized Poly (exact arithmetic)."""
    return _Parser(_tokenize(text)).parse()


# -- value encoding -----------------------------------------------------------


def canonical(value) -> str:
    """Canonical text form: booleans true/false, infinite, tuples comma-joined."""
    if value is INFINITE:
        return "infinite"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, (tuple, list)):
        return ",".join(canonical(v) for v in value)
    return str(value)


def _json_value(value):
    if value is INFINITE:
        return None
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    return str(value)


def _all_finite(value) -> bool:
    if value is INFINITE:
        return False
    if isinstance(value, (tuple, list)):
        return all(_all_finite(v) for v in value)
    return True


@dataclass
class Outcome:
    """Result of one evaluated command, ready for formatting and exit-code logic."""

    command: str
    inputs: dict
    k: "int | None"
    result: object
    seed: "int | None" = None
    reports: "tuple | None" = None
    summary: "dict | None" = None
    warnings: tuple = field(default_factory=tuple)
    fmt: str = "table"

    @property
    def finite(self) -> bool:
        return _all_finite(self.result)

    @property
    def exit_code(self) -> int:
        if self.summary is not None:
            return 0 if self.summary["failed"] == 0 else 1
        r = self.result
        if isinstance(r, bool):
            return 0 if r else 1
        if isinstance(r, tuple) and r and isinstance(r[-1], bool):
            return 0 if r[-1] else 1
        return 0


# -- command line definition ----------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


CHECK_NAMES = (
    "gsv-theorem",
    "teissier-k",
    "polar-gsv",
    "bound",
    "qh-identity",
    "second-type",
    "conjecture1",
    "ratio",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="folinv",
        description=(
            "Exact invariants of plane-curve and foliation germs at the origin: "
            "k-th Milnor and Tjurina numbers, intersection numbers, GSV index, "
            "polar intersection numbers, and identity checks."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, k=True, fmt=True):
        if k:
            p.add_argument("--k", type=_nonneg, default=0, help="order k (default 0)")
        if fmt:
            p.add_argument(
                "--format", choices=("table", "json"), default="table",
                help="output format",
            )

    p = sub.add_parser("vdim", help="colength of <GENS>*m^MK + <PLUS...>")
    p.add_argument("gens", nargs="*", help="ideal generators (default: none, i.e. the unit ideal)")
    p.add_argument("--mk", type=_nonneg, default=0, help="power of the maximal ideal factor")
    p.add_argument("--plus", action="append", default=[], help="extra generator added to the product (repeatable)")
    common(p, k=False)

    p = sub.add_parser("intersect", help="intersection number i(f,g)")
    p.add_argument("f")
    p.add_argument("g")
    common(p, k=False)

    p = sub.add_parser("milnor", help="k-th Milnor number of a curve germ")
    p.add_argument("f")
    common(p)

    p = sub.add_parser("tjurina", help="k-th Tjurina number of a curve germ")
    p.add_argument("f")
    common(p)

    p = sub.add_parser("fol-milnor", help="k-th Milnor number of the foliation P dx + Q dy")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    common(p)

    p = sub.add_parser("fol-tjurina", help="k-th Tjurina number of a foliation along an invariant curve")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--f", required=True)
    common(p)

    p = sub.add_parser("gsv", help="GSV index of a foliation along an invariant reduced curve")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--f", required=True)
    common(p, k=False)

    p = sub.add_parser("polar", help="k-th polar intersection number at a generic direction")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--samples", type=_nonneg, default=3)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("invariant", help="is the curve invariant by the foliation?")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--f", required=True)
    common(p, k=False)

    p = sub.add_parser("qh-check", help="membership f in (P,Q): quasi-homogeneity of the foliation")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--f", required=True)
    common(p, k=False)

    p = sub.add_parser("check", help="verify a named identity")
    p.add_argument("name", choices=CHECK_NAMES)
    p.add_argument("--P")
    p.add_argument("--Q")
    p.add_argument("--f")
    p.add_argument("--k-max", type=_nonneg, default=None, dest="k_max")
    p.add_argument("--samples", type=_nonneg, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--assert-second-type", action="store_true",
        help="assert the foliation is of second type (required by some checks)",
    )
    p.add_argument(
        "--assert-generalized-curve", action="store_true",
        help="assert the foliation is a generalized curve (required by qh-identity)",
    )
    common(p)

    p = sub.add_parser("scenarios", help="run or list the bundled reproduction scenarios")
    p.add_argument("action", choices=("run", "list"))
    p.add_argument("--all", action="store_true", help="run every scenario")
    p.add_argument("--filter", default=None, help="substring filter on id and location")
    p.add_argument("--registry", default=None, help="path to a scenario registry file")
    common(p, k=False)

    return parser


def _need(args, names):
    for name in names:
        if getattr(args, name, None) is None:
            raise PreconditionError(f"--{name} is required for this command")


def _foliation(args) -> Foliation:
    return Foliation(parse_poly(args.P), parse_poly(args.Q))


def _curve(args) -> CurveGerm:
    return CurveGerm(parse_poly(args.f))


def _seed(args) -> int:
    env = os.environ.get("FOLINV_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise PreconditionError(
                f"FOLINV_SEED must be an integer, got {env!r}"
            ) from None
    return args.seed


def evaluate(argv, allow_scenarios: bool = True) -> Outcome:
    """Parse argv and run the command, returning the raw outcome.

    Raises ParseError / PreconditionError for invalid inputs, and SystemExit(2)
    for malformed argument lists (argparse's native behavior).
    """
    args = build_parser().parse_args(argv)
    verb = args.verb

    if verb == "scenarios":
        if not allow_scenarios:
            raise PreconditionError(
                "scenario expressions may not invoke the scenarios verb"
            )
        outcome = _evaluate_scenarios(args)
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            outcome = _evaluate_computation(args, verb)
        outcome.warnings = tuple(str(w.message) for w in caught)
    outcome.fmt = getattr(args, "format", "table")
    return outcome


def _evaluate_computation(args, verb: str) -> Outcome:
    if verb == "vdim":
        gens = [parse_poly(g) for g in args.gens]
        plus = [parse_poly(g) for g in args.plus]
        base = Ideal(tuple(gens)) if gens else Ideal.of(Poly.one())
        ideal = base * maximal_ideal_power(args.mk) + Ideal(tuple(plus))
        if ideal.is_zero:
            result = INFINITE
        else:
            result = colength(ideal)
        inputs = {"gens": args.gens, "plus": args.plus, "mk": args.mk}
        return Outcome("vdim", inputs, args.mk, result)

    if verb == "intersect":
        result = intersection_number(parse_poly(args.f), parse_poly(args.g))
        return Outcome("intersect", {"f": args.f, "g": args.g}, None, result)

    if verb == "milnor":
        return Outcome(
            "milnor", {"f": args.f}, args.k, milnor_k(parse_poly(args.f), args.k)
        )

    if verb == "tjurina":
        return Outcome(
            "tjurina", {"f": args.f}, args.k, tjurina_k(parse_poly(args.f), args.k)
        )

    if verb == "fol-milnor":
        result = foliation_milnor_k(_foliation(args), args.k)
        return Outcome("fol-milnor", {"P": args.P, "Q": args.Q}, args.k, result)

    if verb == "fol-tjurina":
        result = foliation_tjurina_k(_foliation(args), _curve(args), args.k)
        inputs = {"P": args.P, "Q": args.Q, "f": args.f}
        return Outcome("fol-tjurina", inputs, args.k, result)

    if verb == "gsv":
        result = gsv_index(_foliation(args), _curve(args))
        return Outcome("gsv", {"P": args.P, "Q": args.Q, "f": args.f}, None, result)

    if verb == "polar":
        seed = _seed(args)
        result = polar_intersection_k(
            _foliation(args), _curve(args), args.k, samples=args.samples, seed=seed
        )
        inputs = {"P": args.P, "Q": args.Q, "f": args.f, "samples": args.samples}
        return Outcome("polar", inputs, args.k, result, seed=seed)

    if verb == "invariant":
        result = is_invariant(_foliation(args), _curve(args))
        inputs = {"P": args.P, "Q": args.Q, "f": args.f}
        return Outcome("invariant", inputs, None, result)

    if verb == "qh-check":
        result = is_quasihomogeneous_foliation(_foliation(args), _curve(args))
        inputs = {"P": args.P, "Q": args.Q, "f": args.f}
        return Outcome("qh-check", inputs, None, result)

    if verb == "check":
        return _evaluate_check(args)

    raise PreconditionError(f"unknown verb {verb!r}")


def _evaluate_check(args) -> Outcome:
    name = args.name
    k_max = args.k_max if args.k_max is not None else args.k
    seed = _seed(args)
    command = f"check {name}"

    def out(result, inputs, k):
        return Outcome(command, inputs, k, result, seed=seed)

    if name == "gsv-theorem":
        _need(args, ("P", "Q", "f"))
        result = gsv_theorem_check(_foliation(args), _curve(args), k_max)
        return out(result, {"P": args.P, "Q": args.Q, "f": args.f}, k_max)

    if name == "teissier-k":
        _need(args, ("f",))
        f = parse_poly(args.f)
        result = all(
            teissier_k_check(f, k, samples=args.samples, seed=seed)
            for k in range(k_max + 1)
        )
        return out(result, {"f": args.f}, k_max)

    if name == "polar-gsv":
        _need(args, ("P", "Q", "f"))
        if not args.assert_second_type:
            raise PreconditionError(
                "check polar-gsv requires --assert-second-type "
                "(non-dicritical second-type hypothesis is not decidable here)"
            )
        result = polar_gsv_check(
            _foliation(args), _curve(args), k_max, samples=args.samples, seed=seed
        )
        return out(result, {"P": args.P, "Q": args.Q, "f": args.f}, k_max)

    if name == "bound":
        _need(args, ("P", "Q", "f"))
        if not args.assert_second_type:
            raise PreconditionError(
                "check bound requires --assert-second-type "
                "(the balanced-divisor hypothesis is not decidable here)"
            )
        F, B0 = _foliation(args), _curve(args)
        result = all(
            milnor_bound_check(F, B0, k)[3] for k in range(k_max + 1)
        )
        return out(result, {"P": args.P, "Q": args.Q, "f": args.f}, k_max)

    if name == "qh-identity":
        _need(args, ("P", "Q", "f"))
        if not args.assert_generalized_curve:
            raise PreconditionError(
                "check qh-identity requires --assert-generalized-curve "
                "(the generalized-curve hypothesis is not decidable here)"
            )
        F, C = _foliation(args), _curve(args)
        top = max(1, k_max)
        result = all(
            quasihomogeneous_identity_check(F, C, k)[2] for k in range(1, top + 1)
        )
        return out(result, {"P": args.P, "Q": args.Q, "f": args.f}, top)

    if name == "second-type":
        _need(args, ("P", "Q", "f"))
        if not args.assert_second_type:
            raise PreconditionError(
                "check second-type requires --assert-second-type "
                "(second-type hypothesis is not decidable here)"
            )
        result = second_type_milnor_check(_foliation(args), _curve(args), k_max)
        return out(result, {"P": args.P, "Q": args.Q, "f": args.f}, k_max)

    if name == "conjecture1":
        _need(args, ("f",))
        result = check_conjecture1(parse_poly(args.f), args.k)
        return out(result, {"f": args.f}, args.k)

    if name == "ratio":
        _need(args, ("f",))
        result = ratio_check(parse_poly(args.f), args.k)
        return out(result, {"f": args.f}, args.k)

    raise PreconditionError(f"unknown check {name!r}")


def _evaluate_scenarios(args) -> Outcome:
    registry = scenarios_mod.load_registry(args.registry)
    if args.action == "list":
        reports = tuple(
            (sc.id, sc.paper_location, sc.description) for sc in registry
        )
        return Outcome(
            "scenarios list", {"registry": args.registry}, None, len(reports),
            reports=reports,
            summary={"total": len(reports), "passed": len(reports), "failed": 0},
        )
    if not args.all and args.filter is None:
        raise PreconditionError("scenarios run needs --all or --filter")
    reports, summary = scenarios_mod.run_all(
        filter=args.filter, registry=registry
    )
    return Outcome(
        "scenarios run",
        {"registry": args.registry, "filter": args.filter},
        None,
        summary["failed"] == 0,
        reports=reports,
        summary=summary,
    )


# -- output -------------------------------------------------------------------


def _render(outcome: Outcome, fmt: str, elapsed_ms: int) -> str:
    if outcome.command == "scenarios list":
        if fmt == "json":
            lines = [
                json.dumps({"id": i, "location": loc, "description": d})
                for i, loc, d in outcome.reports
            ]
            return "\n".join(lines)
        return "\n".join(
            f"{i}  [{loc}]  {d}" for i, loc, d in outcome.reports
        )

    if outcome.command == "scenarios run":
        lines = []
        if fmt == "json":
            for r in outcome.reports:
                lines.append(
                    json.dumps(
                        {
                            "id": r.scenario_id,
                            "computed": r.computed,
                            "expected": r.expected,
                            "pass": r.passed,
                            "elapsed_ms": r.elapsed_ms,
                        }
                    )
                )
            lines.append(json.dumps(outcome.summary))
        else:
            for r in outcome.reports:
                status = "PASS" if r.passed else "FAIL"
                detail = r.computed if r.passed else f"{r.computed} != {r.expected}"
                lines.append(f"{status} {r.scenario_id}: {detail}")
            s = outcome.summary
            lines.append(
                f"{s['passed']}/{s['total']} scenarios passed, {s['failed']} failed"
            )
        return "\n".join(lines)

    if fmt == "json":
        return json.dumps(
            {
                "command": outcome.command,
                "inputs": outcome.inputs,
                "k": outcome.k,
                "result": _json_value(outcome.result),
                "finite": outcome.finite,
                "seed": outcome.seed,
                "elapsed_ms": elapsed_ms,
            }
        )
    return canonical(outcome.result)


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    start = time.perf_counter()
    try:
        outcome = evaluate(argv)
    except (ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    for message in outcome.warnings:
        print(f"warning: {message}", file=sys.stderr)
    try:
        print(_render(outcome, outcome.fmt, elapsed_ms))
        sys.stdout.flush()
    except BrokenPipeError:
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
