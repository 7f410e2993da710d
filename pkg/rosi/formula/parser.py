"""
Concrete syntax for STL formulas (LALR grammar via lark).

Comparisons are normalized to `f(x) > 0` predicates, `implies` desugars to
`not a or b`, and `abs(v)` terms desugar into a disjunction or conjunction of
two linear predicates.
"""

from __future__ import annotations

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from rosi.formula.ast import Always, And, Eventually, Formula, Not, Or, Predicate, Until
from rosi.interval import Interval

GRAMMAR = r"""
    ?start: formula

    ?formula: disj
            | disj "implies" formula          -> implies

    ?disj: conj
         | disj "or" conj                     -> or_

    ?conj: until_expr
         | conj "and" until_expr              -> and_

    ?until_expr: unary
               | unary ("U" | "until") [window] unary   -> until

    ?unary: "not" unary                       -> not_
          | ("G" | "alw") [window] unary      -> always
          | ("F" | "ev") [window] unary       -> eventually
          | atom
          | "(" formula ")"

    window: "[" NUMBER "," NUMBER "]"

    atom: linexpr COMPARATOR signed_number

    linexpr: [MINUS] term ((PLUS | MINUS) term)*

    term: NUMBER "*"? NAME                     -> scaled
        | NAME                                 -> plain
        | NUMBER "*"? "abs" "(" NAME ")"       -> scaled_abs
        | "abs" "(" NAME ")"                   -> plain_abs

    signed_number: [MINUS] NUMBER

    COMPARATOR: ">=" | "<=" | ">" | "<"
    PLUS: "+"
    MINUS: "-"

    %import common.NUMBER
    %import common.CNAME -> NAME
    %import common.WS
    %ignore WS
"""

_parser = Lark(GRAMMAR, parser="lalr", maybe_placeholders=True)


class FormulaSyntaxError(ValueError):
    """Raised for text outside the grammar; `line`/`column` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


def parse(text: str) -> Formula:
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as exc:
        raise FormulaSyntaxError("Unexpected input", exc.line, exc.column) from exc
    try:
        return _ToAst().transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from exc


# ---- Tree -> AST ---------------------------------------------------------------------


class _Term:
    __slots__ = ("name", "coefficient", "absolute")

    def __init__(self, name: str, coefficient: float, absolute: bool = False):
        self.name = name
        self.coefficient = coefficient
        self.absolute = absolute


@v_args(inline=True)
class _ToAst(Transformer):
    def implies(self, left, right):
        return Or(Not(left), right)

    def or_(self, left, right):
        return Or(left, right)

    def and_(self, left, right):
        return And(left, right)

    def not_(self, child):
        return Not(child)

    def always(self, window, child):
        return Always(child, window)

    def eventually(self, window, child):
        return Eventually(child, window)

    def until(self, left, window, right):
        return Until(left, right, window)

    def window(self, lo: Token, hi: Token) -> Interval:
        lo_value, hi_value = float(lo), float(hi)
        if lo_value > hi_value:
            raise FormulaSyntaxError(
                f"Malformed window [{lo}, {hi}]: lower bound exceeds upper bound", lo.line, lo.column
            )
        return Interval(lo_value, hi_value)

    def scaled(self, number, name):
        return _Term(str(name), float(number))

    def plain(self, name):
        return _Term(str(name), 1.0)

    def scaled_abs(self, number, name):
        return _Term(str(name), float(number), absolute=True)

    def plain_abs(self, name):
        return _Term(str(name), 1.0, absolute=True)

    def signed_number(self, minus, number):
        value = float(number)
        return -value if minus is not None else value

    def linexpr(self, leading_minus, *items):
        terms: list[_Term] = []
        sign = -1.0 if leading_minus is not None else 1.0
        for item in items:
            if isinstance(item, Token):
                sign = -1.0 if item.type == "MINUS" else 1.0
                continue
            terms.append(_Term(item.name, sign * item.coefficient, item.absolute))
        return terms

    def atom(self, terms: list[_Term], comparator: Token, bound: float) -> Formula:
        absolute = [t for t in terms if t.absolute]
        if len(absolute) > 1:
            raise FormulaSyntaxError(
                "At most one abs() term is allowed per comparison", comparator.line, comparator.column
            )
        greater = comparator.value.startswith(">")
        if not absolute:
            return _normalized(_collect(terms, None, 1.0), bound, greater)

        k = absolute[0].coefficient
        plus = _normalized(_collect(terms, absolute[0], 1.0), bound, greater)
        minus = _normalized(_collect(terms, absolute[0], -1.0), bound, greater)
        # k*|v| is max(k*v, -k*v) for k >= 0 and min(...) otherwise
        as_max = k >= 0
        if greater == as_max:
            return Or(plus, minus)
        return And(plus, minus)


def _collect(terms: list[_Term], absolute: _Term | None, orientation: float) -> dict[str, float]:
    coefficients: dict[str, float] = {}
    for term in terms:
        coefficient = term.coefficient * orientation if term is absolute else term.coefficient
        coefficients[term.name] = coefficients.get(term.name, 0.0) + coefficient
    return coefficients


def _normalized(coefficients: dict[str, float], bound: float, greater: bool) -> Predicate:
    if greater:
        return Predicate(tuple(coefficients.items()), -bound)
    return Predicate(tuple((name, -c) for name, c in coefficients.items()), bound)
