"""Tiny recursive-descent parser for the condition DSL.

    cond     := or_expr
    or_expr  := and_expr { "OR" and_expr }
    and_expr := clause { "AND" clause }
    clause   := "(" cond ")" | builtin | equation
    equation := linexpr "=" linexpr
    linexpr  := term { ("+"|"-") term }
    term     := [int "*"] var | int
    builtin  := name [ "(" [int {"," int}] ")" ]
    var      := "x" int | "x" | "y" | "z" | "w"

Whitespace-insensitive; AND binds tighter than OR.  Variables are
positional; named aliases x,y,z,w map to x1..x4.  Equations are padded to
the largest variable index used anywhere in the expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .conditions import (
    And,
    Atom,
    BUILTIN_NAMES,
    ConditionExpr,
    ConditionSyntaxError,
    ExplicitFamily,
    LinearForm,
    Or,
    builtin,
)

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*=,]))")
_VAR_ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}
_ZERO_ARG = {"diagonal", "line", "parallel", "empty"}


@dataclass
class _Token:
    kind: str  # int | name | sym
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ConditionSyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group(1):
            out.append(_Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(_Token("name", m.group(2), m.start(2)))
        else:
            out.append(_Token("sym", m.group(3), m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        # raw equations collected as (coeff map, constant), padded at the end
        self.equations: list[dict] = []

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ConditionSyntaxError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ConditionSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        return tok

    # -- expression levels ---------------------------------------------------

    def parse(self) -> ConditionExpr:
        expr = self.or_expr()
        tok = self.peek()
        if tok is not None:
            raise ConditionSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return expr

    def or_expr(self) -> ConditionExpr:
        parts = [self.and_expr()]
        while (tok := self.peek()) and tok.kind == "name" and tok.text.upper() == "OR":
            self.next()
            parts.append(self.and_expr())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def and_expr(self) -> ConditionExpr:
        parts = [self.clause()]
        while (tok := self.peek()) and tok.kind == "name" and tok.text.upper() == "AND":
            self.next()
            parts.append(self.clause())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def clause(self) -> ConditionExpr:
        tok = self.peek()
        if tok is None:
            raise ConditionSyntaxError("unexpected end of input", len(self.text))
        if tok.text == "(":
            self.next()
            inner = self.or_expr()
            self.expect(")")
            return inner
        if tok.kind == "name" and tok.text in BUILTIN_NAMES:
            return self.builtin_clause()
        return self.equation()

    def builtin_clause(self) -> ConditionExpr:
        tok = self.next()
        params: list[int] = []
        nxt = self.peek()
        if nxt is not None and nxt.text == "(":
            self.next()
            while True:
                arg = self.peek()
                if arg is not None and arg.text == ")":
                    break
                num = self.next()
                if num.kind != "int":
                    raise ConditionSyntaxError("builtin parameters must be integers", num.pos)
                params.append(int(num.text))
                sep = self.peek()
                if sep is not None and sep.text == ",":
                    self.next()
            self.expect(")")
        elif tok.text not in _ZERO_ARG:
            raise ConditionSyntaxError(f"builtin {tok.text!r} needs parameters", tok.pos)
        try:
            return builtin(tok.text, params)
        except ValueError as exc:
            raise ConditionSyntaxError(str(exc), tok.pos) from None

    # -- equations -----------------------------------------------------------

    def equation(self) -> ConditionExpr:
        start = self.peek().pos if self.peek() else 0
        lhs_c, lhs_k = self.linexpr()
        self.expect("=")
        rhs_c, rhs_k = self.linexpr()
        coeffs = dict(lhs_c)
        for v, c in rhs_c.items():
            coeffs[v] = coeffs.get(v, 0) - c
        constant = lhs_k - rhs_k
        if not any(coeffs.values()) :
            raise ConditionSyntaxError("equation has no variables", start)
        record = {"coeffs": coeffs, "constant": constant}
        self.equations.append(record)
        # placeholder; padded to the expression-wide arity afterwards
        return _EquationStub(record)  # type: ignore[return-value]

    def linexpr(self) -> tuple[dict[int, int], int]:
        coeffs: dict[int, int] = {}
        const = 0
        sign = 1
        first = True
        while True:
            tok = self.peek()
            if tok is None:
                if first:
                    raise ConditionSyntaxError("empty expression", len(self.text))
                break
            if tok.text in {"+", "-"}:
                self.next()
                sign = 1 if tok.text == "+" else -1
            elif not first:
                break
            c, var = self.term()
            if var is None:
                const += sign * c
            else:
                coeffs[var] = coeffs.get(var, 0) + sign * c
            sign = 1
            first = False
            nxt = self.peek()
            if nxt is None or nxt.text not in {"+", "-"}:
                break
        return coeffs, const

    def term(self) -> tuple[int, Optional[int]]:
        tok = self.next()
        if tok.kind == "int":
            nxt = self.peek()
            if nxt is not None and nxt.text == "*":
                self.next()
                var = self.variable()
                return int(tok.text), var
            return int(tok.text), None
        if tok.kind == "name":
            return 1, self.variable_from(tok)
        raise ConditionSyntaxError(f"expected a term, found {tok.text!r}", tok.pos)

    def variable(self) -> int:
        tok = self.next()
        if tok.kind != "name":
            raise ConditionSyntaxError(f"expected a variable, found {tok.text!r}", tok.pos)
        return self.variable_from(tok)

    def variable_from(self, tok: _Token) -> int:
        name = tok.text
        if name in _VAR_ALIASES:
            return _VAR_ALIASES[name]
        m = re.fullmatch(r"x(\d+)", name)
        if m:
            idx = int(m.group(1))
            if idx < 1:
                raise ConditionSyntaxError("variable indices start at 1", tok.pos)
            return idx
        raise ConditionSyntaxError(f"unknown variable {name!r}", tok.pos)


class _EquationStub:
    """Stands in for an equation atom until the global arity is known."""

    def __init__(self, record: dict):
        self.record = record


def _resolve(expr, arity: int) -> ConditionExpr:
    if isinstance(expr, _EquationStub):
        coeffs = [0] * arity
        for v, c in expr.record["coeffs"].items():
            coeffs[v - 1] = c
        form = LinearForm(tuple(coeffs), expr.record["constant"])
        return Atom(ExplicitFamily((form,)))
    if isinstance(expr, And):
        return And(tuple(_resolve(c, arity) for c in expr.children), label=expr.label)
    if isinstance(expr, Or):
        return Or(tuple(_resolve(c, arity) for c in expr.children), label=expr.label)
    return expr


def parse_condition(text: str) -> ConditionExpr:
    """Parse DSL text into a condition; raises ConditionSyntaxError with a
    position, or ArityMismatch when builtin atoms disagree on arity."""
    parser = _Parser(text)
    raw = parser.parse()
    arity = 0
    for record in parser.equations:
        if record["coeffs"]:
            arity = max(arity, max(record["coeffs"]))
    expr = _resolve(raw, arity)
    expr.arity  # validates mixed arities across atoms
    return expr


def print_condition(cond: ConditionExpr) -> str:
    return cond.to_dsl()
