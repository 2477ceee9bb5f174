"""Canonical text form for expressions: format and parse, exact round-trip.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | INT | '(' expr ')'
            | 'root' '(' expr ',' INT ')'
            | 'pow' '(' expr ',' INT ['/' INT] ')'
            | 'floor' '(' expr ')'

Numbers are exact integers; rationals are spelled p/q.  ``format_expr`` is
deterministic and ``parse_expr(format_expr(e)) == e`` structurally, which
makes the strings usable as canonical keys.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import InvalidInput
from .expr import RealExpr, floor_node, power, rational

_TOKEN = re.compile(r"\s*(\d+|[a-z]+|[()+\-*/,])")


def format_expr(e: RealExpr) -> str:
    return _fmt(e, 0)


# precedence: 0 add/sub, 1 mul/div, 2 atom-like
def _fmt(e: RealExpr, ctx: int) -> str:
    if e.op == "rat":
        v = e.data
        if v.denominator == 1:
            s = str(v.numerator)
        else:
            s = f"{v.numerator}/{v.denominator}"
            if ctx >= 1:
                return f"({s})"
        if v < 0 and ctx >= 1:
            return f"({s})"
        return s
    if e.op in ("add", "sub"):
        op = "+" if e.op == "add" else "-"
        # right operand gets tighter context so a-(b-c) round-trips
        s = f"{_fmt(e.args[0], 0)} {op} {_fmt(e.args[1], 1)}"
        return f"({s})" if ctx >= 1 else s
    if e.op in ("mul", "div"):
        op = "*" if e.op == "mul" else "/"
        s = f"{_fmt(e.args[0], 1)} {op} {_fmt(e.args[1], 2)}"
        return f"({s})" if ctx >= 2 else s
    if e.op == "pow":
        q = e.data
        if q.numerator == 1 and q.denominator > 1:
            return f"root({_fmt(e.args[0], 0)}, {q.denominator})"
        if q.denominator == 1:
            return f"pow({_fmt(e.args[0], 0)}, {q.numerator})"
        return f"pow({_fmt(e.args[0], 0)}, {q.numerator}/{q.denominator})"
    if e.op == "floor":
        return f"floor({_fmt(e.args[0], 0)})"
    raise AssertionError(e.op)


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise InvalidInput(f"bad character in expression: {text[pos:]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InvalidInput(
                f"expected {expected!r}, found {tok!r} in expression"
            )
        self.i += 1
        return tok

    def parse(self) -> RealExpr:
        e = self.expr()
        if self.peek() is not None:
            raise InvalidInput(f"trailing tokens: {self.tokens[self.i:]}")
        return e

    def expr(self) -> RealExpr:
        e = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            e = RealExpr("add" if op == "+" else "sub", (e, rhs))
        return e

    def term(self) -> RealExpr:
        e = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "/" and e.op == "rat" and rhs.op == "rat":
                # "p/q" denotes the exact rational, not a quotient node
                if rhs.data == 0:
                    raise InvalidInput("division by zero literal")
                e = rational(e.data / rhs.data)
            else:
                e = RealExpr("mul" if op == "*" else "div", (e, rhs))
        return e

    def factor(self) -> RealExpr:
        tok = self.peek()
        if tok == "-":
            self.take()
            inner = self.factor()
            if inner.op == "rat":
                return rational(-inner.data)
            return RealExpr("sub", (rational(0), inner))
        if tok == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if tok == "root":
            self.take()
            self.take("(")
            base = self.expr()
            self.take(",")
            k = int(self.take())
            self.take(")")
            if k < 1:
                raise InvalidInput("root index must be >= 1")
            return power(base, Fraction(1, k))
        if tok == "pow":
            self.take()
            self.take("(")
            base = self.expr()
            self.take(",")
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            p = int(self.take())
            q = 1
            if self.peek() == "/":
                self.take()
                q = int(self.take())
            self.take(")")
            if q < 1:
                raise InvalidInput("power denominator must be >= 1")
            exp = Fraction(-p if neg else p, q)
            return power(base, exp)
        if tok == "floor":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return floor_node(inner)
        if tok is not None and tok.isdigit():
            self.take()
            return rational(int(tok))
        raise InvalidInput(f"unexpected token {tok!r} in expression")


def parse_expr(text: str) -> RealExpr:
    """Parse the canonical grammar back into an expression tree."""
    return _Parser(text).parse()
